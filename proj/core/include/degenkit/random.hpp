// Seeded generators for randomized suites, fixtures and benchmarks.
#pragma once

#include "degenkit/curves.hpp"
#include "degenkit/degeneration.hpp"
#include "degenkit/monodromy.hpp"

#include <random>

namespace degenkit {

using Rng = std::mt19937_64;

struct RandomLimits {
  std::size_t max_rank = 4;
  std::size_t max_branches = 3;
  long max_entry = 9;
};

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);

/// Symmetric positive definite, diagonal in [1, max_entry], off-diagonal
/// entries bounded by max_entry / 2.
IntMatrix random_spd(Rng& rng, std::size_t n, long max_entry = 9);

/// Unimodular n x n matrix with entries bounded by `bound` (rejection
/// sampled products of elementary matrices).
IntMatrix random_unimodular(Rng& rng, std::size_t n, long bound = 9);

/// Principally polarized and toric additive: the purity map is unimodular.
DegenDatum random_ta_datum(Rng& rng, const RandomLimits& limits = {});

/// Principally polarized, valid, toric additive or not. Specializations are
/// random surjections, so the purity cokernel is often finite of small order.
DegenDatum random_datum(Rng& rng, const RandomLimits& limits = {});

TraitProfile random_transversal_profile(Rng& rng, std::size_t n);

/// Positive multipliers in [1, bound] prime to p when p > 0.
std::vector<Integer> random_kummer(Rng& rng, std::size_t n, Prime p, long bound = 12);

/// Connected multigraph (loops allowed) with at most `max_edges` edges and
/// labels over at most `max_branches` branches.
DualGraph random_graph(Rng& rng, std::size_t max_edges = 8, std::size_t max_branches = 3);

}  // namespace degenkit
