#include "degenkit/random.hpp"

#include "degenkit/lattice.hpp"
#include "degenkit/normal_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace degenkit {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

bool bounded(const IntMatrix& m, long bound) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (abs(m(i, j)) > bound) return false;
  return true;
}

Prime random_residue_char(Rng& rng) { return uniform(rng, 0, 3) == 0 ? 7 : 0; }

// Splits `total` into `parts` positive pieces.
std::vector<std::size_t> composition(Rng& rng, std::size_t total, std::size_t parts) {
  std::vector<std::size_t> out(parts, 1);
  for (std::size_t k = parts; k < total; ++k) ++out[static_cast<std::size_t>(uniform(rng, 0, long(parts) - 1))];
  return out;
}

Branch make_branch(Rng& rng, std::size_t i, LatticeMap sp, long max_entry) {
  Branch b;
  b.name = "D" + std::to_string(i + 1);
  b.rank = sp.rows();
  b.specialization = std::move(sp);
  b.pairing = random_spd(rng, b.rank, max_entry);
  return b;
}

}  // namespace

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

IntMatrix random_spd(Rng& rng, std::size_t n, long max_entry) {
  for (;;) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = uniform(rng, 1, max_entry);
      for (std::size_t j = 0; j < i; ++j) {
        const long v = uniform(rng, -max_entry / 2, max_entry / 2);
        m(i, j) = v;
        m(j, i) = v;
      }
    }
    if (is_positive_definite(m)) return m;
  }
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, long bound) {
  for (;;) {
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      if (uniform(rng, 0, 1) == 1) m.negate_row(i);
    const long steps = n < 2 ? 0 : uniform(rng, 1, 3 * long(n));
    for (long s = 0; s < steps; ++s) {
      const auto a = static_cast<std::size_t>(uniform(rng, 0, long(n) - 1));
      auto b = static_cast<std::size_t>(uniform(rng, 0, long(n) - 2));
      if (b >= a) ++b;
      m.add_row_multiple(a, b, Integer(uniform(rng, -2, 2)));
    }
    if (n >= 2 && uniform(rng, 0, 1) == 1) m.swap_cols(0, n - 1);
    if (bounded(m, bound)) return m;
  }
}

DegenDatum random_ta_datum(Rng& rng, const RandomLimits& lim) {
  DegenDatum d;
  d.name = "random TA";
  d.residue_char = random_residue_char(rng);
  d.abelian_rank = static_cast<std::size_t>(uniform(rng, 0, 2));
  const auto n = static_cast<std::size_t>(uniform(rng, 1, long(lim.max_branches)));
  const auto mu = static_cast<std::size_t>(uniform(rng, long(n), long(std::max(n, lim.max_rank))));
  d.closed_rank = mu;
  const IntMatrix p = random_unimodular(rng, mu, lim.max_entry);
  std::size_t row = 0;
  const auto ranks = composition(rng, mu, n);
  for (std::size_t i = 0; i < n; ++i) {
    d.branches.push_back(make_branch(rng, i, p.select_rows(row, row + ranks[i]), lim.max_entry));
    row += ranks[i];
  }
  return d;
}

DegenDatum random_datum(Rng& rng, const RandomLimits& lim) {
  if (uniform(rng, 0, 3) == 0) return random_ta_datum(rng, lim);
  for (;;) {
    DegenDatum d;
    d.name = "random";
    d.residue_char = random_residue_char(rng);
    d.abelian_rank = static_cast<std::size_t>(uniform(rng, 0, 2));
    const auto mu = static_cast<std::size_t>(uniform(rng, 1, long(lim.max_rank)));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, long(lim.max_branches)));
    d.closed_rank = mu;
    const long bound = uniform(rng, 0, 1) == 0 ? 3 : lim.max_entry;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ri = static_cast<std::size_t>(uniform(rng, 1, long(mu)));
      IntMatrix sp;
      do {
        sp = random_matrix(rng, ri, mu, bound);
      } while (!is_surjective(sp));
      d.branches.push_back(make_branch(rng, i, std::move(sp), lim.max_entry));
    }
    if (is_injective(purity_matrix(d))) return d;
  }
}

TraitProfile random_transversal_profile(Rng& rng, std::size_t n) {
  TraitProfile t;
  for (std::size_t i = 0; i < n; ++i) t.multiplicities.emplace_back(uniform(rng, 0, 1));
  return t;
}

std::vector<Integer> random_kummer(Rng& rng, std::size_t n, Prime p, long bound) {
  std::vector<Integer> m;
  while (m.size() < n) {
    const long v = uniform(rng, 1, bound);
    if (p != 0 && v % static_cast<long>(p) == 0) continue;
    m.emplace_back(v);
  }
  return m;
}

DualGraph random_graph(Rng& rng, std::size_t max_edges, std::size_t max_branches) {
  DualGraph g;
  g.name = "random graph";
  g.branch_count = static_cast<std::size_t>(uniform(rng, 1, long(max_branches)));
  const auto nv = static_cast<std::size_t>(uniform(rng, 1, long(std::min<std::size_t>(max_edges, 5))));
  for (std::size_t v = 0; v < nv; ++v) g.genera.push_back(static_cast<std::size_t>(uniform(rng, 0, 1)));

  auto label = [&] {
    std::map<std::size_t, Integer> lab;
    while (lab.empty())
      for (std::size_t b = 0; b < g.branch_count; ++b)
        if (uniform(rng, 0, 2) == 0) lab[b] = uniform(rng, 1, 3);
    return lab;
  };
  for (std::size_t v = 1; v < nv; ++v)
    g.edges.push_back({static_cast<std::size_t>(uniform(rng, 0, long(v) - 1)), v, label()});
  const auto extra = static_cast<std::size_t>(uniform(rng, nv == 1 ? 1 : 0, long(max_edges - g.edges.size())));
  for (std::size_t k = 0; k < extra; ++k)
    g.edges.push_back({static_cast<std::size_t>(uniform(rng, 0, long(nv) - 1)),
                       static_cast<std::size_t>(uniform(rng, 0, long(nv) - 1)), label()});
  return g;
}

}  // namespace degenkit
