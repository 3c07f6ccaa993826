// Kernels, cokernels and sublattice bookkeeping over Z.
#pragma once

#include "degenkit/finab.hpp"
#include "degenkit/matrix.hpp"
#include "degenkit/normal_form.hpp"

#include <optional>
#include <span>

namespace degenkit {

struct Cokernel {
  FinAb torsion;
  std::size_t free_rank = 0;

  bool is_trivial() const { return torsion.is_trivial() && free_rank == 0; }
  friend bool operator==(const Cokernel&, const Cokernel&) = default;
};

/// coker(M) = Z^target / M Z^source.
Cokernel cokernel(const LatticeMap& m);

/// ker(M tensor Q/Z): torsion invariants plus divisible rank = nullity(M).
FinAb torsion_kernel_qz(const LatticeMap& m);

/// Injective map whose image is {x : M x = 0}; the quotient by that image is
/// torsion-free.
LatticeMap kernel_saturated(const LatticeMap& m);

/// A basis (as columns) of the column span of M, in Hermite normal form.
LatticeMap image_basis(const LatticeMap& m);

/// A basis of (image of M tensor Q) intersected with Z^target.
LatticeMap saturation(const LatticeMap& m);

bool same_image(const LatticeMap& a, const LatticeMap& b);
bool is_injective(const LatticeMap& m);
bool is_surjective(const LatticeMap& m);
/// Injective with torsion-free cokernel.
bool is_saturated(const LatticeMap& m);

struct LatticeSum {
  /// Basis of the sum of the images (HNF, independent columns).
  LatticeMap basis;
  /// Basis of its saturation in the common target.
  LatticeMap saturated;
  /// Index of the sum in the target; nullopt when the sum has lower rank.
  std::optional<Integer> index;
};

/// Sum of the images of maps with a common target. `target_rank` is needed
/// when the list is empty.
LatticeSum lattice_sum(std::span<const LatticeMap> maps, std::size_t target_rank);

/// For a saturated sublattice S = im(B) of Z^n: a surjection q: Z^n -> Z^{n-k}
/// with kernel S, and a section s with q s = id.
struct Quotient {
  LatticeMap projection;
  LatticeMap section;
};
Quotient quotient_by(const LatticeMap& saturated_basis);

/// Index [Z^n : L] for a sublattice spanned by the columns of `generators`;
/// nullopt when L has rank < n.
std::optional<Integer> index_in_ambient(const LatticeMap& generators);

}  // namespace degenkit
