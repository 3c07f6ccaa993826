// Smith and Hermite normal forms, determinants and exact rational solves.
#pragma once

#include "degenkit/matrix.hpp"

#include <optional>
#include <vector>

namespace degenkit {

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
/// d_i > 0 for i < rank and zero afterwards. The inverses of U and V are
/// carried along so callers can move between the two bases without a solve.
struct SNFDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  /// Nonzero diagonal entries of D, in order.
  std::vector<Integer> invariant_factors() const;
};

/// Pivoting always picks the smallest nonzero |entry| in the active block,
/// which keeps intermediate growth modest at the sizes this library targets.
SNFDecomposition smith_normal_form(const IntMatrix& m);

/// Invariant factors only (same algorithm, no transforms tracked).
std::vector<Integer> smith_invariants(const IntMatrix& m);

/// Column Hermite normal form: a lower-echelon basis of the column span of
/// `m`, with positive pivots and entries left of each pivot reduced into
/// [0, pivot). Two matrices span the same sublattice iff their HNFs agree.
IntMatrix column_hnf(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
/// Fraction-free (Bareiss) determinant. Requires a square matrix.
Integer determinant(const IntMatrix& m);
/// det of the leading k x k blocks, k = 1..n.
std::vector<Integer> leading_principal_minors(const IntMatrix& m);
bool is_positive_definite(const IntMatrix& m);

/// Solves a * x = b over Q for square invertible `a`. Returns nullopt when
/// `a` is singular.
std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b);
std::optional<RatMatrix> inverse(const RatMatrix& a);

/// Solves a * x = b over Z; nullopt when no integral solution exists.
/// `a` may be rectangular; when a has a kernel the returned solution is one
/// particular solution.
std::optional<IntMatrix> solve_integral(const IntMatrix& a, const IntMatrix& b);

/// gcd(a, b) = s*a + t*b with g >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

}  // namespace degenkit
