// A Z-model of the l-adic Tate module with its unipotent inertia action,
// synthesized from a degeneration datum and used as an independent oracle.
#pragma once

#include "degenkit/degeneration.hpp"
#include "degenkit/monodromy.hpp"

#include <string>
#include <vector>

namespace degenkit {

/// T = X^dual + C + X' with C of rank 2 alpha. Generator i acts as
/// id + N_i, where N_i sends the X' block to the X^dual block by
/// sp_i^t phi_i sp'_i and kills the rest.
struct GaloisRep {
  Prime l = 0;
  std::size_t relative_dimension = 0;
  std::size_t abelian_rank = 0;
  std::size_t toric_rank = 0;
  std::vector<LatticeMap> nilpotents;
  /// T^f = X^dual + C and T^t = X^dual as column bases.
  LatticeMap fixed_part;
  LatticeMap toric_part;

  std::size_t rank() const { return 2 * relative_dimension; }
  std::size_t generator_count() const { return nilpotents.size(); }
  LatticeMap sigma(std::size_t i) const;
};

/// Rejects l = p. Re-verifies N_i N_j = 0, unipotency, commutation and
/// T^G = T^f; a failure there throws std::logic_error.
GaloisRep build_rep(const DegenDatum& datum, Prime l);

/// Saturated basis of the sublattice fixed by every generator except those
/// listed in `skip`.
LatticeMap fixed_sublattice(const GaloisRep& rep, const std::vector<std::size_t>& skip);

/// T is the sum of the sublattices fixed by all generators but one, up to
/// an index prime to l.
bool star_condition(const GaloisRep& rep);

struct DecompositionResult {
  bool holds = false;
  std::string reason;
};

/// Splits T/T^G through T/T^{I_1} + ... + T/T^{I_n} and checks that the
/// preimages of the blocks are G-stable, fixed by the other generators and
/// span with index prime to l.
DecompositionResult decomposition_check(const GaloisRep& rep);

/// ker(sigma - 1 on T/l^r) modulo the image of T^sigma, for the generator
/// sigma = 1 + sum a_i N_i of a trait.
FinAb torsion_phi_group(const GaloisRep& rep, const TraitProfile& profile, unsigned r);

/// The same quotient for the full group G at the closed point.
FinAb closed_point_torsion(const GaloisRep& rep, unsigned r);

/// Smallest r >= 1 with l^r > bound.
unsigned level_exceeding(Prime l, const Integer& bound);

}  // namespace degenkit
