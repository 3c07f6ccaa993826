// Monodromy pairings along traits and the component groups they present.
#pragma once

#include "degenkit/degeneration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace degenkit {

/// Valuations a_i = v(f^* u_i) of the branch equations along a trait.
struct TraitProfile {
  std::vector<Integer> multiplicities;

  /// All a_i in {0, 1}.
  bool transversal() const;
  /// J = {i : a_i > 0}, ascending.
  std::vector<std::size_t> active() const;
};

/// Character lattice Y of the stratum where exactly the branches in J meet,
/// together with its purity maps. The specialization X -> Y is surjective,
/// so Y is the image of X in the sum of the X_j (j in J); that image is what
/// gets derived here unless the datum carries an explicit override.
struct StratumLattice {
  std::vector<std::size_t> branches;
  Lattice lattice;
  /// p_Y : Y -> sum_{j in J} X_j (injective).
  LatticeMap purity;
  /// p'_Y : Y' -> sum_{j in J} X'_j (injective).
  LatticeMap dual_purity;
  /// sp : X -> Y with purity * specialization = restricted purity of X.
  LatticeMap specialization;
  LatticeMap dual_specialization;
  bool supplied = false;
};

StratumLattice stratum_lattice(const DegenDatum& datum, const std::vector<std::size_t>& subset);

/// Restriction of the datum to `subset`: the closed point becomes the stratum
/// lattice of the subset and only those branches are kept.
DegenDatum sub_datum(const DegenDatum& datum, const std::vector<std::size_t>& subset);

struct ComposedPairing {
  StratumLattice stratum;
  /// phi_f : Y' -> Y^dual.
  LatticeMap pairing;
  std::vector<std::string> warnings;
};

/// phi_f = p_Y^t * diag(a_j phi_j) * p'_Y over the active set J.
ComposedPairing compose_trait(const DegenDatum& datum, const TraitProfile& profile);

class DegeneratePairing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// coker(phi), cross-checked against ker(phi tensor Q/Z). Rejects non-square
/// or singular phi with DegeneratePairing.
FinAb component_group(const LatticeMap& phi);

/// psi_i = sp_i^t phi_i sp'_i : X' -> X^dual.
std::vector<LatticeMap> closed_point_pairings(const DegenDatum& datum);

struct ClosedPointBound {
  /// l-part of the torsion of the intersection of ker(psi_i tensor Q/Z).
  FinAb bound;
  /// Rank of the divisible part of that intersection.
  std::size_t divisible_rank = 0;
};

/// Upper bound for the l-part of the closed-point component group. Equality
/// holds (and is asserted) when n <= 1. Rejects l = p.
ClosedPointBound closed_point_bound(const DegenDatum& datum, Prime l);

/// Checks phi * lambda symmetric and positive definite (exact leading
/// minors). Returns a description of the first failing property.
std::optional<std::string> validate_pairing(const LatticeMap& phi, const LatticeMap& lambda);

}  // namespace degenkit
