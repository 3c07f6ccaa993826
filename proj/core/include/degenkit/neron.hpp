// Test-Neron bookkeeping: the Psi group, Kummer rescalings, the Psi -> Upsilon
// projection along a trait, and the converse certificate.
#pragma once

#include "degenkit/degeneration.hpp"
#include "degenkit/monodromy.hpp"

#include <string>
#include <vector>

namespace degenkit {

struct PsiGroup {
  std::vector<FinAb> components;
  FinAb total;
  Integer order = 1;
};

/// Psi = sum of coker(phi_i) over all branches.
PsiGroup psi_group(const DegenDatum& datum);

/// Same lattices, pairings phi_i replaced by m_i phi_i. Rejects m_i < 1 and
/// m_i divisible by the residue characteristic.
DegenDatum kummer_rescale(const DegenDatum& datum, const std::vector<Integer>& m);

struct PsiFixedPoints {
  FinAb rescaled;
  FinAb fixed;
  bool equals_psi = false;
};

/// Psi' of the rescaled datum and its invariants under the Kummer group:
/// away from p the invariants of coker(m_i phi_i) are ker(phi_i tensor Q/Z);
/// the p-part carries the trivial action.
PsiFixedPoints psi_fixed_points(const DegenDatum& datum, const std::vector<Integer>& m);

struct TraitSurjectivity {
  std::vector<std::size_t> active;
  FinAb psi_active;
  FinAb upsilon;
  /// Psi -> Upsilon on X'-coordinates: drop inactive blocks, then apply the
  /// inverse of the dual stratum purity map.
  IntMatrix map_matrix;
  Integer image_order = 0;
  bool lands_in_upsilon = false;
  bool surjective = false;
  bool section_ok = false;
  bool order_divides = false;
};

/// Requires a toric additive datum and a transversal profile.
TraitSurjectivity trait_surjectivity_check(const DegenDatum& datum, const TraitProfile& profile);

enum class ConverseVerdict { Certified, HypothesisFailed, IntegralityFailed, DecompositionFailed };

std::string to_string(ConverseVerdict v);

struct ConverseCertificate {
  bool hypothesis_holds = false;
  FinAb coker_at_psi;
  FinAb coker_at_psi_a;
  std::optional<RatMatrix> theta;
  IntMatrix chi1;
  IntMatrix chi2;
  bool idempotent = false;
  bool sums_to_identity = false;
  bool kernel_decomposition = false;
  bool restriction_isomorphism = false;
  bool a_isomorphism = false;
  ConverseVerdict verdict = ConverseVerdict::HypothesisFailed;
};

/// P : X -> Y1 and Q : X -> Y2 surjective, Psi1 and Psi2 symmetric positive
/// definite on Y1 and Y2.
ConverseCertificate converse_check(const LatticeMap& p, const LatticeMap& q, const LatticeMap& psi1,
                                   const LatticeMap& psi2);

/// Splits a principally polarized datum as branch 1 against the stratum of
/// branches 2..n and runs converse_check on the result.
ConverseCertificate converse_from_datum(const DegenDatum& datum);

}  // namespace degenkit
