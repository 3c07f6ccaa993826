// Strictly local degeneration data and the toric-additivity verdicts.
#pragma once

#include "degenkit/finab.hpp"
#include "degenkit/lattice.hpp"
#include "degenkit/matrix.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace degenkit {

/// One component D_i of the boundary divisor, seen at its generic point.
struct Branch {
  std::string name;
  /// mu_i = rank X_i = rank X'_i.
  std::size_t rank = 0;
  /// sp_i : X -> X_i  (rank x mu).
  LatticeMap specialization;
  /// phi_i : X'_i -> X_i^dual  (rank x rank).
  LatticeMap pairing;
  /// sp'_i : X' -> X'_i. Absent on the principally polarized default, where
  /// X' = X and sp'_i = sp_i.
  std::optional<LatticeMap> dual_specialization;
  /// lambda_i : X_i -> X'_i.
  std::optional<LatticeMap> polarization;
};

/// Caller-supplied character lattice of an intermediate stratum (the generic
/// point of the intersection of the listed branches), given by its purity
/// map into the direct sum of the listed branch lattices.
struct StratumOverride {
  std::vector<std::size_t> branches;  // 0-based, ascending
  LatticeMap purity;
  std::optional<LatticeMap> dual_purity;
};

struct DegenDatum {
  std::string name;
  /// 0 or a prime.
  Prime residue_char = 0;
  std::size_t abelian_rank = 0;
  /// mu = rank X.
  std::size_t closed_rank = 0;
  std::vector<Branch> branches;
  /// lambda : X -> X'.
  std::optional<LatticeMap> polarization;
  std::vector<StratumOverride> strata;

  std::size_t branch_count() const { return branches.size(); }
  std::size_t relative_dimension() const { return abelian_rank + closed_rank; }
  /// True when no dual side is supplied: X' = X, sp' = sp.
  bool has_explicit_dual() const;
  const LatticeMap& dual_specialization(std::size_t i) const;
};

struct Violation {
  std::string invariant;
  std::optional<std::size_t> branch;  // 0-based
  std::string detail;

  std::string to_string() const;
};

/// Every structural invariant of the datum; empty means valid.
std::vector<Violation> validate(const DegenDatum& datum);

class InvalidDatum : public std::invalid_argument {
 public:
  explicit InvalidDatum(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws InvalidDatum listing every violation.
void require_valid(const DegenDatum& datum);

/// Stack of sp_1 ... sp_n : X -> X_1 + ... + X_n.
LatticeMap purity_matrix(const DegenDatum& datum);
/// Same for the dual side.
LatticeMap dual_purity_matrix(const DegenDatum& datum);

struct Verdict {
  bool toric_additive = false;
  bool weakly_toric_additive = false;
  /// Primes l != p dividing an invariant factor of the purity cokernel. When
  /// the purity map has a free cokernel part, l-toric additivity fails for
  /// every l as well.
  std::set<Prime> failing_primes;
  Cokernel purity_cokernel;
};

Verdict analyze(const DegenDatum& datum);

class PrimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws PrimeError when l is not prime or equals the residue characteristic.
void require_usable_prime(const DegenDatum& datum, Prime l);

bool is_l_toric_additive(const DegenDatum& datum, Prime l);

struct RankProfile {
  std::size_t closed = 0;
  std::vector<std::size_t> branches;
  /// sum(mu_i) - mu; zero iff weakly toric additive.
  std::size_t deficit = 0;
};

RankProfile toric_rank_profile(const DegenDatum& datum);

/// The same degeneration seen from the dual abelian scheme: primal and dual
/// sides swap, pairings transpose and polarizations are replaced by their
/// dual isogenies (exponent times the inverse).
DegenDatum dual_datum(const DegenDatum& datum);

}  // namespace degenkit
