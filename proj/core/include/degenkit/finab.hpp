// Finitely generated abelian groups in invariant-factor form.
#pragma once

#include "degenkit/matrix.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace degenkit {

using Prime = std::uint64_t;

/// A group  Z/d_1 + ... + Z/d_k + (Q/Z)^r  with 2 <= d_1 | d_2 | ... | d_k.
/// The divisible part only appears for kernels of maps tensored with Q/Z;
/// those groups are never represented elementwise.
class FinAb {
 public:
  FinAb() = default;

  /// Normalizes an arbitrary list of non-negative cyclic orders (zeros and
  /// ones are dropped) into the invariant-factor chain.
  static FinAb from_cyclic_orders(std::span<const Integer> orders, std::size_t divisible_rank = 0);
  static FinAb cyclic(const Integer& order);
  static FinAb trivial() { return {}; }

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t divisible_rank() const { return divisible_rank_; }

  bool is_trivial() const { return factors_.empty() && divisible_rank_ == 0; }
  bool is_finite() const { return divisible_rank_ == 0; }
  /// Order of the torsion part (the whole group when finite).
  Integer torsion_order() const;
  /// Throws std::domain_error when the group has a divisible part.
  Integer order() const;
  Integer exponent() const;

  /// Same group with the divisible part dropped.
  FinAb torsion() const;

  /// Distinct primes dividing the torsion order, ascending.
  std::vector<Prime> primes() const;

  /// Elementary divisors l^e of the l-primary part, ascending.
  std::vector<Integer> primary_components(Prime l) const;

  friend bool operator==(const FinAb&, const FinAb&) = default;

  /// "0", "Z/2 + Z/4", "Z/3 + (Q/Z)^2".
  std::string to_string() const;

 private:
  std::vector<Integer> factors_;
  std::size_t divisible_rank_ = 0;
};

FinAb direct_sum(const FinAb& a, const FinAb& b);
FinAb direct_sum(std::span<const FinAb> parts);

/// The l-primary component. Rejects groups with a divisible part.
FinAb l_part(const FinAb& g, Prime l);

bool is_prime(std::uint64_t n);
/// Prime factors of |n| (n != 0), ascending and distinct.
std::vector<Prime> prime_factors(const Integer& n);

}  // namespace degenkit
