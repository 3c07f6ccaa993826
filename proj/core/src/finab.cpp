#include "degenkit/finab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace degenkit {

FinAb FinAb::from_cyclic_orders(std::span<const Integer> orders, std::size_t divisible_rank) {
  std::vector<Integer> a;
  for (const auto& o : orders) {
    if (o < 0) throw std::invalid_argument("cyclic order must be non-negative");
    if (o == 0) {
      // Z/0 = Z is not finite; callers account for free parts separately.
      throw std::invalid_argument("cyclic order 0 (a free summand) is not allowed in FinAb");
    }
    if (o > 1) a.push_back(o);
  }
  // gcd/lcm exchange: after processing pair (i, j), a_i | a_j.
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Integer g = gcd(a[i], a[j]);
      Integer l = a[i] / g * a[j];
      a[i] = g;
      a[j] = l;
    }
  std::erase_if(a, [](const Integer& v) { return v == 1; });
  FinAb out;
  out.factors_ = std::move(a);
  out.divisible_rank_ = divisible_rank;
  return out;
}

FinAb FinAb::cyclic(const Integer& order) {
  const Integer o[] = {order};
  return from_cyclic_orders(o);
}

Integer FinAb::torsion_order() const {
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

Integer FinAb::order() const {
  if (divisible_rank_ != 0) throw std::domain_error("group with a divisible part has infinite order");
  return torsion_order();
}

Integer FinAb::exponent() const {
  if (divisible_rank_ != 0) throw std::domain_error("group with a divisible part has no exponent");
  return factors_.empty() ? Integer(1) : factors_.back();
}

FinAb FinAb::torsion() const {
  FinAb t = *this;
  t.divisible_rank_ = 0;
  return t;
}

std::vector<Prime> FinAb::primes() const {
  // Every prime divisor of the order divides the largest invariant factor.
  return factors_.empty() ? std::vector<Prime>{} : prime_factors(factors_.back());
}

std::vector<Integer> FinAb::primary_components(Prime l) const {
  std::vector<Integer> out;
  const Integer lz(static_cast<unsigned long>(l));
  for (const auto& d : factors_) {
    Integer part = 1;
    Integer rest = d;
    while (mpz_divisible_p(rest.get_mpz_t(), lz.get_mpz_t())) {
      rest /= lz;
      part *= lz;
    }
    if (part > 1) out.push_back(part);
  }
  return out;
}

std::string FinAb::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : factors_) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  if (divisible_rank_ > 0) {
    if (!first) os << " + ";
    os << "(Q/Z)";
    if (divisible_rank_ > 1) os << '^' << divisible_rank_;
  }
  return os.str();
}

FinAb direct_sum(const FinAb& a, const FinAb& b) {
  std::vector<Integer> all = a.invariant_factors();
  all.insert(all.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return FinAb::from_cyclic_orders(all, a.divisible_rank() + b.divisible_rank());
}

FinAb direct_sum(std::span<const FinAb> parts) {
  std::vector<Integer> all;
  std::size_t div = 0;
  for (const auto& p : parts) {
    all.insert(all.end(), p.invariant_factors().begin(), p.invariant_factors().end());
    div += p.divisible_rank();
  }
  return FinAb::from_cyclic_orders(all, div);
}

FinAb l_part(const FinAb& g, Prime l) {
  if (!g.is_finite()) throw std::invalid_argument("l_part: group has a divisible part");
  if (!is_prime(l)) throw std::invalid_argument("l_part: " + std::to_string(l) + " is not prime");
  const auto comps = g.primary_components(l);
  return FinAb::from_cyclic_orders(comps);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Integer z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

namespace {

void factor_into(Integer n, std::vector<Integer>& out);

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    if (p * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<Prime> prime_factors(const Integer& n) {
  if (n == 0) throw std::invalid_argument("prime_factors(0)");
  std::vector<Integer> raw;
  factor_into(abs(n), raw);
  std::vector<Prime> out;
  for (const auto& p : raw) {
    if (!p.fits_ulong_p()) throw std::overflow_error("prime factor exceeds 64 bits: " + p.get_str());
    out.push_back(p.get_ui());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace degenkit
