// Brute-force reference computations that avoid the normal-form code.
#pragma once

#include <degenkit/finab.hpp>
#include <degenkit/matrix.hpp>

#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using degenkit::FinAb;
using degenkit::IntMatrix;
using degenkit::Integer;

inline std::vector<long> factor(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

/// #{v in (Z/k)^n : M v = 0 mod k}, i.e. the order of ker(M tensor Q/Z)[k].
inline long count_kernel_mod(const IntMatrix& m, long k) {
  const std::size_t n = m.cols();
  std::vector<long> v(n, 0);
  long count = 0;
  for (;;) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
      if (s % k != 0) zero = false;
    }
    if (zero) ++count;
    std::size_t j = 0;
    while (j < n && ++v[j] == k) v[j++] = 0;
    if (j == n) break;
  }
  return count;
}

/// ker(M tensor Q/Z)[N] as a group, reconstructed from the orders of its
/// p^j-torsion subgroups.
inline FinAb kernel_qz_torsion(const IntMatrix& m, long big_n) {
  std::vector<Integer> orders;
  for (long p : factor(big_n)) {
    long top = 0, pk = 1;
    while (big_n % (pk * p) == 0) pk *= p, ++top;
    std::vector<long> logs{0};
    long q = 1;
    for (long j = 1; j <= top; ++j) {
      q *= p;
      long c = count_kernel_mod(m, q), e = 0;
      while (c > 1) c /= p, ++e;
      logs.push_back(e);
    }
    // factors of order >= p^j number logs[j] - logs[j-1]
    for (long j = 1; j <= top; ++j) {
      const long at_least_j = logs[j] - logs[j - 1];
      const long at_least_next = j < top ? logs[j + 1] - logs[j] : 0;
      Integer pj = 1;
      for (long t = 0; t < j; ++t) pj *= p;
      for (long c = 0; c < at_least_j - at_least_next; ++c) orders.push_back(pj);
    }
  }
  return FinAb::from_cyclic_orders(orders);
}

inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) cols.push_back(j);
    const Integer minor = laplace_det(m.select_rows(rows).select_cols(cols));
    det += (c % 2 == 0 ? 1 : -1) * m(0, c) * minor;
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all k x k minors (the k-th determinantal divisor).
inline Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  subsets(m.rows(), k, 0, cur, rs);
  subsets(m.cols(), k, 0, cur, cs);
  Integer g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      const Integer d = laplace_det(m.select_rows(r).select_cols(c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

/// l-part of Z/d_1 + ... by stripping every other prime from each d_i.
inline FinAb l_part_by_division(const std::vector<Integer>& orders, unsigned long l) {
  std::vector<Integer> out;
  for (Integer d : orders) {
    Integer p = 1;
    while (d % l == 0) d /= l, p *= l;
    out.push_back(p);
  }
  return FinAb::from_cyclic_orders(out);
}

}  // namespace oracle
