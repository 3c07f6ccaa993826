#include "degenkit/normal_form.hpp"

#include <utility>

namespace degenkit {

std::vector<Integer> SNFDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  out.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

// Transform bookkeeping for the SNF loop. Every elementary row operation on
// the working matrix is mirrored on U (left) and U^{-1} (right, inverted op);
// likewise columns on V and V^{-1}.
struct Transforms {
  bool track;
  IntMatrix U, Ui, V, Vi;

  Transforms(std::size_t m, std::size_t n, bool t) : track(t) {
    if (track) {
      U = Ui = IntMatrix::identity(m);
      V = Vi = IntMatrix::identity(n);
    }
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (!track) return;
    U.swap_rows(a, b);
    Ui.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (!track) return;
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    if (!track) return;
    U.add_row_multiple(dst, src, f);
    Ui.add_col_multiple(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    if (!track) return;
    V.add_col_multiple(dst, src, f);
    Vi.add_row_multiple(src, dst, -f);
  }
  void negate_row(std::size_t r) {
    if (!track) return;
    U.negate_row(r);
    Ui.negate_col(r);
  }
};

bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& v = a(i, j);
      if (v == 0) continue;
      if (!found || abs(v) < best) {
        best = abs(v);
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

SNFDecomposition run_snf(const IntMatrix& m, bool track) {
  IntMatrix a = m;
  Transforms tr(m.rows(), m.cols(), track);
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  Integer q;
  for (; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(a, t, pi, pj)) break;
    a.swap_rows(t, pi);
    tr.swap_rows(t, pi);
    a.swap_cols(t, pj);
    tr.swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row_multiple(i, t, -q);
        tr.add_row(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col_multiple(j, t, -q);
        tr.add_col(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; move it into place.
        std::size_t bi = t, bj = t;
        Integer best = abs(a(t, t));
        for (std::size_t i = t + 1; i < a.rows(); ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) {
            best = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) {
            best = abs(a(t, j));
            bi = t;
            bj = j;
          }
        a.swap_rows(t, bi);
        tr.swap_rows(t, bi);
        a.swap_cols(t, bj);
        tr.swap_cols(t, bj);
        continue;
      }
      // Row and column t are clear; enforce divisibility on the rest.
      bool fixed = false;
      for (std::size_t i = t + 1; i < a.rows() && !fixed; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            a.add_row_multiple(t, i, Integer(1));
            tr.add_row(t, i, Integer(1));
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      tr.negate_row(t);
    }
  }
  SNFDecomposition out;
  out.D = std::move(a);
  out.rank = t;
  if (track) {
    out.U = std::move(tr.U);
    out.U_inverse = std::move(tr.Ui);
    out.V = std::move(tr.V);
    out.V_inverse = std::move(tr.Vi);
  }
  return out;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) { return run_snf(m, true); }

std::vector<Integer> smith_invariants(const IntMatrix& m) { return run_snf(m, false).invariant_factors(); }

IntMatrix column_hnf(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t k = 0;
  Integer q;
  for (std::size_t i = 0; i < h.rows() && k < h.cols(); ++i) {
    for (std::size_t j = k + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, k) == 0) {
        h.swap_cols(k, j);
        continue;
      }
      auto [g, s, t] = extended_gcd(h(i, k), h(i, j));
      Integer u = h(i, k) / g;
      Integer v = h(i, j) / g;
      // [col_k col_j] <- [col_k col_j] * [[s, -v], [t, u]], determinant 1.
      for (std::size_t r = 0; r < h.rows(); ++r) {
        Integer ck = h(r, k), cj = h(r, j);
        h(r, k) = s * ck + t * cj;
        h(r, j) = u * cj - v * ck;
      }
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) h.negate_col(k);
    for (std::size_t j = 0; j < k; ++j) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      h.add_col_multiple(j, k, -q);
    }
    ++k;
  }
  return h.select_cols(0, k);
}

std::size_t rank(const IntMatrix& m) { return run_snf(m, false).rank; }

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> leading_principal_minors(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("principal minors of a non-square matrix");
  std::vector<Integer> out;
  out.reserve(m.rows());
  for (std::size_t k = 1; k <= m.rows(); ++k)
    out.push_back(determinant(m.select_rows(0, k).select_cols(0, k)));
  return out;
}

bool is_positive_definite(const IntMatrix& m) {
  if (!m.is_symmetric()) return false;
  for (const auto& d : leading_principal_minors(m))
    if (d <= 0) return false;
  return true;
}

std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw DimensionError("solve: shape mismatch");
  const std::size_t n = a.rows();
  RatMatrix aug = hstack(a, b);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    aug.swap_rows(c, p);
    Rational inv = 1 / aug(c, c);
    for (std::size_t j = 0; j < aug.cols(); ++j) aug(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && aug(i, c) != 0) aug.add_row_multiple(i, c, Rational(-aug(i, c)));
  }
  return aug.select_cols(n, aug.cols());
}

std::optional<RatMatrix> inverse(const RatMatrix& a) { return solve(a, RatMatrix::identity(a.rows())); }

std::optional<IntMatrix> solve_integral(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_integral: shape mismatch");
  // a = U^{-1} D V^{-1}; a x = b  <=>  D y = U b with x = V y.
  const auto snf = smith_normal_form(a);
  IntMatrix ub = snf.U * b;
  IntMatrix y(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i < snf.rank) {
        const Integer& d = snf.D(i, i);
        if (!mpz_divisible_p(ub(i, j).get_mpz_t(), d.get_mpz_t())) return std::nullopt;
        y(i, j) = ub(i, j) / d;
      } else if (ub(i, j) != 0) {
        return std::nullopt;
      }
    }
  return snf.V * y;
}

}  // namespace degenkit
