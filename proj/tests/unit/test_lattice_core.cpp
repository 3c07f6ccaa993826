#include "oracles.hpp"

#include <degenkit/lattice.hpp>
#include <degenkit/normal_form.hpp>
#include <degenkit/random.hpp>

#include <gtest/gtest.h>

using namespace degenkit;

namespace {

FinAb truncated(const FinAb& g, const Integer& n) {
  std::vector<Integer> orders;
  for (const auto& d : g.invariant_factors()) {
    Integer x;
    mpz_gcd(x.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    orders.push_back(x);
  }
  for (std::size_t i = 0; i < g.divisible_rank(); ++i) orders.push_back(n);
  return FinAb::from_cyclic_orders(orders);
}

}  // namespace

TEST(Matrix, ShapesAndProducts) {
  const IntMatrix a{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(a.rows(), 2u);
  EXPECT_EQ(a.cols(), 3u);
  EXPECT_EQ(a.transpose(), (IntMatrix{{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(a * a.transpose(), (IntMatrix{{14, 32}, {32, 77}}));
  EXPECT_EQ(to_string(IntMatrix(0, 3)), "[]");
  EXPECT_THROW(a * a, DimensionError);
  const IntMatrix e(0, 2);
  EXPECT_EQ((e.transpose() * e), IntMatrix::zero(2, 2));
}

TEST(Matrix, StackingAndBlocks) {
  const std::vector<IntMatrix> rows{IntMatrix{{2, 1}}, IntMatrix{{0, 1}}};
  EXPECT_EQ(vstack<Integer>(rows, 2), (IntMatrix{{2, 1}, {0, 1}}));
  const std::vector<IntMatrix> blocks{IntMatrix{{2}}, IntMatrix{{3}}};
  EXPECT_EQ(block_diagonal<Integer>(blocks), (IntMatrix{{2, 0}, {0, 3}}));
  EXPECT_EQ(hstack(IntMatrix{{1}}, IntMatrix{{2}}), (IntMatrix{{1, 2}}));
}

TEST(SmithNormalForm, SmallExamples) {
  EXPECT_EQ(smith_invariants(IntMatrix{{2, 1}, {0, 1}}), (std::vector<Integer>{1, 2}));
  EXPECT_EQ(smith_invariants(IntMatrix{{4, 2}, {2, 2}}), (std::vector<Integer>{2, 2}));
  EXPECT_EQ(smith_invariants(IntMatrix{{2, 0}, {0, 3}}), (std::vector<Integer>{1, 6}));
  EXPECT_TRUE(smith_invariants(IntMatrix(3, 0)).empty());
  EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank, 0u);
}

TEST(SmithNormalForm, DeterminantalDivisorsOracle) {
  Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, k % 2 ? 9 : 30);
    const SNFDecomposition s = smith_normal_form(m);
    ASSERT_EQ(s.U * m * s.V, s.D);
    Integer prod = 1;
    for (std::size_t i = 0; i < std::min(r, c); ++i) {
      prod *= s.D(i, i);
      ASSERT_EQ(abs(prod), oracle::determinantal_divisor(m, i + 1)) << to_string(m);
    }
  }
}

TEST(SmithNormalForm, BigEntries) {
  IntMatrix m(2, 2);
  m(0, 0) = Integer("123456789012345678901234567890");
  m(0, 1) = 7;
  m(1, 0) = 3;
  m(1, 1) = Integer("-987654321987654321");
  const SNFDecomposition s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(s.D(0, 0) * s.D(1, 1), abs(determinant(m)));
}

TEST(HermiteNormalForm, CanonicalForTheSameLattice) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 4, g = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, n, g, 9);
    const IntMatrix u = random_unimodular(rng, g, 9);
    EXPECT_EQ(column_hnf(a), column_hnf(a * u));
    EXPECT_TRUE(same_image(a, hstack(a, a * u)));
    const IntMatrix h = column_hnf(a);
    EXPECT_EQ(h.cols(), rank(a));
  }
}

TEST(Determinant, MatchesLaplace) {
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, n, n, 20);
    EXPECT_EQ(determinant(m), oracle::laplace_det(m));
  }
}

TEST(Determinant, PositiveDefinite) {
  EXPECT_TRUE(is_positive_definite(IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 2}, {2, 1}}));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_EQ(leading_principal_minors(IntMatrix{{4, 2}, {2, 2}}), (std::vector<Integer>{4, 4}));
}

TEST(Solve, RationalAndIntegral) {
  const auto x = solve(to_rational(IntMatrix{{2, 0}, {0, 4}}), to_rational(IntMatrix{{1}, {2}}));
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)(0, 0), Rational(1, 2));
  EXPECT_FALSE(solve(to_rational(IntMatrix{{1, 1}, {1, 1}}), to_rational(IntMatrix{{1}, {0}})));
  EXPECT_FALSE(solve_integral(IntMatrix{{2}}, IntMatrix{{1}}));
  const auto y = solve_integral(IntMatrix{{2, 1}, {0, 1}}, IntMatrix{{4, 3}, {0, 1}});
  ASSERT_TRUE(y);
  EXPECT_FALSE(solve_integral(IntMatrix{{2, 1}, {0, 1}}, IntMatrix{{4, 2}, {0, 1}}));
  EXPECT_EQ(IntMatrix({{2, 1}, {0, 1}}) * *y, (IntMatrix{{4, 3}, {0, 1}}));
  const ExtendedGcd e = extended_gcd(12, 42);
  EXPECT_EQ(e.g, 6);
  EXPECT_EQ(e.s * 12 + e.t * 42, 6);
}

TEST(FinAb, Normalization) {
  const std::vector<Integer> orders{2, 3, 1, 4};
  const FinAb g = FinAb::from_cyclic_orders(orders);
  EXPECT_EQ(g.invariant_factors(), (std::vector<Integer>{2, 12}));
  EXPECT_EQ(g.order(), 24);
  EXPECT_EQ(g.exponent(), 12);
  EXPECT_EQ(g.to_string(), "Z/2 + Z/12");
  EXPECT_EQ(FinAb::trivial().to_string(), "0");
  EXPECT_EQ(g.primes(), (std::vector<Prime>{2, 3}));
  EXPECT_EQ(g.primary_components(2), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(direct_sum(FinAb::cyclic(2), FinAb::cyclic(3)), FinAb::cyclic(6));
  const std::vector<Integer> none;
  const FinAb d = FinAb::from_cyclic_orders(none, 2);
  EXPECT_FALSE(d.is_finite());
  EXPECT_THROW((void)d.order(), std::domain_error);
  EXPECT_EQ(d.to_string(), "(Q/Z)^2");
  EXPECT_THROW(l_part(d, 2), std::invalid_argument);
  EXPECT_THROW(l_part(g, 4), std::invalid_argument);
}

TEST(FinAb, LPartMatchesDivisionOracle) {
  Rng rng(14);
  for (int k = 0; k < 300; ++k) {
    std::vector<Integer> orders;
    for (int i = 0; i < 3; ++i) orders.emplace_back(static_cast<long>(1 + rng() % 360));
    const FinAb g = FinAb::from_cyclic_orders(orders);
    for (unsigned long l : {2ul, 3ul, 5ul, 7ul}) EXPECT_EQ(l_part(g, l), oracle::l_part_by_division(orders, l));
    // The primary parts recombine to the whole group.
    std::vector<FinAb> parts;
    for (Prime p : g.primes()) parts.push_back(l_part(g, p));
    EXPECT_EQ(direct_sum(parts), g);
  }
}

TEST(FinAb, PrimeFactors) {
  EXPECT_EQ(prime_factors(Integer(360)), (std::vector<Prime>{2, 3, 5}));
  EXPECT_EQ(prime_factors(Integer(-49)), (std::vector<Prime>{7}));
  EXPECT_EQ(prime_factors(Integer("1000000016000000063")), (std::vector<Prime>{1000000007, 1000000009}));
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(1));
}

TEST(Lattice, CokernelOfTheUniformizationPurity) {
  const IntMatrix p{{2, 1}, {0, 1}};
  const Cokernel c = cokernel(p);
  EXPECT_EQ(c.torsion, FinAb::cyclic(2));
  EXPECT_EQ(c.free_rank, 0u);
  EXPECT_EQ(oracle::kernel_qz_torsion(p, 12), FinAb::cyclic(2));
  EXPECT_EQ(cokernel(IntMatrix{{1}, {1}}).free_rank, 1u);
}

TEST(Lattice, TorsionKernelMatchesGridEnumeration) {
  Rng rng(15);
  for (int k = 0; k < 150; ++k) {
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    const IntMatrix m = random_matrix(rng, r, c, 6);
    for (long n : {4L, 6L, 9L}) {
      EXPECT_EQ(truncated(torsion_kernel_qz(m), n), oracle::kernel_qz_torsion(m, n)) << to_string(m) << " N=" << n;
    }
  }
}

TEST(Lattice, KernelSaturatedAndSaturation) {
  Rng rng(16);
  for (int k = 0; k < 200; ++k) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, 5);
    const IntMatrix kern = kernel_saturated(m);
    EXPECT_TRUE((m * kern).is_zero());
    EXPECT_EQ(kern.cols(), c - rank(m));
    EXPECT_TRUE(is_saturated(kern));
    const IntMatrix sat = saturation(m);
    EXPECT_TRUE(is_saturated(sat));
    EXPECT_EQ(sat.cols(), rank(m));
    EXPECT_EQ(column_hnf(hstack(sat, m)), column_hnf(sat));
  }
}

TEST(Lattice, SumAndQuotient) {
  const std::vector<IntMatrix> parts{IntMatrix{{2}, {0}}, IntMatrix{{0}, {1}}};
  const LatticeSum s = lattice_sum(parts, 2);
  ASSERT_TRUE(s.index);
  EXPECT_EQ(*s.index, 2);
  EXPECT_EQ(s.saturated, IntMatrix::identity(2));
  const std::vector<IntMatrix> line{IntMatrix{{1}, {1}}};
  EXPECT_FALSE(lattice_sum(line, 2).index);

  const IntMatrix b{{1}, {1}, {0}};
  const Quotient q = quotient_by(b);
  EXPECT_TRUE((q.projection * b).is_zero());
  EXPECT_EQ(q.projection * q.section, IntMatrix::identity(2));
  EXPECT_THROW(quotient_by(IntMatrix{{2}, {0}}), std::invalid_argument);
}

TEST(Lattice, InjectiveCasesAgreeWithTransposeCokernel) {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    const std::size_t c = 1 + rng() % 3, r = c + rng() % 2;
    const IntMatrix m = random_matrix(rng, r, c, 9);
    if (!is_injective(m)) continue;
    const Cokernel ct = cokernel(m.transpose());
    EXPECT_EQ(ct.free_rank, 0u);
    EXPECT_EQ(torsion_kernel_qz(m), ct.torsion);
  }
}
