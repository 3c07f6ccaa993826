#include "fixtures.hpp"

#include <degenkit/galois.hpp>
#include <degenkit/normal_form.hpp>
#include <degenkit/random.hpp>

#include <gtest/gtest.h>

using namespace degenkit;
using namespace testdata;

TEST(BuildRep, NoBranches) {
  DegenDatum d = datum(0, {});
  d.abelian_rank = 1;
  const GaloisRep rep = build_rep(d, 3);
  EXPECT_EQ(rep.rank(), 2u);
  EXPECT_EQ(rep.generator_count(), 0u);
  EXPECT_EQ(fixed_sublattice(rep, {}).cols(), 2u);
  EXPECT_TRUE(star_condition(rep));
  EXPECT_TRUE(decomposition_check(rep).holds);
}

TEST(BuildRep, UniformizationRanks) {
  const GaloisRep rep = build_rep(uniformization(), 3);
  EXPECT_EQ(rep.rank(), 4u);
  EXPECT_EQ(fixed_sublattice(rep, {}).cols(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const IntMatrix u = rep.sigma(i) - IntMatrix::identity(4);
    EXPECT_TRUE((u * u).is_zero());
  }
  EXPECT_EQ(rep.sigma(0) * rep.sigma(1), rep.sigma(1) * rep.sigma(0));
}

TEST(BuildRep, SingleBranchNilpotent) {
  const GaloisRep rep = build_rep(datum(1, {branch({{1}}, {{7}})}), 2);
  IntMatrix expected = IntMatrix::zero(2, 2);
  expected(0, 1) = 7;
  EXPECT_EQ(rep.nilpotents[0], expected);
  EXPECT_TRUE(star_condition(rep));
  EXPECT_TRUE(decomposition_check(rep).holds);
}

TEST(BuildRep, RejectsResidueCharacteristic) {
  const DegenDatum d = datum(1, {branch({{1}}, {{5}})}, 5);
  EXPECT_THROW(build_rep(d, 5), PrimeError);
}

TEST(Star, UniformizationDependsOnL) {
  const DegenDatum d = uniformization();
  EXPECT_FALSE(star_condition(build_rep(d, 2)));
  EXPECT_TRUE(star_condition(build_rep(d, 3)));
  const DecompositionResult bad = decomposition_check(build_rep(d, 2));
  EXPECT_FALSE(bad.holds);
  EXPECT_FALSE(bad.reason.empty());
  EXPECT_TRUE(decomposition_check(build_rep(d, 3)).holds);
  EXPECT_FALSE(star_condition(build_rep(tate_u1u2(), 3)));
  EXPECT_FALSE(decomposition_check(build_rep(tate_u1u2(), 3)).holds);
}

TEST(Star, AgreesWithLToricAdditivity) {
  Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    const DegenDatum d = random_datum(rng);
    for (Prime l : {2, 3, 5}) {
      const GaloisRep rep = build_rep(d, l);
      const bool lta = is_l_toric_additive(d, l);
      EXPECT_EQ(star_condition(rep), lta);
      EXPECT_EQ(decomposition_check(rep).holds, lta);
      EXPECT_EQ(fixed_sublattice(rep, {}).cols(), rep.rank() - d.closed_rank);
    }
  }
}

TEST(TorsionPhi, Examples) {
  const GaloisRep one = build_rep(datum(1, {branch({{1}}, {{12}})}), 2);
  EXPECT_EQ(torsion_phi_group(one, {{1}}, 4), FinAb::cyclic(4));
  EXPECT_EQ(torsion_phi_group(one, {{1}}, 1), FinAb::cyclic(2));
  EXPECT_EQ(torsion_phi_group(build_rep(datum(1, {branch({{1}}, {{12}})}), 3), {{1}}, 2), FinAb::cyclic(3));

  const GaloisRep u = build_rep(uniformization(), 2);
  EXPECT_EQ(torsion_phi_group(u, {{1, 1}}, 4), FinAb::from_cyclic_orders(std::vector<Integer>{2, 2}));
  EXPECT_TRUE(torsion_phi_group(u, {{0, 0}}, 3).is_trivial());
  EXPECT_THROW(torsion_phi_group(u, {{1}}, 2), std::invalid_argument);
  EXPECT_THROW(torsion_phi_group(u, {{1, 1}}, 0), std::invalid_argument);
}

TEST(TorsionPhi, StableInRAndEqualToTheLatticeSide) {
  Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const DegenDatum d = random_datum(rng);
    const TraitProfile t = random_transversal_profile(rng, d.branch_count());
    const ComposedPairing f = compose_trait(d, t);
    const Integer det = f.pairing.rows() == 0 ? Integer(1) : determinant(f.pairing);
    for (Prime l : {2, 3}) {
      const GaloisRep rep = build_rep(d, l);
      const unsigned r = level_exceeding(l, det);
      const FinAb at = torsion_phi_group(rep, t, r);
      EXPECT_EQ(at, torsion_phi_group(rep, t, r + 2));
      EXPECT_EQ(at, l_part(component_group(f.pairing), l));
    }
  }
}

TEST(ClosedPoint, ExactGroupMeetsTheBound) {
  Rng rng(43);
  for (int k = 0; k < 100; ++k) {
    const DegenDatum d = random_datum(rng);
    for (Prime l : {2, 3}) {
      const ClosedPointBound b = closed_point_bound(d, l);
      const FinAb exact = closed_point_torsion(build_rep(d, l), 12);
      EXPECT_EQ(exact, b.bound);
    }
  }
}

TEST(Level, SmallestExceedingPower) {
  EXPECT_EQ(level_exceeding(2, 4), 3u);
  EXPECT_EQ(level_exceeding(2, 3), 2u);
  EXPECT_EQ(level_exceeding(3, 1), 1u);
  EXPECT_EQ(level_exceeding(5, -30), 3u);
}
