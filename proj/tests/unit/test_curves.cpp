#include "fixtures.hpp"

#include <degenkit/curves.hpp>
#include <degenkit/neron.hpp>
#include <degenkit/normal_form.hpp>
#include <degenkit/random.hpp>

#include <gtest/gtest.h>

using namespace degenkit;
using namespace testdata;

namespace {

// Signed incidence: column e has -1 at from, +1 at to (loops give 0).
IntMatrix incidence(const DualGraph& g) {
  IntMatrix b = IntMatrix::zero(g.vertex_count(), g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    b(g.edges[e].from, e) -= 1;
    b(g.edges[e].to, e) += 1;
  }
  return b;
}

}  // namespace

TEST(Graphs, TwoLoopsOverTwoBranchesIsToricAdditive) {
  const CurveReport r = curve_equivalences(loops({{{0, 1}}, {{1, 1}}}, 2));
  EXPECT_EQ(r.datum.closed_rank, 2u);
  EXPECT_TRUE(r.verdict.toric_additive);
  EXPECT_TRUE(r.cokernel_torsion_free);
  EXPECT_TRUE(r.l_agree);
  EXPECT_FALSE(r.falsified);
}

TEST(Graphs, SharedNodeIsNotWeaklyToricAdditive) {
  const CurveReport r = curve_equivalences(loops({{{0, 1}, {1, 1}}}, 2));
  EXPECT_EQ(r.datum.closed_rank, 1u);
  EXPECT_FALSE(r.verdict.weakly_toric_additive);
  EXPECT_FALSE(r.verdict.toric_additive);
  EXPECT_TRUE(r.cokernel_torsion_free);  // coker of (1 1)^T is Z; only the rank fails
  EXPECT_TRUE(r.weak_equals_ta);
  EXPECT_FALSE(r.falsified);
  EXPECT_EQ(r.datum.branches[0].pairing, (IntMatrix{{1}}));
}

TEST(Graphs, BananaWithWeights) {
  // Two vertices joined by two edges, weights 2 and 3 on one branch.
  DualGraph g;
  g.branch_count = 1;
  g.genera = {0, 0};
  g.edges = {{0, 1, {{0, 2}}}, {0, 1, {{0, 3}}}};
  const DegenDatum d = graph_to_datum(g);
  EXPECT_EQ(d.closed_rank, 1u);
  EXPECT_EQ(d.branches[0].pairing, (IntMatrix{{5}}));
  EXPECT_TRUE(analyze(d).toric_additive);
}

TEST(Graphs, CompactTypeEdge) {
  DualGraph g;
  g.branch_count = 1;
  g.genera = {1, 1};
  g.edges = {{0, 1, {{0, 1}}}};
  const DegenDatum d = graph_to_datum(g);
  EXPECT_EQ(d.closed_rank, 0u);
  EXPECT_EQ(d.abelian_rank, 2u);
  EXPECT_EQ(d.branches[0].rank, 0u);
  EXPECT_TRUE(analyze(d).toric_additive);
}

TEST(Graphs, Rejections) {
  DualGraph split;
  split.branch_count = 1;
  split.genera = {0, 0};
  split.edges = {{0, 0, {{0, 1}}}};
  EXPECT_THROW(validate_graph(split), InvalidGraph);

  DualGraph bad = loops({{{0, 1}}}, 1);
  bad.edges[0].to = 3;
  EXPECT_THROW(validate_graph(bad), InvalidGraph);
  EXPECT_THROW(validate_graph(loops({{{2, 1}}}, 1)), InvalidGraph);
  EXPECT_THROW(validate_graph(loops({{{0, -1}}}, 1)), InvalidGraph);
  EXPECT_THROW(validate_graph(loops({{}}, 1)), InvalidGraph);
  EXPECT_THROW(validate_graph(loops({}, 1)), InvalidGraph);
  EXPECT_THROW(graph_to_datum(bad), InvalidGraph);
}

TEST(Graphs, RandomCycleBasesAndForms) {
  Rng rng(51);
  for (int k = 0; k < 300; ++k) {
    const DualGraph g = random_graph(rng);
    const CycleBasis c = cycle_basis(g);
    EXPECT_TRUE((incidence(g) * c.cycles).is_zero());
    EXPECT_EQ(c.cycles.cols(), g.edges.size() - g.vertex_count() + 1);
    if (c.cycles.cols() > 0) EXPECT_EQ(rank(c.cycles), c.cycles.cols());
    const DegenDatum d = graph_to_datum(g);
    EXPECT_TRUE(validate(d).empty());
    for (const Branch& b : d.branches)
      if (b.rank > 0) EXPECT_TRUE(is_positive_definite(b.pairing));
    EXPECT_FALSE(curve_equivalences(g).falsified);
  }
}

TEST(Graphs, SubdivisionKeepsTheVerdict) {
  Rng rng(52);
  for (int k = 0; k < 100; ++k) {
    const DualGraph g = random_graph(rng);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      // Split an edge only where every label entry is at least 2.
      std::map<std::size_t, Integer> half;
      bool ok = true;
      for (const auto& [b, m] : g.edges[e].label) {
        if (m == 0) continue;
        if (m < 2) ok = false;
        half[b] = 1;
      }
      if (!ok || half.empty()) continue;
      const DualGraph s = subdivide_edge(g, e, half);
      EXPECT_EQ(s.vertex_count(), g.vertex_count() + 1);
      const Verdict a = analyze(graph_to_datum(g));
      const Verdict b = analyze(graph_to_datum(s));
      EXPECT_EQ(a.toric_additive, b.toric_additive);
      EXPECT_EQ(a.purity_cokernel, b.purity_cokernel);
      EXPECT_EQ(psi_group(graph_to_datum(g)).total, psi_group(graph_to_datum(s)).total);
    }
  }
  EXPECT_THROW(subdivide_edge(loops({{{0, 1}}}, 1), 0, {{0, 1}}), std::invalid_argument);
}
