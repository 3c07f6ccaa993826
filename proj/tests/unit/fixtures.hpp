// Hand-built data shared by the unit tests.
#pragma once

#include <degenkit/curves.hpp>
#include <degenkit/degeneration.hpp>

namespace testdata {

using namespace degenkit;

inline Branch branch(IntMatrix sp, IntMatrix phi) {
  Branch b;
  b.rank = sp.rows();
  b.specialization = std::move(sp);
  b.pairing = std::move(phi);
  return b;
}

inline DegenDatum datum(std::size_t mu, std::vector<Branch> branches, Prime p = 0) {
  DegenDatum d;
  d.closed_rank = mu;
  d.residue_char = p;
  d.branches = std::move(branches);
  for (std::size_t i = 0; i < d.branches.size(); ++i) d.branches[i].name = "D" + std::to_string(i + 1);
  return d;
}

/// X = Z^2, sp_1 = (2 1), sp_2 = (0 1), phi_1 = phi_2 = (1).
inline DegenDatum uniformization() {
  return datum(2, {branch({{2, 1}}, {{1}}), branch({{0, 1}}, {{1}})});
}

inline DegenDatum tate_u1u2() { return datum(1, {branch({{1}}, {{1}}), branch({{1}}, {{1}})}); }

inline DegenDatum product_tate() { return datum(2, {branch({{1, 0}}, {{1}}), branch({{0, 1}}, {{1}})}); }

inline DegenDatum diag_2_3() { return datum(2, {branch({{1, 0}}, {{2}}), branch({{0, 1}}, {{3}})}); }

inline DualGraph loops(std::vector<std::map<std::size_t, Integer>> labels, std::size_t branches) {
  DualGraph g;
  g.branch_count = branches;
  g.genera = {0};
  for (auto& l : labels) g.edges.push_back({0, 0, std::move(l)});
  return g;
}

}  // namespace testdata
