// Degeneration data of jacobians read off labelled dual graphs.
#pragma once

#include "degenkit/degeneration.hpp"

#include <map>
#include <string>
#include <vector>

namespace degenkit {

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// branch index (0-based) -> multiplicity; absent entries are zero.
  std::map<std::size_t, Integer> label;

  Integer multiplicity(std::size_t branch) const;
};

struct DualGraph {
  std::string name;
  std::size_t branch_count = 0;
  std::vector<std::size_t> genera;
  std::vector<GraphEdge> edges;

  std::size_t vertex_count() const { return genera.size(); }
};

class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidGraph on a disconnected graph, a bad endpoint, a negative
/// or empty label, or when no branch is used.
void validate_graph(const DualGraph& graph);

/// Edge indices sorted by (min endpoint, max endpoint, index); spanning trees
/// and cycle bases are built in this order.
std::vector<std::size_t> edge_order(const DualGraph& graph);

/// Fundamental cycles (one column per non-tree edge) as vectors over the
/// edges; an edge is traversed from `from` to `to`.
struct CycleBasis {
  IntMatrix cycles;
  std::vector<std::size_t> non_tree_edges;
};
CycleBasis cycle_basis(const DualGraph& graph);

/// X = H_1(graph), X_i = H_1 of the graph with the edges of multiplicity 0 at
/// branch i contracted, phi_i the weighted intersection form. Genera only
/// feed the abelian rank. Principally polarized.
DegenDatum graph_to_datum(const DualGraph& graph);

struct CurveReport {
  DegenDatum datum;
  Verdict verdict;
  bool cokernel_torsion_free = false;
  bool weak_equals_ta = false;
  /// (l, l-toric additive) for the tested primes.
  std::vector<std::pair<Prime, bool>> l_verdicts;
  bool l_agree = false;
  bool falsified = false;
  std::string detail;
};

CurveReport curve_equivalences(const DualGraph& graph, const std::vector<Prime>& primes = {2, 3, 5});

/// Inserts a genus-0 vertex on `edge`; the two halves carry `first` and
/// label - `first`, both nonzero, so every weighted form is unchanged.
DualGraph subdivide_edge(const DualGraph& graph, std::size_t edge, const std::map<std::size_t, Integer>& first);

}  // namespace degenkit
