#include "degenkit/curves.hpp"

#include <algorithm>
#include <numeric>

namespace degenkit {

Integer GraphEdge::multiplicity(std::size_t branch) const {
  auto it = label.find(branch);
  return it == label.end() ? Integer(0) : it->second;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

struct SimpleEdge {
  std::size_t from, to, index;
};

// Fundamental cycles of a multigraph on `nv` vertices, over `total` edge slots.
CycleBasis fundamental_cycles(std::size_t nv, const std::vector<SimpleEdge>& edges, std::size_t total) {
  std::vector<SimpleEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const SimpleEdge& a, const SimpleEdge& b) {
    auto key = [](const SimpleEdge& e) {
      return std::make_tuple(std::min(e.from, e.to), std::max(e.from, e.to), e.index);
    };
    return key(a) < key(b);
  });

  UnionFind uf(nv);
  std::vector<std::vector<std::pair<std::size_t, const SimpleEdge*>>> tree(nv);
  std::vector<const SimpleEdge*> extra;
  for (const auto& e : sorted) {
    if (uf.unite(e.from, e.to)) {
      tree[e.from].push_back({e.to, &e});
      tree[e.to].push_back({e.from, &e});
    } else {
      extra.push_back(&e);
    }
  }

  // Parent pointers by DFS from the smallest vertex of each component.
  std::vector<std::size_t> parent(nv, nv);
  std::vector<const SimpleEdge*> up(nv, nullptr);
  std::vector<bool> seen(nv, false);
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : tree[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        parent[w] = v;
        up[w] = e;
        stack.push_back(w);
      }
    }
  }

  CycleBasis out;
  out.cycles = IntMatrix(total, extra.size());
  for (std::size_t c = 0; c < extra.size(); ++c) {
    const SimpleEdge& e = *extra[c];
    out.non_tree_edges.push_back(e.index);
    out.cycles(e.index, c) += 1;
    // Walk to the root from `to` with sign +1 and from `from` with sign -1;
    // the shared part cancels, leaving the tree path to -> from.
    auto walk = [&](std::size_t v, int sign) {
      while (parent[v] != nv) {
        const SimpleEdge* t = up[v];
        const int dir = t->from == v ? 1 : -1;
        out.cycles(t->index, c) += sign * dir;
        v = parent[v];
      }
    };
    walk(e.to, 1);
    walk(e.from, -1);
  }
  return out;
}

std::vector<SimpleEdge> all_edges(const DualGraph& g) {
  std::vector<SimpleEdge> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) out.push_back({g.edges[i].from, g.edges[i].to, i});
  return out;
}

}  // namespace

void validate_graph(const DualGraph& g) {
  if (g.vertex_count() == 0) throw InvalidGraph("graph has no vertices");
  bool used = false;
  UnionFind uf(g.vertex_count());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const GraphEdge& e = g.edges[i];
    if (e.from >= g.vertex_count() || e.to >= g.vertex_count())
      throw InvalidGraph("edge " + std::to_string(i + 1) + " has an endpoint out of range");
    bool nonzero = false;
    for (const auto& [b, m] : e.label) {
      if (b >= g.branch_count) throw InvalidGraph("edge " + std::to_string(i + 1) + " names an unknown branch");
      if (m < 0) throw InvalidGraph("edge " + std::to_string(i + 1) + " has a negative multiplicity");
      nonzero = nonzero || m > 0;
    }
    if (!nonzero) throw InvalidGraph("edge " + std::to_string(i + 1) + " has an empty label");
    used = true;
    uf.unite(e.from, e.to);
  }
  if (!used) throw InvalidGraph("graph uses no branch");
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (uf.find(v) != 0) throw InvalidGraph("graph is not connected");
}

std::vector<std::size_t> edge_order(const DualGraph& g) {
  std::vector<std::size_t> idx(g.edges.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = g.edges[a];
    const auto& y = g.edges[b];
    return std::make_tuple(std::min(x.from, x.to), std::max(x.from, x.to), a) <
           std::make_tuple(std::min(y.from, y.to), std::max(y.from, y.to), b);
  });
  return idx;
}

CycleBasis cycle_basis(const DualGraph& g) {
  return fundamental_cycles(g.vertex_count(), all_edges(g), g.edges.size());
}

DegenDatum graph_to_datum(const DualGraph& g) {
  validate_graph(g);
  const CycleBasis x = cycle_basis(g);
  const std::size_t ne = g.edges.size();

  DegenDatum d;
  d.name = g.name;
  d.closed_rank = x.cycles.cols();
  d.abelian_rank = std::accumulate(g.genera.begin(), g.genera.end(), std::size_t{0});

  for (std::size_t i = 0; i < g.branch_count; ++i) {
    UnionFind uf(g.vertex_count());
    for (const auto& e : g.edges)
      if (e.multiplicity(i) == 0) uf.unite(e.from, e.to);
    std::vector<std::size_t> comp(g.vertex_count(), 0);
    std::vector<std::size_t> roots;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const std::size_t r = uf.find(v);
      auto it = std::find(roots.begin(), roots.end(), r);
      comp[v] = static_cast<std::size_t>(it - roots.begin());
      if (it == roots.end()) roots.push_back(r);
    }
    std::vector<SimpleEdge> kept;
    for (std::size_t k = 0; k < ne; ++k) {
      const auto& e = g.edges[k];
      if (e.multiplicity(i) > 0) kept.push_back({comp[e.from], comp[e.to], k});
    }
    const CycleBasis xi = fundamental_cycles(roots.size(), kept, ne);

    Branch b;
    b.name = "D" + std::to_string(i + 1);
    b.rank = xi.cycles.cols();
    b.specialization = x.cycles.select_rows(xi.non_tree_edges);
    IntMatrix weights(ne, ne);
    for (std::size_t k = 0; k < ne; ++k) weights(k, k) = g.edges[k].multiplicity(i);
    b.pairing = xi.cycles.transpose() * weights * xi.cycles;
    d.branches.push_back(std::move(b));
  }
  return d;
}

CurveReport curve_equivalences(const DualGraph& g, const std::vector<Prime>& primes) {
  CurveReport r;
  r.datum = graph_to_datum(g);
  require_valid(r.datum);
  r.verdict = analyze(r.datum);
  r.cokernel_torsion_free = r.verdict.purity_cokernel.torsion.is_trivial();
  r.weak_equals_ta = r.verdict.weakly_toric_additive == r.verdict.toric_additive;
  r.l_agree = true;
  for (Prime l : primes) {
    const bool lta = is_l_toric_additive(r.datum, l);
    r.l_verdicts.push_back({l, lta});
    r.l_agree = r.l_agree && lta == r.verdict.toric_additive;
  }
  r.falsified = !(r.cokernel_torsion_free && r.weak_equals_ta && r.l_agree);
  if (!r.cokernel_torsion_free) r.detail = "purity cokernel has torsion";
  else if (!r.weak_equals_ta) r.detail = "weak toric additivity differs from toric additivity";
  else if (!r.l_agree) r.detail = "an l-adic verdict differs from toric additivity";
  return r;
}

DualGraph subdivide_edge(const DualGraph& g, std::size_t edge, const std::map<std::size_t, Integer>& first) {
  if (edge >= g.edges.size()) throw std::out_of_range("subdivide_edge: no such edge");
  const GraphEdge& e = g.edges[edge];
  GraphEdge a{e.from, g.vertex_count(), {}};
  GraphEdge b{g.vertex_count(), e.to, {}};
  bool a_nonzero = false, b_nonzero = false;
  for (std::size_t br = 0; br < g.branch_count; ++br) {
    const Integer total = e.multiplicity(br);
    auto it = first.find(br);
    const Integer x = it == first.end() ? Integer(0) : it->second;
    if (x < 0 || x > total) throw std::invalid_argument("subdivide_edge: split does not fit the label");
    if (x > 0) a.label[br] = x, a_nonzero = true;
    if (total - x > 0) b.label[br] = total - x, b_nonzero = true;
  }
  if (!a_nonzero || !b_nonzero) throw std::invalid_argument("subdivide_edge: both halves need a nonzero label");
  DualGraph out = g;
  out.genera.push_back(0);
  out.edges[edge] = a;
  out.edges.push_back(b);
  return out;
}

}  // namespace degenkit
