#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rov/path.hpp"
#include "rov/topology.hpp"

namespace rov {

struct EmptyGraph : std::runtime_error {
  EmptyGraph() : std::runtime_error("metrics on empty graph") {}
};

enum class EdgeKind { Direct, Indirect };

inline const char* to_string(EdgeKind k) {
  return k == EdgeKind::Direct ? "direct" : "indirect";
}

// Edge identity: unordered AS pair plus kind; Indirect edges also carry the
// IXP they cross. The same AS pair may hold both a direct and an indirect
// edge.
using EdgeKey = std::tuple<Asn, Asn, EdgeKind, int>;

struct EdgeInfo {
  int valid_paths = 0;
  int invalid_paths = 0;
};

// Undirected graph of AS adjacencies observed on data-plane paths. IXPs are
// never vertices; they only tag indirect edges.
struct PathGraph {
  std::set<Asn> vertices;
  std::map<EdgeKey, EdgeInfo> edges;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }

  std::map<Asn, std::set<Asn>> adjacency() const {
    std::map<Asn, std::set<Asn>> adj;
    for (Asn v : vertices) adj[v];
    for (const auto& [key, info] : edges) {
      adj[std::get<0>(key)].insert(std::get<1>(key));
      adj[std::get<1>(key)].insert(std::get<0>(key));
    }
    return adj;
  }
};

// Direct edges from consecutive AS hops; indirect edges between AS hops
// separated only by one IXP's LAN hops. Counters accrue the path verdicts.
inline PathGraph build_g1(const std::vector<MeasuredPath>& paths) {
  PathGraph g;
  for (const MeasuredPath& p : paths) {
    if (p.plane != Plane::Data) continue;
    for (const Hop& h : p.hops)
      if (h.is_as()) g.vertices.insert(h.asn());

    const auto& hops = p.hops;
    std::size_t i = 0;
    while (i < hops.size()) {
      if (!hops[i].is_as()) {
        ++i;
        continue;
      }
      // look ahead for the next AS hop across an optional IXP run
      std::size_t j = i + 1;
      std::optional<int> via_ixp;
      bool broken = false;
      while (j < hops.size() && !hops[j].is_as()) {
        if (hops[j].is_ixp() && (!via_ixp || *via_ixp == hops[j].ixp_id())) {
          via_ixp = hops[j].ixp_id();
        } else {
          broken = true;  // non-value or a second IXP: no adjacency
        }
        ++j;
      }
      if (j >= hops.size() || broken) {
        i = j;
        continue;
      }
      Asn u = hops[i].asn();
      Asn v = hops[j].asn();
      if (u != v) {
        EdgeKey key{std::min(u, v), std::max(u, v),
                    via_ixp ? EdgeKind::Indirect : EdgeKind::Direct,
                    via_ixp.value_or(0)};
        EdgeInfo& e = g.edges[key];
        if (p.verdict == Verdict::Valid) ++e.valid_paths;
        if (p.verdict == Verdict::Invalid) ++e.invalid_paths;
      }
      i = j;
    }
  }
  return g;
}

// Invalid updates cannot cross an enforcing AS: drop every edge incident to
// one. The vertex set is unchanged.
inline PathGraph derive_g2(const PathGraph& g1, const std::set<Asn>& enforcing) {
  PathGraph g;
  g.vertices = g1.vertices;
  for (const auto& [key, info] : g1.edges) {
    if (enforcing.count(std::get<0>(key)) || enforcing.count(std::get<1>(key)))
      continue;
    g.edges.emplace(key, info);
  }
  return g;
}

// Indirect edges that never carried an invalid path are approximated as
// routeserver connections and removed; direct edges always remain.
inline PathGraph derive_g3(const PathGraph& g1) {
  PathGraph g;
  g.vertices = g1.vertices;
  for (const auto& [key, info] : g1.edges) {
    if (std::get<2>(key) == EdgeKind::Indirect && info.invalid_paths == 0)
      continue;
    g.edges.emplace(key, info);
  }
  return g;
}

struct GraphMetrics {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t component_count = 0;
  std::size_t largest_component = 0;
  double avg_node_degree = 0.0;        // edges / vertices
  double avg_node_degree_2e = 0.0;     // 2 * edges / vertices
  double avg_algebraic_connectivity = 0.0;
  double avg_shortest_path_length = 0.0;
  double avg_longest_path_length = 0.0;
};

namespace detail {

inline double fiedler_value(const std::vector<int>& component,
                            const std::map<Asn, std::set<Asn>>& adj,
                            const std::vector<Asn>& index_to_asn,
                            const std::map<Asn, int>& asn_to_index) {
  int n = static_cast<int>(component.size());
  std::map<int, int> local;
  for (int k = 0; k < n; ++k) local[component[k]] = k;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    Asn u = index_to_asn[component[k]];
    for (Asn v : adj.at(u)) {
      int gi = asn_to_index.at(v);
      auto it = local.find(gi);
      if (it == local.end()) continue;
      lap(k, it->second) = -1.0;
      lap(k, k) += 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1);
}

}  // namespace detail

// Full metric vector: connectivity search counting singletons, degree as
// E/V, pooled-ordered-pair mean shortest path, mean eccentricity within
// components (isolated vertices contribute 0), mean Fiedler value over
// components with at least two vertices.
inline GraphMetrics metrics(const PathGraph& g) {
  if (g.vertices.empty()) throw EmptyGraph();

  GraphMetrics m;
  m.vertex_count = g.vertex_count();
  m.edge_count = g.edge_count();
  m.avg_node_degree =
      static_cast<double>(m.edge_count) / static_cast<double>(m.vertex_count);
  m.avg_node_degree_2e = 2.0 * m.avg_node_degree;

  auto adj = g.adjacency();
  std::vector<Asn> index_to_asn(g.vertices.begin(), g.vertices.end());
  std::map<Asn, int> asn_to_index;
  for (int i = 0; i < static_cast<int>(index_to_asn.size()); ++i)
    asn_to_index[index_to_asn[i]] = i;
  int n = static_cast<int>(index_to_asn.size());

  // components
  std::vector<int> component_of(n, -1);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (component_of[s] >= 0) continue;
    int cid = static_cast<int>(components.size());
    components.emplace_back();
    std::deque<int> queue{s};
    component_of[s] = cid;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      components[cid].push_back(u);
      for (Asn vn : adj.at(index_to_asn[u])) {
        int v = asn_to_index.at(vn);
        if (component_of[v] < 0) {
          component_of[v] = cid;
          queue.push_back(v);
        }
      }
    }
  }
  m.component_count = components.size();
  for (const auto& c : components)
    m.largest_component = std::max(m.largest_component, c.size());

  // BFS from every vertex: pooled shortest-path sum and eccentricities
  double distance_sum = 0.0;
  std::uint64_t pair_count = 0;
  double eccentricity_sum = 0.0;
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    std::deque<int> queue{s};
    int ecc = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      ecc = std::max(ecc, dist[u]);
      for (Asn vn : adj.at(index_to_asn[u])) {
        int v = asn_to_index.at(vn);
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (t != s && dist[t] > 0) {
        distance_sum += dist[t];
        ++pair_count;
      }
    }
    eccentricity_sum += ecc;
  }
  m.avg_shortest_path_length = pair_count ? distance_sum / static_cast<double>(pair_count) : 0.0;
  m.avg_longest_path_length = eccentricity_sum / static_cast<double>(n);

  double fiedler_sum = 0.0;
  int fiedler_n = 0;
  for (const auto& c : components) {
    if (c.size() < 2) continue;
    fiedler_sum += detail::fiedler_value(c, adj, index_to_asn, asn_to_index);
    ++fiedler_n;
  }
  m.avg_algebraic_connectivity = fiedler_n ? fiedler_sum / fiedler_n : 0.0;
  return m;
}

// Minimal hop count from every vertex to the nearest tree root (Tier-1);
// unreachable vertices are absent from the result.
inline std::map<Asn, int> tree_depth(const std::map<Asn, std::set<Asn>>& adj,
                                     const std::set<Asn>& tier1) {
  if (tier1.empty()) throw std::invalid_argument("tier1 set is empty");
  std::map<Asn, int> depth;
  std::deque<Asn> queue;
  for (Asn root : tier1) {
    if (!adj.count(root)) continue;
    depth[root] = 0;
    queue.push_back(root);
  }
  while (!queue.empty()) {
    Asn u = queue.front();
    queue.pop_front();
    for (Asn v : adj.at(u)) {
      if (depth.count(v)) continue;
      depth[v] = depth[u] + 1;
      queue.push_back(v);
    }
  }
  return depth;
}

}  // namespace rov
