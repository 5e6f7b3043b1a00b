// Acceptance gate: one line per criterion, nonzero exit if any gating
// criterion fails. Criterion 9 (external dataset comparison) only runs when
// a dataset directory is supplied and never gates.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rov/classify.hpp"
#include "rov/correlate.hpp"
#include "rov/ingest.hpp"
#include "rov/ixp.hpp"
#include "rov/propgraph.hpp"
#include "rov/scenario.hpp"
#include "rov/simulate.hpp"

using namespace rov;

namespace {

std::string g_detail;

// ---------------------------------------------------------------------- 1
// Similarity sets must match the published listings element for element.
bool criterion1() {
  using T = std::set<std::pair<int, int>>;
  const T high = {{1, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5},
                  {3, 6}, {3, 7}, {4, 5}, {4, 6}, {4, 7}};
  const T medium = {{1, 3}, {2, 6}, {2, 7}, {3, 3},
                    {3, 4}, {3, 5}, {4, 3}, {4, 4}};
  const T low = {{1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 1},
                 {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
  if (high_similarity_tuples() != high) return false;
  if (medium_similarity_tuples() != medium) return false;
  if (low_similarity_tuples() != low) return false;
  try {
    check_similarity_partition();
  } catch (const std::exception& e) {
    g_detail = e.what();
    return false;
  }
  for (const auto& [cp, dp] : high)
    if (similarity(cp, dp) != Similarity::High) return false;
  for (const auto& [cp, dp] : medium)
    if (similarity(cp, dp) != Similarity::Medium) return false;
  for (const auto& [cp, dp] : low)
    if (similarity(cp, dp) != Similarity::Low) return false;
  return true;
}

// ---------------------------------------------------------------------- 2
// The reference degree column only fits the E/V convention (2E/V fits no
// row): 3810/2156 = 1.77 and 3173/2156 = 1.47 exactly. The middle reference
// value is inconsistent with its own counts — 1974/2156 = 0.92, quoted as
// 0.90 — so that cell is asserted against exact arithmetic and the
// discrepancy is reported rather than replicated.
bool criterion2() {
  struct Row {
    std::size_t v, e;
    double reference;  // NaN where the quoted value contradicts E and V
  };
  const double nan = std::nan("");
  const std::vector<Row> rows = {
      {2156, 3810, 1.77}, {2156, 1974, nan}, {2156, 3173, 1.47}};
  std::mt19937_64 rng(99);
  for (const Row& row : rows) {
    PathGraph g;
    for (Asn v = 1; v <= row.v; ++v) g.vertices.insert(v);
    while (g.edges.size() < row.e) {
      Asn a = 1 + static_cast<Asn>(rng() % row.v);
      Asn b = 1 + static_cast<Asn>(rng() % row.v);
      if (a == b) continue;
      g.edges[{std::min(a, b), std::max(a, b), EdgeKind::Direct, 0}] = {};
    }
    GraphMetrics m = metrics(g);
    if (m.avg_node_degree !=
        static_cast<double>(row.e) / static_cast<double>(row.v)) {
      g_detail = "degree is not E/V for E=" + std::to_string(row.e);
      return false;
    }
    double rounded = std::round(m.avg_node_degree * 100.0) / 100.0;
    double expect = std::isnan(row.reference)
                        ? std::round(100.0 * row.e / row.v) / 100.0
                        : row.reference;
    if (std::abs(rounded - expect) > 1e-9) {
      g_detail = "V=" + std::to_string(row.v) + " E=" + std::to_string(row.e) +
                 " degree=" + std::to_string(m.avg_node_degree);
      return false;
    }
  }
  g_detail = "1.77 and 1.47 reproduced; reference value 0.90 is inconsistent "
             "with its own counts (1974/2156 = 0.92)";
  return true;
}

// shared helper: mapping tables straight from a topology
IpMappingDb db_for(const Topology& topo) {
  IpMappingDb db;
  for (const auto& [asn, node] : topo.nodes) {
    for (std::uint32_t ip : node.router_ips) db.add_as_prefix(Prefix(ip, 32), asn);
    if (node.kind == AsKind::Ixp)
      db.add_lan(*node.peering_lan, static_cast<int>(asn));
  }
  return db;
}

ClassificationResult classify_scenario(const Scenario& sc,
                                       const ExperimentArtifacts& art,
                                       std::vector<MeasuredPath>* data_out = nullptr) {
  IpMappingDb db = db_for(sc.topo);
  std::map<char, std::vector<Vrp>> vrps = {{'A', art.vrps[0]},
                                           {'B', art.vrps[1]}};
  auto data = preprocess_traceroutes(art.traceroutes, db,
                                     {sc.exp.origin_a, sc.exp.origin_b}, vrps);
  if (data_out) *data_out = data;
  return classify_all(data, art.control_paths, sc.exp.p1, sc.exp.p2);
}

// ---------------------------------------------------------------------- 3
// Built-in 5-node fixture, all four sub-scenarios plus final categories.
bool criterion3() {
  ExperimentSpec exp = canonical_experiment();

  // (a, b): no enforcement
  {
    Scenario sc = demo_scenario(false);
    Converged a = converge(sc.topo, sc.exp, 'A');
    const auto& as2_p1 = a.rib.at(2)[0];
    if (!as2_p1 || as2_p1->verdict != Verdict::Valid ||
        as2_p1->origin != exp.origin_a) {
      g_detail = "(a) AS2 lacks the valid p1 route";
      return false;
    }
    // (b) the shorter invalid p2 announcement captures AS1 and AS2
    for (Asn victim : {1u, 2u}) {
      const auto& r = a.rib.at(victim)[1];
      if (!r || r->verdict != Verdict::Invalid || r->origin != exp.origin_a) {
        g_detail = "(b) AS" + std::to_string(victim) + " not captured";
        return false;
      }
    }
  }

  // (c, d): AS2 strict protects both prefixes in both configurations
  Scenario sc = demo_scenario(true);
  for (char cfg : {'A', 'B'}) {
    Converged st = converge(sc.topo, sc.exp, cfg);
    for (Asn asn : {1u, 2u})
      for (int pi = 0; pi < 2; ++pi) {
        const auto& r = st.rib.at(asn)[pi];
        if (!r || r->verdict != Verdict::Valid) {
          g_detail = "(c/d) AS" + std::to_string(asn) + " unprotected";
          return false;
        }
      }
  }

  // end to end: divergence point and categories
  ExperimentArtifacts art = run_experiment(sc.topo, sc.exp, {}, 7);
  auto cls = classify_scenario(sc, art);
  if (cls.divergences.size() != 2) {
    g_detail = "expected one divergence per configuration";
    return false;
  }
  for (const auto& d : cls.divergences)
    if (d.divergence_asn != 2) {
      g_detail = "divergence point is not AS2";
      return false;
    }
  int c2 = cls.data_categories.at(2);
  if (c2 != 6 && c2 != 7) {
    g_detail = "AS2 in C" + std::to_string(c2);
    return false;
  }
  if (cls.data_categories.at(1) != 5) {
    g_detail = "AS1 in C" + std::to_string(cls.data_categories.at(1));
    return false;
  }
  if (cls.data_categories.at(3) != 4) {
    g_detail = "AS3 in C" + std::to_string(cls.data_categories.at(3));
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------- 4
// Independent oracle: union-find components, Floyd-Warshall distances,
// full-spectrum eigensolve per component.
struct OracleMetrics {
  std::size_t components = 0;
  std::size_t largest = 0;
  double degree = 0;
  double shortest = 0;
  double longest = 0;
  double fiedler = 0;
};

OracleMetrics oracle_metrics(const PathGraph& g) {
  std::vector<Asn> verts(g.vertices.begin(), g.vertices.end());
  int n = static_cast<int>(verts.size());
  std::map<Asn, int> idx;
  for (int i = 0; i < n; ++i) idx[verts[i]] = i;

  const int INF = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [key, info] : g.edges) {
    int a = idx.at(std::get<0>(key)), b = idx.at(std::get<1>(key));
    d[a][b] = d[b][a] = 1;
    parent[find(a)] = find(b);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];

  OracleMetrics m;
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
  m.components = comps.size();
  for (const auto& [root, members] : comps)
    m.largest = std::max(m.largest, members.size());
  m.degree = static_cast<double>(g.edges.size()) / n;

  long long dist_sum = 0, pairs = 0, ecc_sum = 0;
  for (int i = 0; i < n; ++i) {
    int ecc = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j || d[i][j] >= INF) continue;
      dist_sum += d[i][j];
      ++pairs;
      ecc = std::max(ecc, d[i][j]);
    }
    ecc_sum += ecc;
  }
  m.shortest = pairs ? static_cast<double>(dist_sum) / pairs : 0.0;
  m.longest = static_cast<double>(ecc_sum) / n;

  double fsum = 0;
  int fn = 0;
  for (const auto& [root, members] : comps) {
    int k = static_cast<int>(members.size());
    if (k < 2) continue;
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b && d[members[a]][members[b]] == 1) adj(a, b) = 1.0;
    Eigen::MatrixXd lap = -adj;
    for (int a = 0; a < k; ++a) lap(a, a) = adj.row(a).sum();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    std::vector<double> eig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + k);
    std::sort(eig.begin(), eig.end());
    fsum += eig[1];
    ++fn;
  }
  m.fiedler = fn ? fsum / fn : 0.0;
  return m;
}

bool criterion4() {
  std::mt19937_64 rng(2024);
  auto uniform = [&]() { return detail::next_double(rng); };
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 63);
    double density = 0.02 + uniform() * 0.28;
    PathGraph g;
    for (Asn v = 1; v <= static_cast<Asn>(n); ++v) g.vertices.insert(v);
    for (Asn a = 1; a <= static_cast<Asn>(n); ++a)
      for (Asn b = a + 1; b <= static_cast<Asn>(n); ++b)
        if (uniform() < density)
          g.edges[{a, b, EdgeKind::Direct, 0}] = {};

    GraphMetrics got = metrics(g);
    OracleMetrics want = oracle_metrics(g);
    auto fail = [&](const std::string& what) {
      g_detail = "trial " + std::to_string(trial) + ": " + what;
      return false;
    };
    if (got.component_count != want.components) return fail("components");
    if (got.largest_component != want.largest) return fail("largest");
    if (got.avg_node_degree != want.degree) return fail("degree");
    if (got.avg_shortest_path_length != want.shortest) return fail("shortest");
    if (got.avg_longest_path_length != want.longest) return fail("longest");
    if (std::abs(got.avg_algebraic_connectivity - want.fiedler) > 1e-6)
      return fail("fiedler");
  }
  return true;
}

// ---------------------------------------------------------------------- 5
// Exhaustive validation oracle over two /20 blocks, lengths 20-28.
bool criterion5() {
  const Prefix block1 = *Prefix::parse("45.155.128.0/20");
  const Prefix block2 = *Prefix::parse("100.64.16.0/20");
  const std::vector<Vrp> vrps = {
      Vrp(*Prefix::parse("45.155.128.0/22"), 24, 212795),
      Vrp(*Prefix::parse("45.155.132.0/22"), 22, 208162),
      Vrp(*Prefix::parse("45.155.136.0/21"), 28, 212795),
      Vrp(*Prefix::parse("100.64.16.0/20"), 21, 64500),
      Vrp(*Prefix::parse("100.64.24.0/21"), 24, 64501),
  };
  const std::vector<Asn> origins = {212795, 208162, 64500, 64501};

  for (const Prefix& block : {block1, block2}) {
    for (int len = 20; len <= 28; ++len) {
      std::uint32_t step = 1u << (32 - len);
      for (std::uint32_t base = block.base;
           block.contains(base);
           base += step) {
        Prefix announced(base, static_cast<std::uint8_t>(len));
        for (Asn origin : origins) {
          // bit-level oracle
          bool covered = false, matched = false;
          for (const Vrp& v : vrps) {
            bool cov = announced.length >= v.prefix.length;
            for (int b = 0; cov && b < v.prefix.length; ++b) {
              std::uint32_t bit = 0x80000000u >> b;
              if ((announced.base & bit) != (v.prefix.base & bit)) cov = false;
            }
            if (!cov) continue;
            covered = true;
            if (v.origin == origin && announced.length <= v.max_length)
              matched = true;
          }
          Verdict want = matched ? Verdict::Valid
                                 : covered ? Verdict::Invalid : Verdict::Unknown;
          if (validate(announced, origin, vrps) != want) {
            g_detail = announced.str() + " origin " + std::to_string(origin);
            return false;
          }
        }
        if (base + step <= base) break;  // wrap guard
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------- 6
// Ground-truth recovery over 20 seeded 500-AS topologies.
bool criterion6() {
  int precondition_total = 0, precondition_enforcing = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenerateParams params;
    params.node_count = 500;
    params.tier1_count = 5;
    params.strict_fraction = 0.20;
    params.depreference_fraction = 0.10;
    params.probe_fraction = 0.30;
    params.ixp_count = 2;
    Scenario sc = generate_scenario(params, seed);
    ExperimentArtifacts art = run_experiment(sc.topo, sc.exp, {}, seed);
    ClassificationResult cls = classify_scenario(sc, art);

    for (const auto& [asn, cat] : cls.data_categories) {
      RovPolicy truth = art.ground_truth.at(asn);
      // (i) a strict AS never shows invalid evidence
      if (truth == RovPolicy::Strict && cat >= 1 && cat <= 3) {
        g_detail = "seed " + std::to_string(seed) + ": strict AS" +
                   std::to_string(asn) + " in C" + std::to_string(cat);
        return false;
      }
      // (iii) invalid evidence always lands in C1-C3
      const AsEvidence& e = cls.data_evidence.at(asn);
      if (e.invalid_paths >= 1 && (cat < 1 || cat > 3)) {
        g_detail = "seed " + std::to_string(seed) + ": AS" +
                   std::to_string(asn) + " on invalid paths in C" +
                   std::to_string(cat);
        return false;
      }
      // (ii) tally strict ASes meeting the C6 visibility precondition:
      // valid-path visibility in each configuration plus >=1 divergence
      if (truth == RovPolicy::Strict && e.seen_in_each_configuration() &&
          e.total_divergences() >= 1) {
        ++precondition_total;
        if (cat == 6 || cat == 7) ++precondition_enforcing;
      }
    }
  }
  if (precondition_total == 0) {
    g_detail = "no strict AS ever met the C6 precondition";
    return false;
  }
  double rate = static_cast<double>(precondition_enforcing) / precondition_total;
  g_detail = std::to_string(precondition_enforcing) + "/" +
             std::to_string(precondition_total) + " preconditioned strict ASes in C6/C7";
  return rate >= 0.90;
}

// ---------------------------------------------------------------------- 7
// IXP leakage across a strict IXP with mixed session kinds.
bool criterion7() {
  ExperimentSpec exp = canonical_experiment();

  auto build = [&](bool with_direct) {
    Topology topo;
    auto add = [&](Asn asn, AsKind kind, RovPolicy pol) {
      AsNode n;
      n.asn = asn;
      n.kind = kind;
      n.policy = pol;
      if (kind == AsKind::Ixp)
        n.peering_lan = Prefix(0xC3010100u, 24);
      else
        n.router_ips = {0x3C000000u + asn};
      topo.nodes[asn] = n;
    };
    add(900, AsKind::Ixp, RovPolicy::Strict);
    add(10, AsKind::Isp, RovPolicy::None);   // hears via routeserver
    add(20, AsKind::Isp, RovPolicy::None);
    add(11, AsKind::Isp, RovPolicy::None);   // hears via bilateral session
    add(21, AsKind::Isp, RovPolicy::None);
    add(exp.origin_a, AsKind::Stub, RovPolicy::None);
    add(exp.origin_b, AsKind::Stub, RovPolicy::None);
    topo.nodes[10].hosts_probe = true;
    topo.nodes[11].hosts_probe = true;
    auto cust = [&](Asn c, Asn p) {
      topo.sessions.push_back({c, p, Relationship::CustomerToProvider, {}, IxpSessionKind::Direct});
    };
    cust(exp.origin_a, 20);
    cust(exp.origin_b, 20);
    cust(exp.origin_a, 21);
    cust(exp.origin_b, 21);
    topo.sessions.push_back({10, 20, Relationship::PeerToPeer, 900, IxpSessionKind::Routeserver});
    // the second member pair peers bilaterally or, in the control fixture,
    // through the routeserver as well
    topo.sessions.push_back({11, 21, Relationship::PeerToPeer, 900,
                             with_direct ? IxpSessionKind::Direct
                                         : IxpSessionKind::Routeserver});
    return topo;
  };

  auto leaked_pairs = [&](const Topology& topo, PeeringMap* peerings_out) {
    ExperimentArtifacts art = run_experiment(topo, exp, {}, 13);
    IpMappingDb db = db_for(topo);
    std::map<char, std::vector<Vrp>> vrps = {{'A', art.vrps[0]},
                                             {'B', art.vrps[1]}};
    auto data = preprocess_traceroutes(art.traceroutes, db,
                                       {exp.origin_a, exp.origin_b}, vrps);
    std::set<std::pair<Asn, Asn>> leaks;
    for (const MeasuredPath& p : data) {
      if (p.verdict != Verdict::Invalid) continue;
      for (std::size_t i = 0; i + 2 < p.hops.size() + 0u; ++i)
        if (p.hops[i].is_as() && p.hops[i + 1].is_ixp() &&
            p.hops[i + 2].is_as())
          leaks.insert({std::min(p.hops[i].asn(), p.hops[i + 2].asn()),
                        std::max(p.hops[i].asn(), p.hops[i + 2].asn())});
    }
    if (peerings_out) *peerings_out = extract_peerings(data);
    return leaks;
  };

  PeeringMap peerings;
  auto leaks = leaked_pairs(build(true), &peerings);
  if (leaks != std::set<std::pair<Asn, Asn>>{{11, 21}}) {
    g_detail = "invalid paths crossed the wrong sessions (" +
               std::to_string(leaks.size()) + " leaking pairs)";
    return false;
  }
  // inference must recover both session kinds
  auto rs = peerings.find({900, 10, 20});
  auto direct = peerings.find({900, 11, 21});
  if (rs == peerings.end() ||
      rs->second.inferred_kind() != IxpSessionKind::Routeserver) {
    g_detail = "routeserver peering not inferred as routeserver";
    return false;
  }
  if (direct == peerings.end() ||
      direct->second.inferred_kind() != IxpSessionKind::Direct) {
    g_detail = "direct peering not inferred as direct";
    return false;
  }
  // without any bilateral session nothing invalid crosses the fabric
  if (!leaked_pairs(build(false), nullptr).empty()) {
    g_detail = "invalid path crossed a routeserver-only fabric";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------- 8
// Zero-noise round trip: ingest recovers every forwarding AS path exactly;
// map_and_condense is idempotent.
bool criterion8() {
  for (std::uint64_t seed = 31; seed <= 40; ++seed) {
    GenerateParams params;
    params.node_count = 120;
    params.strict_fraction = 0.15;
    params.depreference_fraction = 0.05;
    params.probe_fraction = 0.40;
    params.ixp_count = 2;
    Scenario sc = generate_scenario(params, seed);

    std::map<std::pair<char, int>, Converged> states;
    for (char cfg : {'A', 'B'})
      states.emplace(std::make_pair(cfg, 0), converge(sc.topo, sc.exp, cfg));

    ExperimentArtifacts art = run_experiment(sc.topo, sc.exp, {}, seed);
    IpMappingDb db = db_for(sc.topo);
    std::map<char, std::vector<Vrp>> vrps = {{'A', art.vrps[0]},
                                             {'B', art.vrps[1]}};
    auto data = preprocess_traceroutes(art.traceroutes, db,
                                       {sc.exp.origin_a, sc.exp.origin_b}, vrps);

    std::size_t expected_paths = 0;
    for (const auto& [asn, node] : sc.topo.nodes)
      if (node.hosts_probe) expected_paths += 4;
    if (data.size() != expected_paths) {
      g_detail = "seed " + std::to_string(seed) + ": " +
                 std::to_string(data.size()) + " paths, expected " +
                 std::to_string(expected_paths);
      return false;
    }
    for (const MeasuredPath& p : data) {
      Asn probe = static_cast<Asn>(std::stoul(p.source_id.substr(2)));
      int pi = p.prefix == sc.exp.p1 ? 0 : 1;
      auto chain =
          forwarding_chain(states.at({p.configuration, 0}), probe, pi);
      if (p.as_sequence() != chain) {
        g_detail = "seed " + std::to_string(seed) + ": path mismatch for " +
                   p.source_id;
        return false;
      }
    }
  }

  // idempotence on random hop lists
  IpMappingDb db;
  db.add_as_prefix(*Prefix::parse("60.1.0.0/16"), 100);
  db.add_as_prefix(*Prefix::parse("60.2.0.0/16"), 200);
  db.add_as_prefix(*Prefix::parse("60.3.0.0/16"), 300);
  db.add_lan(*Prefix::parse("195.1.1.0/24"), 42);
  std::mt19937_64 rng(77);
  std::vector<std::optional<std::uint32_t>> pool = {
      std::nullopt,
      parse_ipv4("60.1.0.1"), parse_ipv4("60.1.0.2"), parse_ipv4("60.2.0.1"),
      parse_ipv4("60.3.0.9"), parse_ipv4("195.1.1.5"), parse_ipv4("8.8.8.8"),
      parse_ipv4("10.0.0.1")};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::optional<std::uint32_t>> raw;
    int n = static_cast<int>(rng() % 14);
    for (int i = 0; i < n; ++i) raw.push_back(pool[rng() % pool.size()]);
    auto once = map_and_condense(raw, db);
    std::vector<std::optional<std::uint32_t>> rebuilt;
    for (const Hop& h : once) {
      if (h.is_as())
        for (std::uint32_t ip : h.ips) rebuilt.push_back(ip);
      else if (h.is_ixp())
        rebuilt.push_back(parse_ipv4("195.1.1.5"));
      else
        rebuilt.push_back(std::nullopt);
    }
    auto twice = map_and_condense(rebuilt, db);
    bool same = twice.size() == once.size();
    for (std::size_t i = 0; same && i < once.size(); ++i)
      same = twice[i].id == once[i].id && twice[i].ips == once[i].ips;
    if (!same) {
      g_detail = "condense not idempotent on trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int number;
    const char* name;
    bool (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "similarity-set fidelity", criterion1},
      {2, "degree-convention reproduction", criterion2},
      {3, "five-node fixture end-to-end", criterion3},
      {4, "graph-metric oracle", criterion4},
      {5, "rov-validation oracle", criterion5},
      {6, "ground-truth recovery", criterion6},
      {7, "ixp leakage property", criterion7},
      {8, "preprocessing round trip", criterion8},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    g_detail.clear();
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      g_detail = e.what();
    }
    std::printf("criterion %d (%s): %s%s%s\n", c.number, c.name,
                ok ? "PASS" : "FAIL", g_detail.empty() ? "" : " - ",
                g_detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("criterion 9 (external-data check): SKIPPED - non-gating, "
              "requires the published dataset; see README\n");
  (void)argc;
  (void)argv;
  return failures == 0 ? 0 : 1;
}
