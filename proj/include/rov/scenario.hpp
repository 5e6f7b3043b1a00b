#pragma once

#include <istream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rov/simulate.hpp"
#include "rov/topology.hpp"

namespace rov {

struct Scenario {
  Topology topo;
  ExperimentSpec exp;
  NoiseModel noise;
  std::uint64_t seed = 0;
  int iteration_cap = 0;
};

namespace detail {

inline std::uint32_t auto_router_ip(Asn asn, int k) {
  return 0x3C000000u | ((asn * 8u + static_cast<std::uint32_t>(k)) & 0x00FFFFFFu);
}

inline Prefix auto_peering_lan(Asn ixp_asn) {
  return Prefix(0xC3000000u | ((ixp_asn & 0xFFFFu) << 8), 24);
}

inline void finish_node(AsNode& n) {
  if (n.kind == AsKind::Ixp) {
    if (!n.peering_lan) n.peering_lan = auto_peering_lan(n.asn);
    return;
  }
  if (!n.router_ips.empty()) return;
  int count = n.kind == AsKind::Tier1 ? 4 : n.kind == AsKind::Isp ? 2 : 1;
  for (int k = 0; k < count; ++k) n.router_ips.push_back(auto_router_ip(n.asn, k));
}

}  // namespace detail

// Canonical experiment constants used by the built-in and generated
// scenarios.
inline ExperimentSpec canonical_experiment() {
  ExperimentSpec exp;
  exp.origin_a = 212795;
  exp.origin_b = 208162;
  exp.p1 = *Prefix::parse("45.155.129.0/24");
  exp.p2 = *Prefix::parse("45.155.131.0/24");
  return exp;
}

// Built-in 5-node scenario: probe/collector stub AS1 behind AS2, the two
// origins hanging off AS2 directly and via AS3. With `enforcer` set, AS2
// filters invalid routes and both prefixes stay protected.
inline Scenario demo_scenario(bool enforcer = true) {
  Scenario sc;
  sc.exp = canonical_experiment();
  auto add = [&](Asn asn, AsKind kind, RovPolicy policy, bool probe,
                 bool collector) {
    AsNode n;
    n.asn = asn;
    n.kind = kind;
    n.policy = policy;
    n.hosts_probe = probe;
    n.hosts_collector = collector;
    detail::finish_node(n);
    sc.topo.nodes[asn] = n;
  };
  add(1, AsKind::Stub, RovPolicy::None, true, true);
  add(2, AsKind::Isp, enforcer ? RovPolicy::Strict : RovPolicy::None, false,
      false);
  add(3, AsKind::Isp, RovPolicy::None, false, false);
  add(sc.exp.origin_a, AsKind::Stub, RovPolicy::None, false, false);
  add(sc.exp.origin_b, AsKind::Stub, RovPolicy::None, false, false);
  auto customer = [&](Asn c, Asn p) {
    sc.topo.sessions.push_back({c, p, Relationship::CustomerToProvider, {}, IxpSessionKind::Direct});
  };
  customer(1, 2);
  customer(sc.exp.origin_a, 2);
  customer(3, 2);
  customer(sc.exp.origin_b, 3);
  return sc;
}

struct GenerateParams {
  int node_count = 100;
  int tier1_count = 3;
  double isp_fraction = 0.5;
  double multihome_prob = 0.3;
  double strict_fraction = 0.0;
  double depreference_fraction = 0.0;
  double selective_fraction = 0.0;
  double probe_fraction = 0.3;
  double collector_fraction = 0.1;
  int extra_peer_edges = -1;  // default node_count / 4
  int ixp_count = 0;
  RovPolicy ixp_policy = RovPolicy::Strict;
  double ixp_member_prob = 0.5;       // fraction of peer edges placed at an IXP
  double routeserver_fraction = 0.5;  // of IXP-placed edges
};

// Random provider hierarchy: preferential-attachment customer tree under a
// Tier-1 full mesh, extra peer edges, optional IXPs carrying some of them.
inline Scenario generate_scenario(const GenerateParams& params,
                                  std::uint64_t seed) {
  Scenario sc;
  sc.seed = seed;
  sc.exp = canonical_experiment();
  std::mt19937_64 rng(detail::mix64(seed ^ 0x5CE4A210ull));
  auto chance = [&](double p) { return detail::next_double(rng) < p; };
  auto pick = [&](std::size_t n) { return rng() % n; };

  std::vector<Asn> transit;          // ASes that can take customers
  std::vector<Asn> attachment_pool;  // degree-weighted provider sampling
  auto add_node = [&](Asn asn, AsKind kind) -> AsNode& {
    AsNode n;
    n.asn = asn;
    n.kind = kind;
    sc.topo.nodes[asn] = n;
    return sc.topo.nodes[asn];
  };
  auto customer_session = [&](Asn c, Asn p) {
    sc.topo.sessions.push_back({c, p, Relationship::CustomerToProvider, {}, IxpSessionKind::Direct});
    attachment_pool.push_back(p);
  };

  for (int i = 1; i <= params.tier1_count; ++i) {
    add_node(static_cast<Asn>(i), AsKind::Tier1);
    transit.push_back(static_cast<Asn>(i));
    attachment_pool.push_back(static_cast<Asn>(i));
    for (int j = 1; j < i; ++j)
      sc.topo.sessions.push_back({static_cast<Asn>(j), static_cast<Asn>(i),
                                  Relationship::PeerToPeer, {}, IxpSessionKind::Direct});
  }
  for (int i = params.tier1_count + 1; i <= params.node_count; ++i) {
    Asn asn = static_cast<Asn>(i);
    bool isp = chance(params.isp_fraction);
    add_node(asn, isp ? AsKind::Isp : AsKind::Stub);
    Asn provider = attachment_pool[pick(attachment_pool.size())];
    customer_session(asn, provider);
    if (chance(params.multihome_prob)) {
      Asn second = attachment_pool[pick(attachment_pool.size())];
      if (second != asn && second != provider) customer_session(asn, second);
    }
    if (isp) transit.push_back(asn);
  }

  // IXPs
  std::vector<Asn> ixps;
  for (int k = 0; k < params.ixp_count; ++k) {
    Asn asn = static_cast<Asn>(90000 + k + 1);
    AsNode& n = add_node(asn, AsKind::Ixp);
    n.policy = params.ixp_policy;
    ixps.push_back(asn);
  }

  // extra peer edges between transit ASes, some across IXPs
  int peer_edges = params.extra_peer_edges >= 0 ? params.extra_peer_edges
                                                : params.node_count / 4;
  std::set<std::pair<Asn, Asn>> used;
  for (int k = 0; k < peer_edges && transit.size() >= 2; ++k) {
    Asn u = transit[pick(transit.size())];
    Asn v = transit[pick(transit.size())];
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (!used.insert({key.first, key.second}).second) continue;
    PeeringSession s{key.first, key.second, Relationship::PeerToPeer, {}, IxpSessionKind::Direct};
    if (!ixps.empty() && chance(params.ixp_member_prob)) {
      s.ixp = ixps[pick(ixps.size())];
      s.ixp_kind = chance(params.routeserver_fraction)
                       ? IxpSessionKind::Routeserver
                       : IxpSessionKind::Direct;
    }
    sc.topo.sessions.push_back(s);
  }

  // origins hang off random transit providers
  for (Asn origin : {sc.exp.origin_a, sc.exp.origin_b}) {
    add_node(origin, AsKind::Stub);
    Asn provider = transit[pick(transit.size())];
    customer_session(origin, provider);
  }

  // policies, probes and collectors
  bool any_probe = false, any_collector = false;
  for (auto& [asn, node] : sc.topo.nodes) {
    if (node.kind == AsKind::Ixp || asn == sc.exp.origin_a ||
        asn == sc.exp.origin_b)
      continue;
    double roll = detail::next_double(rng);
    if (roll < params.strict_fraction)
      node.policy = RovPolicy::Strict;
    else if (roll < params.strict_fraction + params.depreference_fraction)
      node.policy = RovPolicy::Depreference;
    else if (roll < params.strict_fraction + params.depreference_fraction +
                        params.selective_fraction)
      node.policy = RovPolicy::SelectiveCustomer;
    node.hosts_probe = chance(params.probe_fraction);
    node.hosts_collector = chance(params.collector_fraction);
    any_probe |= node.hosts_probe;
    any_collector |= node.hosts_collector;
  }
  if (!any_probe) sc.topo.nodes.begin()->second.hosts_probe = true;
  if (!any_collector) sc.topo.nodes.begin()->second.hosts_collector = true;

  for (auto& [asn, node] : sc.topo.nodes) detail::finish_node(node);
  return sc;
}

// ---------------------------------------------------------------------------
// JSON scenario files
// ---------------------------------------------------------------------------

inline Scenario load_scenario(std::istream& in, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(name + ": " + e.what());
  }

  std::uint64_t seed = j.value("seed", 0ull);
  if (j.contains("generate")) {
    const auto& g = j.at("generate");
    GenerateParams params;
    params.node_count = g.value("node_count", params.node_count);
    params.tier1_count = g.value("tier1_count", params.tier1_count);
    params.isp_fraction = g.value("isp_fraction", params.isp_fraction);
    params.multihome_prob = g.value("multihome_prob", params.multihome_prob);
    params.strict_fraction = g.value("strict_fraction", params.strict_fraction);
    params.depreference_fraction =
        g.value("depreference_fraction", params.depreference_fraction);
    params.selective_fraction =
        g.value("selective_fraction", params.selective_fraction);
    params.probe_fraction = g.value("probe_fraction", params.probe_fraction);
    params.collector_fraction =
        g.value("collector_fraction", params.collector_fraction);
    params.extra_peer_edges = g.value("extra_peer_edges", params.extra_peer_edges);
    params.ixp_count = g.value("ixp_count", params.ixp_count);
    params.ixp_member_prob = g.value("ixp_member_prob", params.ixp_member_prob);
    params.routeserver_fraction =
        g.value("routeserver_fraction", params.routeserver_fraction);
    if (g.contains("ixp_policy")) {
      auto policy = parse_policy(g.at("ixp_policy").get<std::string>());
      if (!policy) throw std::runtime_error(name + ": bad ixp_policy");
      params.ixp_policy = *policy;
    }
    Scenario sc = generate_scenario(params, seed);
    if (j.contains("noise")) {
      sc.noise.unresponsive_prob = j["noise"].value("unresponsive_prob", 0.0);
      sc.noise.internal_ip_prob = j["noise"].value("internal_ip_prob", 0.0);
    }
    sc.iteration_cap = j.value("iteration_cap", 0);
    return sc;
  }

  Scenario sc;
  sc.seed = seed;
  sc.iteration_cap = j.value("iteration_cap", 0);
  if (j.contains("noise")) {
    sc.noise.unresponsive_prob = j["noise"].value("unresponsive_prob", 0.0);
    sc.noise.internal_ip_prob = j["noise"].value("internal_ip_prob", 0.0);
  }
  sc.exp = canonical_experiment();
  if (j.contains("origins")) {
    sc.exp.origin_a = j["origins"].at("a").get<Asn>();
    sc.exp.origin_b = j["origins"].at("b").get<Asn>();
  }
  if (j.contains("prefixes")) {
    auto p1 = Prefix::parse(j["prefixes"].at("p1").get<std::string>());
    auto p2 = Prefix::parse(j["prefixes"].at("p2").get<std::string>());
    if (!p1 || !p2) throw std::runtime_error(name + ": bad prefix");
    sc.exp.p1 = *p1;
    sc.exp.p2 = *p2;
  }

  for (const auto& nj : j.at("nodes")) {
    AsNode n;
    n.asn = nj.at("asn").get<Asn>();
    std::string kind = nj.value("kind", std::string("stub"));
    if (kind == "tier1") n.kind = AsKind::Tier1;
    else if (kind == "isp") n.kind = AsKind::Isp;
    else if (kind == "stub") n.kind = AsKind::Stub;
    else if (kind == "ixp") n.kind = AsKind::Ixp;
    else throw std::runtime_error(name + ": bad node kind '" + kind + "'");
    auto policy = parse_policy(nj.value("policy", std::string("none")));
    if (!policy) throw std::runtime_error(name + ": bad policy for AS" +
                                          std::to_string(n.asn));
    n.policy = *policy;
    n.hosts_probe = nj.value("probe", false);
    n.hosts_collector = nj.value("collector", false);
    if (nj.contains("router_ips"))
      for (const auto& s : nj.at("router_ips")) {
        auto ip = parse_ipv4(s.get<std::string>());
        if (!ip) throw std::runtime_error(name + ": bad router IP");
        n.router_ips.push_back(*ip);
      }
    if (nj.contains("peering_lan")) {
      auto lan = Prefix::parse(nj.at("peering_lan").get<std::string>());
      if (!lan) throw std::runtime_error(name + ": bad peering LAN");
      n.peering_lan = *lan;
    }
    detail::finish_node(n);
    sc.topo.nodes[n.asn] = n;
  }
  for (const auto& sj : j.at("sessions")) {
    PeeringSession s;
    if (sj.contains("customer")) {
      s.a = sj.at("customer").get<Asn>();
      s.b = sj.at("provider").get<Asn>();
      s.relationship = Relationship::CustomerToProvider;
    } else {
      const auto& peers = sj.at("peers");
      s.a = peers.at(0).get<Asn>();
      s.b = peers.at(1).get<Asn>();
      s.relationship = Relationship::PeerToPeer;
    }
    if (sj.contains("ixp")) {
      s.ixp = sj.at("ixp").get<Asn>();
      std::string kind = sj.value("ixp_kind", std::string("routeserver"));
      if (kind == "routeserver") s.ixp_kind = IxpSessionKind::Routeserver;
      else if (kind == "direct") s.ixp_kind = IxpSessionKind::Direct;
      else throw std::runtime_error(name + ": bad ixp_kind '" + kind + "'");
    }
    sc.topo.sessions.push_back(s);
  }
  sc.topo.validate_or_throw();
  return sc;
}

}  // namespace rov
