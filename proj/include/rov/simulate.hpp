#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rov/path.hpp"
#include "rov/rpki.hpp"
#include "rov/topology.hpp"

namespace rov {

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(int rounds)
      : std::runtime_error("no BGP fixed point after " +
                           std::to_string(rounds) + " rounds") {}
};

struct RibEntry {
  Prefix prefix;
  std::vector<Asn> as_path;  // front = owning AS, back = origin
  Asn origin = 0;
  int session = -1;  // index into Topology::sessions, -1 for self-origination
  Verdict verdict = Verdict::Unknown;
  int local_pref = 0;

  bool same_route(const RibEntry& o) const {
    return as_path == o.as_path && origin == o.origin &&
           local_pref == o.local_pref;
  }
};

// Converged best route per (AS, prefix index). Index 0 = p1, 1 = p2.
struct Converged {
  std::map<Asn, std::array<std::optional<RibEntry>, 2>> rib;
  char configuration = 'A';
  std::vector<Vrp> vrps;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

template <typename... Args>
std::uint64_t hash_all(std::uint64_t seed, Args... args) {
  std::uint64_t h = mix64(seed);
  ((h = mix64(h ^ static_cast<std::uint64_t>(args))), ...);
  return h;
}

// Platform-independent uniform double in [0,1).
inline double next_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline int local_pref_for(NeighborRole sender) {
  switch (sender) {
    case NeighborRole::Customer: return 300;
    case NeighborRole::Peer: return 200;
    default: return 100;
  }
}

// Gao-Rexford export rule: routes learned from customers (or self-originated)
// go to everyone; anything else only to customers.
inline bool export_allowed(const Topology& topo, Asn exporter,
                           const RibEntry& route, const PeeringSession& to) {
  bool from_customer_or_self =
      route.session < 0 ||
      role_of_other(topo.sessions[route.session], exporter) ==
          NeighborRole::Customer;
  if (from_customer_or_self) return true;
  return role_of_other(to, exporter) == NeighborRole::Customer;
}

// Preference order at `owner`. Returns true if a beats b.
inline bool better_route(const AsNode& owner, const RibEntry& a,
                         const RibEntry& b) {
  if (owner.policy == RovPolicy::Depreference) {
    bool a_inv = a.verdict == Verdict::Invalid;
    bool b_inv = b.verdict == Verdict::Invalid;
    if (a_inv != b_inv) return b_inv;
  }
  if (a.local_pref != b.local_pref) return a.local_pref > b.local_pref;
  if (a.as_path.size() != b.as_path.size())
    return a.as_path.size() < b.as_path.size();
  Asn an = a.as_path.size() > 1 ? a.as_path[1] : 0;
  Asn bn = b.as_path.size() > 1 ? b.as_path[1] : 0;
  return an < bn;
}

}  // namespace detail

// Synchronous best-route iteration to a fixed point. Both origins announce
// both prefixes; every import is validated against the configuration's VRPs.
inline Converged converge(const Topology& topo, const ExperimentSpec& exp,
                          char configuration, int iteration_cap = 0) {
  topo.validate_or_throw();
  std::vector<Vrp> vrps = exp.vrps(configuration);
  const std::array<Prefix, 2> prefixes = {exp.p1, exp.p2};
  auto adj = topo.adjacency();

  Converged state;
  state.configuration = configuration;
  state.vrps = vrps;
  auto& rib = state.rib;
  for (const auto& [asn, node] : topo.nodes)
    if (node.kind != AsKind::Ixp) rib[asn] = {};

  int cap = iteration_cap > 0 ? iteration_cap
                              : 2 * static_cast<int>(topo.nodes.size());
  for (int round = 0;; ++round) {
    if (round >= cap) throw NonConvergence(cap);
    bool changed = false;
    std::map<Asn, std::array<std::optional<RibEntry>, 2>> next = rib;
    for (auto& [asn, slots] : next) {
      const AsNode& node = topo.node(asn);
      for (int pi = 0; pi < 2; ++pi) {
        std::optional<RibEntry> best;
        if (asn == exp.origin_a || asn == exp.origin_b) {
          RibEntry self;
          self.prefix = prefixes[pi];
          self.as_path = {asn};
          self.origin = asn;
          self.session = -1;
          self.verdict = validate(prefixes[pi], asn, vrps);
          self.local_pref = 1000;
          best = self;
        }
        static const std::vector<int> no_sessions;
        auto adj_it = adj.find(asn);
        for (int si : adj_it == adj.end() ? no_sessions : adj_it->second) {
          const PeeringSession& sess = topo.sessions[si];
          Asn neighbor = sess.a == asn ? sess.b : sess.a;
          const auto& remote = rib.at(neighbor)[pi];
          if (!remote) continue;
          if (std::find(remote->as_path.begin(), remote->as_path.end(), asn) !=
              remote->as_path.end())
            continue;
          if (!detail::export_allowed(topo, neighbor, *remote, sess)) continue;

          NeighborRole sender = role_of_other(sess, asn);
          bool depref = node.policy == RovPolicy::Depreference;
          bool drop_invalid = node.policy == RovPolicy::Strict ||
                              (node.policy == RovPolicy::SelectiveCustomer &&
                               sender != NeighborRole::Customer);
          if (sess.ixp && sess.ixp_kind == IxpSessionKind::Routeserver) {
            // routeserver imports inherit the IXP's policy
            RovPolicy ixp_policy = topo.node(*sess.ixp).policy;
            drop_invalid |= ixp_policy == RovPolicy::Strict ||
                            (ixp_policy == RovPolicy::SelectiveCustomer &&
                             sender != NeighborRole::Customer);
            depref |= ixp_policy == RovPolicy::Depreference;
          }
          if (remote->verdict == Verdict::Invalid && drop_invalid) continue;

          RibEntry cand;
          cand.prefix = prefixes[pi];
          cand.as_path.reserve(remote->as_path.size() + 1);
          cand.as_path.push_back(asn);
          cand.as_path.insert(cand.as_path.end(), remote->as_path.begin(),
                              remote->as_path.end());
          cand.origin = remote->origin;
          cand.session = si;
          cand.verdict = remote->verdict;
          cand.local_pref = detail::local_pref_for(sender);
          if (cand.verdict == Verdict::Invalid && depref)
            cand.local_pref -= 150;
          if (!best || detail::better_route(node, cand, *best)) best = cand;
        }
        auto& slot = slots[pi];
        bool differs = best.has_value() != slot.has_value() ||
                       (best && !best->same_route(*slot));
        if (differs) {
          slot = best;
          changed = true;
        }
      }
    }
    rib = std::move(next);
    if (!changed) break;
  }
  return state;
}

// Control-plane AS paths at collector ASes, one per (collector, prefix)
// with a route. IXPs never appear: they do not take part in route selection.
inline std::vector<MeasuredPath> emit_control_paths(const Converged& state,
                                                    const Topology& topo,
                                                    const ExperimentSpec& exp) {
  std::vector<MeasuredPath> out;
  const std::array<Prefix, 2> prefixes = {exp.p1, exp.p2};
  for (const auto& [asn, slots] : state.rib) {
    if (!topo.node(asn).hosts_collector) continue;
    for (int pi = 0; pi < 2; ++pi) {
      if (!slots[pi]) continue;
      const RibEntry& e = *slots[pi];
      MeasuredPath p;
      p.source_id = "vp" + std::to_string(asn);
      p.plane = Plane::Control;
      p.prefix = prefixes[pi];
      p.configuration = state.configuration;
      for (Asn hop : e.as_path) p.hops.push_back(Hop::as(hop));
      p.reached_origin = e.origin;
      p.verdict = e.verdict;
      out.push_back(std::move(p));
    }
  }
  return out;
}

// Raw traceroute record before any preprocessing: three runs of hop strings,
// "*" marking a timeout.
struct TraceRecord {
  std::string probe_id;
  char configuration = 'A';
  Prefix prefix;
  std::array<std::vector<std::string>, 3> runs;
};

// AS-level forwarding chain from `probe` toward the selected origin of
// `prefix_index`, following each AS's own best route.
inline std::vector<Asn> forwarding_chain(const Converged& state, Asn probe,
                                         int prefix_index) {
  std::vector<Asn> chain;
  std::set<Asn> visited;
  Asn cur = probe;
  while (visited.insert(cur).second) {
    chain.push_back(cur);
    auto it = state.rib.find(cur);
    if (it == state.rib.end() || !it->second[prefix_index]) break;
    const RibEntry& e = *it->second[prefix_index];
    if (e.as_path.size() == 1) break;  // reached the origin
    cur = e.as_path[1];
  }
  return chain;
}

namespace detail {

inline std::uint32_t router_ip(const AsNode& node, std::uint64_t salt) {
  if (node.router_ips.empty())
    throw std::runtime_error("AS" + std::to_string(node.asn) +
                             " has no router IPs");
  return node.router_ips[hash_all(salt, node.asn) % node.router_ips.size()];
}

}  // namespace detail

// Traceroute-style hop sequences for every probe and prefix: one router IP
// per AS on the forwarding chain, one peering-LAN IP whenever the chain
// crosses an IXP session, three runs each, with optional per-hop noise.
inline std::vector<TraceRecord> emit_traceroutes(const Converged& state,
                                                 const Topology& topo,
                                                 const ExperimentSpec& exp,
                                                 const NoiseModel& noise,
                                                 std::uint64_t seed) {
  std::vector<TraceRecord> out;
  const std::array<Prefix, 2> prefixes = {exp.p1, exp.p2};
  for (const auto& [asn, node] : topo.nodes) {
    if (!node.hosts_probe || node.kind == AsKind::Ixp) continue;
    for (int pi = 0; pi < 2; ++pi) {
      // clean chain of hop IPs
      std::vector<std::uint32_t> clean;
      std::set<Asn> visited;
      Asn cur = asn;
      while (visited.insert(cur).second) {
        const AsNode& n = topo.node(cur);
        clean.push_back(
            detail::router_ip(n, detail::hash_all(seed, asn, prefixes[pi].base)));
        auto it = state.rib.find(cur);
        if (it == state.rib.end() || !it->second[pi]) break;
        const RibEntry& e = *it->second[pi];
        if (e.as_path.size() == 1) break;
        const PeeringSession& sess = topo.sessions[e.session];
        if (sess.ixp) {
          const AsNode& ixp = topo.node(*sess.ixp);
          std::uint32_t lan = ixp.peering_lan->base + 1 +
                              static_cast<std::uint32_t>(
                                  detail::hash_all(seed, cur, e.as_path[1]) %
                                  200);
          clean.push_back(lan);
        }
        cur = e.as_path[1];
      }

      TraceRecord rec;
      rec.probe_id = "pb" + std::to_string(asn);
      rec.configuration = state.configuration;
      rec.prefix = prefixes[pi];
      for (int run = 0; run < 3; ++run) {
        std::mt19937_64 rng(detail::hash_all(
            seed, asn, prefixes[pi].base,
            static_cast<std::uint64_t>(state.configuration), run + 1));
        for (std::uint32_t ip : clean) {
          double roll = detail::next_double(rng);
          if (roll < noise.unresponsive_prob) {
            rec.runs[run].push_back("*");
          } else if (roll < noise.unresponsive_prob + noise.internal_ip_prob) {
            std::uint32_t internal =
                0x0A000000u | static_cast<std::uint32_t>(rng() % 0x00FFFFFFu);
            rec.runs[run].push_back(format_ipv4(internal));
          } else {
            rec.runs[run].push_back(format_ipv4(ip));
          }
        }
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

struct ExperimentArtifacts {
  std::vector<MeasuredPath> control_paths;  // both configurations
  std::vector<TraceRecord> traceroutes;     // both configurations
  std::map<Asn, RovPolicy> ground_truth;
  std::array<std::vector<Vrp>, 2> vrps;     // index 0 = A, 1 = B
};

// Full two-configuration experiment: converge under A and B, emit control
// paths and traceroutes for both, and keep the policy map for scoring.
inline ExperimentArtifacts run_experiment(const Topology& topo,
                                          const ExperimentSpec& exp,
                                          const NoiseModel& noise,
                                          std::uint64_t seed,
                                          int iteration_cap = 0) {
  ExperimentArtifacts art;
  for (char cfg : {'A', 'B'}) {
    Converged state = converge(topo, exp, cfg, iteration_cap);
    auto control = emit_control_paths(state, topo, exp);
    art.control_paths.insert(art.control_paths.end(), control.begin(),
                             control.end());
    auto traces = emit_traceroutes(state, topo, exp, noise, seed);
    art.traceroutes.insert(art.traceroutes.end(), traces.begin(), traces.end());
    art.vrps[cfg == 'A' ? 0 : 1] = state.vrps;
  }
  for (const auto& [asn, node] : topo.nodes)
    art.ground_truth[asn] = node.policy;
  return art;
}

// Valley-free check on an AS path (front = observer, back = origin): in
// announcement order the steps must match customer-to-provider*, at most one
// peer step, provider-to-customer*.
inline bool is_valley_free(const std::vector<Asn>& path, const Topology& topo) {
  std::set<std::pair<Asn, Asn>> customer_provider;
  for (const auto& s : topo.sessions)
    if (s.relationship == Relationship::CustomerToProvider)
      customer_provider.emplace(s.a, s.b);
  auto customer_of = [&](Asn c, Asn p) {
    return customer_provider.count({c, p}) > 0;
  };
  // walk in announcement order (origin first)
  int stage = 0;  // 0 = ascending, 1 = after peer step, 2 = descending
  for (std::size_t i = path.size(); i-- > 1;) {
    Asn sender = path[i];
    Asn receiver = path[i - 1];
    if (customer_of(sender, receiver)) {
      if (stage != 0) return false;  // up step after peak
    } else if (customer_of(receiver, sender)) {
      stage = 2;
    } else {
      if (stage != 0) return false;  // second peer step or peer after descent
      stage = 1;
    }
  }
  return true;
}

}  // namespace rov
