#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rov/net.hpp"
#include "rov/rpki.hpp"

namespace rov {

enum class AsKind { Tier1, Isp, Stub, Ixp };

inline const char* to_string(AsKind k) {
  switch (k) {
    case AsKind::Tier1: return "tier1";
    case AsKind::Isp: return "isp";
    case AsKind::Stub: return "stub";
    default: return "ixp";
  }
}

// Per-AS import behavior for RPKI-invalid routes.
enum class RovPolicy {
  None,               // accept everything
  Strict,             // drop invalid routes
  Depreference,       // keep invalid routes only as a last resort
  SelectiveCustomer,  // drop invalid routes unless announced by a customer
};

inline const char* to_string(RovPolicy p) {
  switch (p) {
    case RovPolicy::None: return "none";
    case RovPolicy::Strict: return "strict";
    case RovPolicy::Depreference: return "depreference";
    default: return "selective_customer";
  }
}

inline std::optional<RovPolicy> parse_policy(const std::string& s) {
  if (s == "none") return RovPolicy::None;
  if (s == "strict") return RovPolicy::Strict;
  if (s == "depreference") return RovPolicy::Depreference;
  if (s == "selective_customer") return RovPolicy::SelectiveCustomer;
  return std::nullopt;
}

struct AsNode {
  Asn asn = 0;
  AsKind kind = AsKind::Stub;
  RovPolicy policy = RovPolicy::None;
  std::vector<std::uint32_t> router_ips;
  bool hosts_probe = false;
  bool hosts_collector = false;
  std::optional<Prefix> peering_lan;  // set for IXP nodes only
};

enum class Relationship { CustomerToProvider, PeerToPeer };
enum class IxpSessionKind { Routeserver, Direct };

inline const char* to_string(IxpSessionKind k) {
  return k == IxpSessionKind::Routeserver ? "routeserver" : "direct";
}

// BGP session between two member ASes. For CustomerToProvider sessions `a`
// is the customer and `b` the provider. A session may run across an IXP
// fabric, either bilaterally or through the IXP's routeserver.
struct PeeringSession {
  Asn a = 0;
  Asn b = 0;
  Relationship relationship = Relationship::PeerToPeer;
  std::optional<Asn> ixp;
  IxpSessionKind ixp_kind = IxpSessionKind::Direct;
};

// Role of the remote end of a session, seen from `self`.
enum class NeighborRole { Customer, Peer, Provider };

inline NeighborRole role_of_other(const PeeringSession& s, Asn self) {
  if (s.relationship == Relationship::PeerToPeer) return NeighborRole::Peer;
  return self == s.a ? NeighborRole::Provider : NeighborRole::Customer;
}

struct Topology {
  std::map<Asn, AsNode> nodes;
  std::vector<PeeringSession> sessions;

  const AsNode& node(Asn asn) const {
    auto it = nodes.find(asn);
    if (it == nodes.end())
      throw std::runtime_error("unknown ASN " + std::to_string(asn));
    return it->second;
  }

  // session index list per ASN, built on demand
  std::map<Asn, std::vector<int>> adjacency() const {
    std::map<Asn, std::vector<int>> adj;
    for (int i = 0; i < static_cast<int>(sessions.size()); ++i) {
      adj[sessions[i].a].push_back(i);
      adj[sessions[i].b].push_back(i);
    }
    return adj;
  }

  void validate_or_throw() const {
    std::map<std::uint32_t, Asn> owner;
    for (const auto& [asn, n] : nodes) {
      if (asn != n.asn) throw std::runtime_error("node key/ASN mismatch");
      for (std::uint32_t ip : n.router_ips) {
        auto [it, inserted] = owner.emplace(ip, asn);
        if (!inserted)
          throw std::runtime_error("router IP " + format_ipv4(ip) +
                                   " owned by both AS" + std::to_string(it->second) +
                                   " and AS" + std::to_string(asn));
      }
      if (n.kind == AsKind::Ixp && !n.peering_lan)
        throw std::runtime_error("IXP AS" + std::to_string(asn) +
                                 " has no peering LAN");
    }
    for (const auto& s : sessions) {
      if (s.a == s.b) throw std::runtime_error("self session");
      node(s.a);
      node(s.b);
      if (s.ixp && node(*s.ixp).kind != AsKind::Ixp)
        throw std::runtime_error("session via non-IXP AS" + std::to_string(*s.ixp));
    }
  }
};

// The two-origin/two-prefix experiment. Configuration A authorizes
// origin_a for p1 and origin_b for p2; configuration B is the swap.
struct ExperimentSpec {
  Asn origin_a = 0;
  Asn origin_b = 0;
  Prefix p1;
  Prefix p2;

  std::vector<Vrp> vrps(char configuration) const {
    if (configuration == 'A')
      return {Vrp(p1, p1.length, origin_a), Vrp(p2, p2.length, origin_b)};
    if (configuration == 'B')
      return {Vrp(p1, p1.length, origin_b), Vrp(p2, p2.length, origin_a)};
    throw std::runtime_error("unknown configuration label");
  }
};

struct NoiseModel {
  double unresponsive_prob = 0.0;
  double internal_ip_prob = 0.0;
};

}  // namespace rov
