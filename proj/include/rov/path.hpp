#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rov/net.hpp"
#include "rov/rpki.hpp"

namespace rov {

enum class Plane { Control, Data };

inline const char* to_string(Plane p) {
  return p == Plane::Control ? "control" : "data";
}

// One condensed hop: positive id = ASN, negative id = IXP, absent =
// unresponsive/unmappable. Data-plane hops keep the raw router IPs that
// mapped into them; control-plane hops have none.
struct Hop {
  std::optional<std::int64_t> id;
  std::vector<std::uint32_t> ips;

  static Hop as(Asn asn) { return Hop{static_cast<std::int64_t>(asn), {}}; }
  static Hop ixp(int ixp_id) { return Hop{-static_cast<std::int64_t>(ixp_id), {}}; }
  static Hop none() { return Hop{std::nullopt, {}}; }

  bool is_as() const { return id && *id > 0; }
  bool is_ixp() const { return id && *id < 0; }
  Asn asn() const { return static_cast<Asn>(*id); }
  int ixp_id() const { return static_cast<int>(-*id); }
};

// One preprocessed AS-level path, control- or data-plane.
struct MeasuredPath {
  std::string source_id;
  Plane plane = Plane::Data;
  Prefix prefix;
  char configuration = 'A';
  std::vector<Hop> hops;
  std::optional<Asn> reached_origin;
  Verdict verdict = Verdict::Unknown;
  int weak_hops = 0;  // hops carried by a single responsive run

  std::vector<Asn> as_sequence() const {
    std::vector<Asn> out;
    for (const Hop& h : hops)
      if (h.is_as()) out.push_back(h.asn());
    return out;
  }
};

}  // namespace rov
