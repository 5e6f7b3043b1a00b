#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rov/io.hpp"
#include "rov/net.hpp"

namespace rov {

enum class Verdict { Valid, Invalid, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Valid: return "valid";
    case Verdict::Invalid: return "invalid";
    default: return "unknown";
  }
}

// Validated ROA Payload: (prefix, max length, origin ASN).
struct Vrp {
  Prefix prefix;
  std::uint8_t max_length = 0;
  Asn origin = 0;

  Vrp() = default;
  Vrp(Prefix p, std::uint8_t maxlen, Asn asn)
      : prefix(p), max_length(maxlen), origin(asn) {
    if (max_length < prefix.length || max_length > 32)
      throw std::invalid_argument("max_length outside [length, 32]");
    if (origin == 0) throw std::invalid_argument("origin ASN must be positive");
  }

  bool operator==(const Vrp& o) const {
    return prefix == o.prefix && max_length == o.max_length && origin == o.origin;
  }
};

// ROA: one or more VRPs grouped under a signing identity.
struct Roa {
  std::string issuer;
  std::vector<Vrp> authorized;
};

// True iff the announced prefix agrees with the VRP prefix on the first
// vrp.prefix.length bits and is at least as long.
inline bool covers(const Vrp& vrp, const Prefix& announced) {
  if (announced.length < vrp.prefix.length) return false;
  std::uint32_t mask = prefix_mask(vrp.prefix.length);
  return (announced.base & mask) == vrp.prefix.base;
}

// Route origin validation over a VRP set. A single matching entry makes the
// announcement valid; covered-but-unmatched is invalid; uncovered is unknown.
inline Verdict validate(const Prefix& announced, Asn origin,
                        std::span<const Vrp> vrps) {
  bool covered = false;
  for (const Vrp& vrp : vrps) {
    if (!covers(vrp, announced)) continue;
    covered = true;
    if (vrp.origin == origin && announced.length <= vrp.max_length)
      return Verdict::Valid;
  }
  return covered ? Verdict::Invalid : Verdict::Unknown;
}

inline Verdict validate(const Prefix& announced, Asn origin,
                        const std::vector<Vrp>& vrps) {
  return validate(announced, origin, std::span<const Vrp>(vrps));
}

// VRP file: one `prefix/length,max_length,asn` record per line. The
// max_length field may be empty, defaulting to the prefix length.
inline std::vector<Vrp> load_vrps(std::istream& in, const std::string& name,
                                  bool strict = false) {
  std::vector<Vrp> out;
  LineReader reader(in, name);
  std::string line;
  while (reader.next(line)) {
    auto fields = split(line, ',');
    if (fields.size() != 3) {
      if (strict) reader.fail("expected prefix,max_length,asn");
      continue;
    }
    auto prefix = Prefix::parse(trim(fields[0]));
    if (!prefix) {
      if (strict) reader.fail("bad prefix " + fields[0]);
      continue;
    }
    try {
      std::string maxlen_s = trim(fields[1]);
      int maxlen = maxlen_s.empty() ? prefix->length : std::stoi(maxlen_s);
      Asn asn = static_cast<Asn>(std::stoul(trim(fields[2])));
      out.emplace_back(*prefix, static_cast<std::uint8_t>(maxlen), asn);
    } catch (const std::exception&) {
      if (strict) reader.fail("bad VRP record");
    }
  }
  return out;
}

inline void save_vrps(std::ostream& out, const std::vector<Vrp>& vrps) {
  for (const Vrp& v : vrps)
    out << v.prefix.str() << "," << static_cast<int>(v.max_length) << ","
        << v.origin << "\n";
}

}  // namespace rov
