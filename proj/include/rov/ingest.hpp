#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rov/io.hpp"
#include "rov/path.hpp"
#include "rov/rpki.hpp"
#include "rov/simulate.hpp"

namespace rov {

// Up to three per-run observations of one traceroute hop.
struct HopObservation {
  std::vector<std::optional<std::uint32_t>> runs;
};

// The IP occurring at least twice among present runs wins; a single present
// run is accepted as-is; anything else is a non-value.
inline std::optional<std::uint32_t> majority_vote(const HopObservation& hop) {
  std::map<std::uint32_t, int> counts;
  int present = 0;
  for (const auto& run : hop.runs) {
    if (!run) continue;
    ++present;
    ++counts[*run];
  }
  for (const auto& [ip, n] : counts)
    if (n >= 2) return ip;
  if (present == 1) return counts.begin()->first;
  return std::nullopt;
}

// Longest-prefix-match tables for IP-to-AS and IXP peering LANs, plus the
// target upstream equivalence map. LAN prefixes take precedence.
class IpMappingDb {
 public:
  void add_as_prefix(const Prefix& p, Asn asn) {
    as_table_[{p.length, p.base}] = asn;
  }
  void add_lan(const Prefix& p, int ixp_id) {
    lan_table_[{p.length, p.base}] = ixp_id;
  }
  void add_target_equivalence(Asn upstream, Asn target) {
    target_equiv_[upstream] = target;
  }

  std::optional<int> lookup_ixp(std::uint32_t ip) const {
    return longest_match(lan_table_, ip);
  }
  std::optional<Asn> lookup_asn(std::uint32_t ip) const {
    return longest_match(as_table_, ip);
  }

  // Signed id: positive ASN, negative IXP id, absent when unmappable.
  std::optional<std::int64_t> lookup(std::uint32_t ip) const {
    if (is_private_ipv4(ip)) return std::nullopt;
    if (auto ixp = lookup_ixp(ip)) return -static_cast<std::int64_t>(*ixp);
    if (auto asn = lookup_asn(ip)) return static_cast<std::int64_t>(*asn);
    return std::nullopt;
  }

  std::optional<Asn> target_for(Asn asn,
                                const std::set<Asn>& targets) const {
    if (targets.count(asn)) return asn;
    auto it = target_equiv_.find(asn);
    if (it != target_equiv_.end() && targets.count(it->second))
      return it->second;
    return std::nullopt;
  }

 private:
  template <typename T>
  static std::optional<T> longest_match(
      const std::map<std::pair<std::uint8_t, std::uint32_t>, T>& table,
      std::uint32_t ip) {
    for (int len = 32; len >= 0; --len) {
      auto it = table.find({static_cast<std::uint8_t>(len),
                            ip & prefix_mask(static_cast<std::uint8_t>(len))});
      if (it != table.end()) return it->second;
    }
    return std::nullopt;
  }

  std::map<std::pair<std::uint8_t, std::uint32_t>, Asn> as_table_;
  std::map<std::pair<std::uint8_t, std::uint32_t>, int> lan_table_;
  std::map<Asn, Asn> target_equiv_;
};

// Map voted hop IPs to signed ids, then condense: consecutive equal ids are
// merged and a non-value between two identical ASes is dropped.
inline std::vector<Hop> map_and_condense(
    const std::vector<std::optional<std::uint32_t>>& ip_hops,
    const IpMappingDb& db) {
  std::vector<Hop> hops;
  for (const auto& ip : ip_hops) {
    Hop h = Hop::none();
    if (ip) {
      if (auto id = db.lookup(*ip)) {
        h.id = *id;
        if (*id > 0) h.ips.push_back(*ip);
      }
    }
    hops.push_back(std::move(h));
  }

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Hop> next;
    for (auto& h : hops) {
      if (!next.empty() && next.back().id && h.id &&
          *next.back().id == *h.id) {
        next.back().ips.insert(next.back().ips.end(), h.ips.begin(),
                               h.ips.end());
        changed = true;
      } else {
        next.push_back(std::move(h));
      }
    }
    hops = std::move(next);
    for (std::size_t i = 1; i + 1 < hops.size(); ++i) {
      if (!hops[i].id && hops[i - 1].is_as() && hops[i + 1].is_as() &&
          *hops[i - 1].id == *hops[i + 1].id) {
        hops.erase(hops.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  for (Hop& h : hops) {
    std::sort(h.ips.begin(), h.ips.end());
    h.ips.erase(std::unique(h.ips.begin(), h.ips.end()), h.ips.end());
  }
  return hops;
}

// Determine which (if any) target the path reached and validate it. Paths
// ending at a configured upstream of a target count as reaching the target.
inline void resolve_target(MeasuredPath& path, const IpMappingDb& db,
                           const std::set<Asn>& targets,
                           const std::vector<Vrp>& vrps) {
  path.reached_origin.reset();
  path.verdict = Verdict::Unknown;
  for (auto it = path.hops.rbegin(); it != path.hops.rend(); ++it) {
    if (!it->id) continue;
    if (it->is_as()) {
      if (auto target = db.target_for(it->asn(), targets)) {
        path.reached_origin = *target;
        path.verdict = validate(path.prefix, *target, vrps);
      }
    }
    break;  // only the final responsive hop decides
  }
}

// ---------------------------------------------------------------------------
// Wire formats
// ---------------------------------------------------------------------------

inline void write_traceroutes(std::ostream& out,
                              const std::vector<TraceRecord>& records) {
  for (const TraceRecord& r : records) {
    nlohmann::json j;
    j["probe_id"] = r.probe_id;
    j["configuration"] = std::string(1, r.configuration);
    j["prefix"] = r.prefix.str();
    j["runs"] = r.runs;
    out << j.dump() << "\n";
  }
}

inline std::vector<TraceRecord> load_traceroutes(std::istream& in,
                                                 const std::string& name,
                                                 bool strict = false) {
  std::vector<TraceRecord> out;
  LineReader reader(in, name);
  std::string line;
  while (reader.next(line)) {
    try {
      auto j = nlohmann::json::parse(line);
      TraceRecord r;
      r.probe_id = j.at("probe_id").get<std::string>();
      std::string cfg = j.at("configuration").get<std::string>();
      if (cfg != "A" && cfg != "B") reader.fail("unknown configuration label " + cfg);
      r.configuration = cfg[0];
      auto prefix = Prefix::parse(j.at("prefix").get<std::string>());
      if (!prefix) reader.fail("bad prefix");
      r.prefix = *prefix;
      auto runs = j.at("runs");
      for (std::size_t i = 0; i < runs.size() && i < 3; ++i)
        r.runs[i] = runs[i].get<std::vector<std::string>>();
      out.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      if (strict) reader.fail(e.what());
    }
  }
  return out;
}

// Control dump: `config,collector,prefix,space-separated-as-path`.
inline void write_control_dump(std::ostream& out,
                               const std::vector<MeasuredPath>& paths) {
  for (const MeasuredPath& p : paths) {
    if (p.plane != Plane::Control) continue;
    out << p.configuration << "," << p.source_id << "," << p.prefix.str()
        << ",";
    bool first = true;
    for (const Hop& h : p.hops) {
      if (!first) out << " ";
      out << h.asn();
      first = false;
    }
    out << "\n";
  }
}

// Parse a control-plane dump, keep only paths originating in one of the
// measurement ASes, collapse AS-path prepending and validate the origin.
inline std::vector<MeasuredPath> load_control_dump(
    std::istream& in, const std::string& name, const std::set<Asn>& origins,
    const std::map<char, std::vector<Vrp>>& vrps_by_configuration,
    bool strict = true) {
  std::vector<MeasuredPath> out;
  LineReader reader(in, name);
  std::string line;
  while (reader.next(line)) {
    auto fields = split(line, ',');
    if (fields.size() != 4) {
      if (strict) reader.fail("expected config,collector,prefix,path");
      continue;
    }
    std::string cfg = trim(fields[0]);
    if (cfg != "A" && cfg != "B")
      reader.fail("unknown configuration label '" + cfg + "'");
    auto prefix = Prefix::parse(trim(fields[2]));
    if (!prefix) {
      if (strict) reader.fail("bad prefix " + fields[2]);
      continue;
    }
    std::vector<Asn> as_path;
    for (const std::string& tok : split(trim(fields[3]), ' ')) {
      if (tok.empty()) continue;
      try {
        Asn asn = static_cast<Asn>(std::stoul(tok));
        if (as_path.empty() || as_path.back() != asn)  // prepending collapse
          as_path.push_back(asn);
      } catch (const std::exception&) {
        if (strict) reader.fail("bad ASN " + tok);
        as_path.clear();
        break;
      }
    }
    if (as_path.empty()) {
      if (strict) reader.fail("empty AS path");
      continue;
    }
    if (!origins.count(as_path.back())) continue;

    MeasuredPath p;
    p.source_id = trim(fields[1]);
    p.plane = Plane::Control;
    p.prefix = *prefix;
    p.configuration = cfg[0];
    for (Asn asn : as_path) p.hops.push_back(Hop::as(asn));
    p.reached_origin = as_path.back();
    auto vit = vrps_by_configuration.find(p.configuration);
    if (vit == vrps_by_configuration.end())
      reader.fail("no VRPs for configuration " + cfg);
    p.verdict = validate(p.prefix, as_path.back(), vit->second);
    out.push_back(std::move(p));
  }
  return out;
}

inline IpMappingDb load_mapping_db(std::istream& ip2as, std::istream& lans,
                                   std::istream& equiv, bool strict = false) {
  IpMappingDb db;
  {
    LineReader reader(ip2as, "ip2as");
    std::string line;
    while (reader.next(line)) {
      auto fields = split(line, ',');
      auto prefix = fields.size() == 2 ? Prefix::parse(trim(fields[0]))
                                       : std::nullopt;
      if (!prefix) {
        if (strict) reader.fail("expected prefix,asn");
        continue;
      }
      db.add_as_prefix(*prefix, static_cast<Asn>(std::stoul(trim(fields[1]))));
    }
  }
  {
    LineReader reader(lans, "ixp_lans");
    std::string line;
    while (reader.next(line)) {
      auto fields = split(line, ',');
      auto prefix = fields.size() >= 2 ? Prefix::parse(trim(fields[0]))
                                       : std::nullopt;
      if (!prefix) {
        if (strict) reader.fail("expected prefix,ixp_id,ixp_name");
        continue;
      }
      db.add_lan(*prefix, std::stoi(trim(fields[1])));
    }
  }
  {
    LineReader reader(equiv, "target_equiv");
    std::string line;
    while (reader.next(line)) {
      auto fields = split(line, ',');
      if (fields.size() != 2) {
        if (strict) reader.fail("expected asn,target_asn");
        continue;
      }
      db.add_target_equivalence(static_cast<Asn>(std::stoul(trim(fields[0]))),
                                static_cast<Asn>(std::stoul(trim(fields[1]))));
    }
  }
  return db;
}

// ---------------------------------------------------------------------------
// Preprocessing pipeline
// ---------------------------------------------------------------------------

// Raw traceroute records to MeasuredPath values: majority vote per hop,
// IP-to-AS mapping, condensing, target resolution. Probes missing a
// completed measurement for any (configuration, prefix) combination are
// dropped entirely, as are paths with no responsive hop.
inline std::vector<MeasuredPath> preprocess_traceroutes(
    const std::vector<TraceRecord>& records, const IpMappingDb& db,
    const std::set<Asn>& targets,
    const std::map<char, std::vector<Vrp>>& vrps_by_configuration) {
  std::map<std::string, std::set<std::pair<char, Prefix>>> seen;
  std::set<std::pair<char, Prefix>> required;
  for (const TraceRecord& r : records) {
    seen[r.probe_id].insert({r.configuration, r.prefix});
    required.insert({r.configuration, r.prefix});
  }

  std::vector<MeasuredPath> out;
  for (const TraceRecord& r : records) {
    if (seen.at(r.probe_id).size() < required.size()) continue;

    std::size_t hop_count = 0;
    for (const auto& run : r.runs) hop_count = std::max(hop_count, run.size());
    std::vector<std::optional<std::uint32_t>> voted;
    int weak = 0;
    for (std::size_t i = 0; i < hop_count; ++i) {
      HopObservation obs;
      int present = 0;
      for (const auto& run : r.runs) {
        if (i >= run.size()) continue;
        auto ip = parse_ipv4(run[i]);
        obs.runs.push_back(ip);
        if (ip) ++present;
      }
      auto winner = majority_vote(obs);
      if (winner && present == 1) ++weak;
      voted.push_back(winner);
    }
    if (std::none_of(voted.begin(), voted.end(),
                     [](const auto& v) { return v.has_value(); }))
      continue;  // only unresponsive hops

    MeasuredPath p;
    p.source_id = r.probe_id;
    p.plane = Plane::Data;
    p.prefix = r.prefix;
    p.configuration = r.configuration;
    p.hops = map_and_condense(voted, db);
    p.weak_hops = weak;
    auto vit = vrps_by_configuration.find(r.configuration);
    if (vit == vrps_by_configuration.end())
      throw std::runtime_error("no VRPs for configuration " +
                               std::string(1, r.configuration));
    resolve_target(p, db, targets, vit->second);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rov
