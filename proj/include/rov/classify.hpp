#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rov/path.hpp"
#include "rov/topology.hpp"

namespace rov {

struct MismatchedPair : std::runtime_error {
  MismatchedPair() : std::runtime_error("paths from different probe or configuration") {}
};

struct DivergenceRecord {
  std::string probe_id;
  char configuration = 'A';
  std::optional<Asn> divergence_asn;
};

// Per-AS tallies over all paths of one plane. Prefix index 0 = p1, 1 = p2;
// configuration index 0 = A, 1 = B.
struct AsEvidence {
  Asn asn = 0;
  int valid_paths = 0;
  int invalid_paths = 0;
  std::array<int, 2> divergences{0, 0};
  std::array<std::array<bool, 2>, 2> seen{};  // [configuration][prefix]
  std::set<std::uint32_t> invalid_router_ips;
  std::set<std::uint32_t> total_router_ips;

  bool divergence_in_each_configuration() const {
    return divergences[0] >= 1 && divergences[1] >= 1;
  }
  int total_divergences() const { return divergences[0] + divergences[1]; }
  bool seen_every_prefix_every_configuration() const {
    return seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1];
  }
  bool seen_in_each_configuration() const {
    return (seen[0][0] || seen[0][1]) && (seen[1][0] || seen[1][1]);
  }
};

using EvidenceMap = std::map<Asn, AsEvidence>;

inline int config_index(char configuration) {
  return configuration == 'A' ? 0 : 1;
}

// Last common AS of a probe's two paths, defined only when both paths
// followed the ROA. IXP hops and non-values are ignored for the comparison;
// paths differing from the first external hop diverge at the probe's own AS.
inline std::optional<Asn> divergence_point(const MeasuredPath& a,
                                           const MeasuredPath& b) {
  if (a.source_id != b.source_id || a.configuration != b.configuration)
    throw MismatchedPair();
  if (a.verdict != Verdict::Valid || b.verdict != Verdict::Valid)
    return std::nullopt;
  std::vector<Asn> sa = a.as_sequence();
  std::vector<Asn> sb = b.as_sequence();
  std::size_t common = 0;
  while (common < sa.size() && common < sb.size() && sa[common] == sb[common])
    ++common;
  if (common > 0) return sa[common - 1];
  if (!sa.empty()) return sa[0];
  return std::nullopt;
}

// Pair up each probe's paths to the two prefixes per configuration and
// record the divergence point where both followed the ROA.
inline std::vector<DivergenceRecord> build_divergences(
    const std::vector<MeasuredPath>& paths) {
  std::map<std::pair<std::string, char>, std::vector<const MeasuredPath*>>
      groups;
  for (const MeasuredPath& p : paths)
    if (p.plane == Plane::Data)
      groups[{p.source_id, p.configuration}].push_back(&p);

  std::vector<DivergenceRecord> out;
  for (const auto& [key, members] : groups) {
    if (members.size() != 2 || members[0]->prefix == members[1]->prefix)
      continue;
    auto asn = divergence_point(*members[0], *members[1]);
    if (!asn) continue;
    out.push_back({key.first, key.second, asn});
  }
  return out;
}

// Commutative evidence fold: every AS on an invalid path accrues negative
// evidence, every AS on a valid path positive evidence; unknown-verdict
// paths contribute only router-IP observations.
inline EvidenceMap accumulate(const std::vector<MeasuredPath>& paths,
                              const std::vector<DivergenceRecord>& divergences,
                              const Prefix& p1, const Prefix& p2) {
  EvidenceMap ev;
  for (const MeasuredPath& path : paths) {
    int cfg = config_index(path.configuration);
    int pi = path.prefix == p1 ? 0 : 1;
    std::set<Asn> on_path;
    for (const Hop& h : path.hops) {
      if (!h.is_as()) continue;
      on_path.insert(h.asn());
      AsEvidence& e = ev[h.asn()];
      e.asn = h.asn();
      e.total_router_ips.insert(h.ips.begin(), h.ips.end());
      if (path.verdict == Verdict::Invalid)
        e.invalid_router_ips.insert(h.ips.begin(), h.ips.end());
    }
    for (Asn asn : on_path) {
      AsEvidence& e = ev[asn];
      if (path.verdict == Verdict::Valid) {
        ++e.valid_paths;
        e.seen[cfg][pi] = true;
      } else if (path.verdict == Verdict::Invalid) {
        ++e.invalid_paths;
      }
    }
  }
  for (const DivergenceRecord& d : divergences) {
    if (!d.divergence_asn) continue;
    AsEvidence& e = ev[*d.divergence_asn];
    e.asn = *d.divergence_asn;
    ++e.divergences[config_index(d.configuration)];
  }
  return ev;
}

// Data-plane categories, strictest rule first. C5 is assigned later by the
// passive-upgrade pass over C4.
inline int classify_data_plane(const AsEvidence& e) {
  bool clean = e.invalid_paths == 0;
  if (clean && e.seen_every_prefix_every_configuration() &&
      e.divergence_in_each_configuration())
    return 7;
  if (clean && e.seen_in_each_configuration() && e.total_divergences() >= 1)
    return 6;
  if (!clean && e.valid_paths >= 3 * e.invalid_paths &&
      e.divergence_in_each_configuration())
    return 3;
  if (!clean && e.valid_paths >= 2 * e.invalid_paths &&
      e.total_divergences() >= 1)
    return 2;
  if (!clean) return 1;
  return 4;
}

// Control-plane categories: negative evidence dominates, then visibility.
inline int classify_control_plane(const AsEvidence& e) {
  if (e.invalid_paths >= 1) return 1;
  if (e.seen_every_prefix_every_configuration()) return 3;
  bool partial = (e.seen[0][0] && e.seen[0][1]) ||
                 (e.seen[1][0] && e.seen[1][1]) ||
                 (e.seen[0][0] && e.seen[1][0]) ||
                 (e.seen[0][1] && e.seen[1][1]);
  return partial ? 4 : 2;
}

// C4 ASes whose every target-reaching path crosses a C6/C7 AS strictly
// between them and the target are only passively protected: C5.
inline void upgrade_passive(std::map<Asn, int>& categories,
                            const std::vector<MeasuredPath>& paths) {
  std::map<Asn, std::vector<const MeasuredPath*>> containing;
  for (const MeasuredPath& p : paths) {
    if (p.plane != Plane::Data || !p.reached_origin) continue;
    std::set<Asn> on_path;
    for (const Hop& h : p.hops)
      if (h.is_as()) on_path.insert(h.asn());
    for (Asn asn : on_path) containing[asn].push_back(&p);
  }
  for (auto& [asn, cat] : categories) {
    if (cat != 4) continue;
    auto it = containing.find(asn);
    if (it == containing.end() || it->second.empty()) continue;
    bool all_protected = true;
    for (const MeasuredPath* p : it->second) {
      std::vector<Asn> seq = p->as_sequence();
      std::size_t pos = 0;
      while (pos < seq.size() && seq[pos] != asn) ++pos;
      bool covered = false;
      for (std::size_t j = pos + 1; j + 1 < seq.size(); ++j) {
        auto cit = categories.find(seq[j]);
        if (cit != categories.end() && (cit->second == 6 || cit->second == 7)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        all_protected = false;
        break;
      }
    }
    if (all_protected) cat = 5;
  }
}

// ASes in C1-C3 whose invalid evidence stays below both fractions show only
// marginal leakage and are flagged as effectively strict.
inline std::set<Asn> apply_threshold(const std::map<Asn, int>& categories,
                                     const EvidenceMap& evidence,
                                     double path_frac = 0.10,
                                     double router_frac = 0.10) {
  std::set<Asn> flagged;
  for (const auto& [asn, cat] : categories) {
    if (cat < 1 || cat > 3) continue;
    auto it = evidence.find(asn);
    if (it == evidence.end()) continue;
    const AsEvidence& e = it->second;
    int total_paths = e.valid_paths + e.invalid_paths;
    if (total_paths == 0 || e.total_router_ips.empty()) continue;
    double pf = static_cast<double>(e.invalid_paths) / total_paths;
    double rf = static_cast<double>(e.invalid_router_ips.size()) /
                static_cast<double>(e.total_router_ips.size());
    if (pf < path_frac && rf < router_frac) flagged.insert(asn);
  }
  return flagged;
}

struct ClassificationResult {
  EvidenceMap data_evidence;
  EvidenceMap control_evidence;
  std::map<Asn, int> data_categories;
  std::map<Asn, int> control_categories;
  std::set<Asn> thresholded_strict;
  std::vector<DivergenceRecord> divergences;
};

inline ClassificationResult classify_all(
    const std::vector<MeasuredPath>& data_paths,
    const std::vector<MeasuredPath>& control_paths, const Prefix& p1,
    const Prefix& p2, double path_frac = 0.10, double router_frac = 0.10) {
  ClassificationResult r;
  r.divergences = build_divergences(data_paths);
  r.data_evidence = accumulate(data_paths, r.divergences, p1, p2);
  for (const auto& [asn, e] : r.data_evidence)
    r.data_categories[asn] = classify_data_plane(e);
  upgrade_passive(r.data_categories, data_paths);
  r.control_evidence = accumulate(control_paths, {}, p1, p2);
  for (const auto& [asn, e] : r.control_evidence)
    r.control_categories[asn] = classify_control_plane(e);
  r.thresholded_strict =
      apply_threshold(r.data_categories, r.data_evidence, path_frac, router_frac);
  return r;
}

}  // namespace rov
