#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "rov/path.hpp"
#include "rov/topology.hpp"

namespace rov {

// One member pair observed adjacent across an IXP's address space. A
// peering that never carried an invalid path is approximated as running
// over the routeserver.
struct IxpPeering {
  int ixp_id = 0;
  Asn asn_left = 0;   // lower ASN
  Asn asn_right = 0;  // higher ASN
  int valid_paths = 0;
  int invalid_paths = 0;

  IxpSessionKind inferred_kind() const {
    return invalid_paths == 0 ? IxpSessionKind::Routeserver
                              : IxpSessionKind::Direct;
  }
  int total_paths() const { return valid_paths + invalid_paths; }
};

using PeeringKey = std::tuple<int, Asn, Asn>;
using PeeringMap = std::map<PeeringKey, IxpPeering>;

// Every [X, -ixp, Y] subsequence on a path accrues the path's verdict to
// the peering (ixp, {X, Y}). Unknown-verdict paths are excluded; an IXP hop
// at a path end has no attributable pair and is discarded.
inline PeeringMap extract_peerings(const std::vector<MeasuredPath>& paths) {
  PeeringMap out;
  for (const MeasuredPath& p : paths) {
    if (p.verdict == Verdict::Unknown) continue;
    const auto& hops = p.hops;
    for (std::size_t i = 0; i < hops.size(); ++i) {
      if (!hops[i].is_ixp()) continue;
      int ixp = hops[i].ixp_id();
      // run of LAN hops of the same IXP
      std::size_t j = i;
      while (j + 1 < hops.size() && hops[j + 1].is_ixp() &&
             hops[j + 1].ixp_id() == ixp)
        ++j;
      if (i == 0 || j + 1 >= hops.size()) {
        i = j;
        continue;
      }
      const Hop& left = hops[i - 1];
      const Hop& right = hops[j + 1];
      if (left.is_as() && right.is_as()) {
        Asn lo = std::min(left.asn(), right.asn());
        Asn hi = std::max(left.asn(), right.asn());
        IxpPeering& peering = out[{ixp, lo, hi}];
        peering.ixp_id = ixp;
        peering.asn_left = lo;
        peering.asn_right = hi;
        if (p.verdict == Verdict::Valid)
          ++peering.valid_paths;
        else
          ++peering.invalid_paths;
      }
      i = j;
    }
  }
  return out;
}

struct IxpReport {
  int ixp_id = 0;
  int total_paths = 0;
  int invalid_paths = 0;
  double invalid_fraction = 0.0;
  int routeserver_peerings = 0;
  int direct_peerings = 0;
  std::optional<double> avg_paths_direct;
  std::optional<double> avg_paths_routeserver;
  // mean paths per direct peering over mean paths per routeserver peering
  std::optional<double> direct_to_routeserver_ratio;
};

inline std::vector<IxpReport> ixp_report(const PeeringMap& peerings) {
  std::map<int, IxpReport> by_ixp;
  std::map<int, std::pair<int, int>> path_sums;  // ixp -> (direct, rs) paths
  for (const auto& [key, p] : peerings) {
    IxpReport& r = by_ixp[p.ixp_id];
    r.ixp_id = p.ixp_id;
    r.total_paths += p.total_paths();
    r.invalid_paths += p.invalid_paths;
    if (p.inferred_kind() == IxpSessionKind::Routeserver) {
      ++r.routeserver_peerings;
      path_sums[p.ixp_id].second += p.total_paths();
    } else {
      ++r.direct_peerings;
      path_sums[p.ixp_id].first += p.total_paths();
    }
  }
  std::vector<IxpReport> out;
  for (auto& [ixp, r] : by_ixp) {
    if (r.total_paths > 0)
      r.invalid_fraction =
          static_cast<double>(r.invalid_paths) / r.total_paths;
    auto [direct_paths, rs_paths] = path_sums[ixp];
    if (r.direct_peerings > 0)
      r.avg_paths_direct =
          static_cast<double>(direct_paths) / r.direct_peerings;
    if (r.routeserver_peerings > 0)
      r.avg_paths_routeserver =
          static_cast<double>(rs_paths) / r.routeserver_peerings;
    if (r.avg_paths_direct && r.avg_paths_routeserver &&
        *r.avg_paths_routeserver > 0)
      r.direct_to_routeserver_ratio =
          *r.avg_paths_direct / *r.avg_paths_routeserver;
    out.push_back(r);
  }
  return out;
}

// Pooled and per-IXP means of the direct/routeserver path ratio, for
// aggregate reporting across IXPs.
struct RatioSummary {
  std::optional<double> pooled;       // ratio of pooled means over all IXPs
  std::optional<double> mean_of_ixps; // mean of per-IXP ratios
};

inline RatioSummary ratio_summary(const std::vector<IxpReport>& reports) {
  RatioSummary s;
  long direct_paths = 0, rs_paths = 0, direct_n = 0, rs_n = 0;
  double ratio_sum = 0.0;
  int ratio_n = 0;
  for (const IxpReport& r : reports) {
    if (r.avg_paths_direct) {
      direct_paths += static_cast<long>(*r.avg_paths_direct * r.direct_peerings + 0.5);
      direct_n += r.direct_peerings;
    }
    if (r.avg_paths_routeserver) {
      rs_paths += static_cast<long>(*r.avg_paths_routeserver * r.routeserver_peerings + 0.5);
      rs_n += r.routeserver_peerings;
    }
    if (r.direct_to_routeserver_ratio) {
      ratio_sum += *r.direct_to_routeserver_ratio;
      ++ratio_n;
    }
  }
  if (direct_n > 0 && rs_n > 0 && rs_paths > 0) {
    double direct_mean = static_cast<double>(direct_paths) / direct_n;
    double rs_mean = static_cast<double>(rs_paths) / rs_n;
    if (rs_mean > 0) s.pooled = direct_mean / rs_mean;
  }
  if (ratio_n > 0) s.mean_of_ixps = ratio_sum / ratio_n;
  return s;
}

}  // namespace rov
