#pragma once

#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rov/classify.hpp"
#include "rov/correlate.hpp"
#include "rov/io.hpp"
#include "rov/ixp.hpp"
#include "rov/propgraph.hpp"
#include "rov/topology.hpp"

namespace rov {

inline std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// classification.csv: one row per (plane, AS)
inline void write_classification_csv(std::ostream& out,
                                     const ClassificationResult& r) {
  out << "asn,plane,category,valid_paths,invalid_paths,div_a,div_b,thresholded\n";
  auto rows = [&](const std::map<Asn, int>& cats, const EvidenceMap& ev,
                  const char* plane, const std::set<Asn>* thresholded) {
    for (const auto& [asn, cat] : cats) {
      const AsEvidence& e = ev.at(asn);
      out << asn << "," << plane << "," << cat << "," << e.valid_paths << ","
          << e.invalid_paths << "," << e.divergences[0] << ","
          << e.divergences[1] << ","
          << (thresholded && thresholded->count(asn) ? 1 : 0) << "\n";
    }
  };
  rows(r.control_categories, r.control_evidence, "control", nullptr);
  rows(r.data_categories, r.data_evidence, "data", &r.thresholded_strict);
}

// correlation.csv
inline void write_correlation_csv(std::ostream& out,
                                  const CorrelationSummary& s) {
  out << "asn,control_category,data_category,similarity\n";
  for (const SimilarityVerdict& v : s.verdicts)
    out << v.asn << "," << v.control_category << "," << v.data_category << ","
        << to_string(v.level) << "\n";
}

// ixp_report.csv
inline void write_ixp_csv(std::ostream& out,
                          const std::vector<IxpReport>& reports,
                          const RatioSummary& ratios) {
  out << "ixp_id,total_paths,invalid_paths,invalid_fraction,"
         "routeserver_peerings,direct_peerings,avg_paths_direct,"
         "avg_paths_routeserver,direct_to_routeserver_ratio\n";
  auto opt = [&](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
  };
  for (const IxpReport& r : reports)
    out << r.ixp_id << "," << r.total_paths << "," << r.invalid_paths << ","
        << fmt(r.invalid_fraction) << "," << r.routeserver_peerings << ","
        << r.direct_peerings << "," << opt(r.avg_paths_direct) << ","
        << opt(r.avg_paths_routeserver) << ","
        << opt(r.direct_to_routeserver_ratio) << "\n";
  out << "# pooled direct/routeserver ratio: "
      << (ratios.pooled ? fmt(*ratios.pooled) : std::string("n/a")) << "\n";
  out << "# mean of per-ixp ratios: "
      << (ratios.mean_of_ixps ? fmt(*ratios.mean_of_ixps) : std::string("n/a"))
      << "\n";
}

// ixp_peerings.csv: inferred session kind per member pair
inline void write_peerings_csv(std::ostream& out, const PeeringMap& peerings) {
  out << "ixp_id,asn_left,asn_right,valid_paths,invalid_paths,inferred_kind\n";
  for (const auto& [key, p] : peerings)
    out << p.ixp_id << "," << p.asn_left << "," << p.asn_right << ","
        << p.valid_paths << "," << p.invalid_paths << ","
        << to_string(p.inferred_kind()) << "\n";
}

// graph edge list, loadable by the graph-metrics command
inline void write_edges_csv(std::ostream& out, const PathGraph& g) {
  out << "asn1,asn2,kind,ixp_id,valid_paths,invalid_paths\n";
  for (Asn v : g.vertices) {
    bool isolated = true;
    for (const auto& [key, info] : g.edges)
      if (std::get<0>(key) == v || std::get<1>(key) == v) {
        isolated = false;
        break;
      }
    if (isolated) out << v << ",,,,," << "\n";
  }
  for (const auto& [key, info] : g.edges)
    out << std::get<0>(key) << "," << std::get<1>(key) << ","
        << to_string(std::get<2>(key)) << "," << std::get<3>(key) << ","
        << info.valid_paths << "," << info.invalid_paths << "\n";
}

inline PathGraph load_edges_csv(std::istream& in, const std::string& name) {
  PathGraph g;
  LineReader reader(in, name);
  std::string line;
  bool first = true;
  while (reader.next(line)) {
    if (first && line.rfind("asn1,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto fields = split(line, ',');
    if (fields.size() != 6) reader.fail("expected 6 fields");
    try {
      Asn a = static_cast<Asn>(std::stoul(trim(fields[0])));
      g.vertices.insert(a);
      if (trim(fields[1]).empty()) continue;  // isolated vertex row
      Asn b = static_cast<Asn>(std::stoul(trim(fields[1])));
      g.vertices.insert(b);
      std::string kind_s = trim(fields[2]);
      EdgeKind kind = kind_s == "indirect" ? EdgeKind::Indirect : EdgeKind::Direct;
      if (kind_s != "direct" && kind_s != "indirect")
        reader.fail("bad edge kind '" + kind_s + "'");
      int ixp = trim(fields[3]).empty() ? 0 : std::stoi(trim(fields[3]));
      EdgeInfo info;
      info.valid_paths = std::stoi(trim(fields[4]));
      info.invalid_paths = std::stoi(trim(fields[5]));
      EdgeKey key{std::min(a, b), std::max(a, b), kind, ixp};
      g.edges[key].valid_paths += info.valid_paths;
      g.edges[key].invalid_paths += info.invalid_paths;
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      reader.fail(e.what());
    }
  }
  return g;
}

inline void write_metrics_csv(std::ostream& out,
                              const std::map<std::string, GraphMetrics>& all) {
  out << "graph,vertices,edges,components,largest_component,avg_node_degree,"
         "avg_node_degree_2e,avg_algebraic_connectivity,"
         "avg_shortest_path_length,avg_longest_path_length\n";
  for (const auto& [label, m] : all)
    out << label << "," << m.vertex_count << "," << m.edge_count << ","
        << m.component_count << "," << m.largest_component << ","
        << fmt(m.avg_node_degree, 2) << "," << fmt(m.avg_node_degree_2e, 2)
        << "," << fmt(m.avg_algebraic_connectivity) << ","
        << fmt(m.avg_shortest_path_length) << ","
        << fmt(m.avg_longest_path_length) << "\n";
}

// ground_truth.csv / as_types.csv
inline void write_ground_truth_csv(std::ostream& out,
                                   const std::map<Asn, RovPolicy>& truth) {
  out << "asn,policy\n";
  for (const auto& [asn, policy] : truth)
    out << asn << "," << to_string(policy) << "\n";
}

inline std::map<Asn, RovPolicy> load_ground_truth_csv(std::istream& in,
                                                      const std::string& name) {
  std::map<Asn, RovPolicy> truth;
  LineReader reader(in, name);
  std::string line;
  while (reader.next(line)) {
    if (line.rfind("asn,", 0) == 0) continue;
    auto fields = split(line, ',');
    if (fields.size() != 2) reader.fail("expected asn,policy");
    auto policy = parse_policy(trim(fields[1]));
    if (!policy) reader.fail("bad policy '" + fields[1] + "'");
    truth[static_cast<Asn>(std::stoul(trim(fields[0])))] = *policy;
  }
  return truth;
}

inline void write_as_types_csv(std::ostream& out, const Topology& topo) {
  out << "asn,kind\n";
  for (const auto& [asn, node] : topo.nodes)
    out << asn << "," << to_string(node.kind) << "\n";
}

inline std::map<Asn, std::string> load_as_types_csv(std::istream& in,
                                                    const std::string& name) {
  std::map<Asn, std::string> kinds;
  LineReader reader(in, name);
  std::string line;
  while (reader.next(line)) {
    if (line.rfind("asn,", 0) == 0) continue;
    auto fields = split(line, ',');
    if (fields.size() < 2) reader.fail("expected asn,kind");
    kinds[static_cast<Asn>(std::stoul(trim(fields[0])))] = trim(fields[1]);
  }
  return kinds;
}

// scorecard.csv: ground-truth policy against assigned data-plane category
inline void write_scorecard_csv(std::ostream& out,
                                const std::map<Asn, RovPolicy>& truth,
                                const std::map<Asn, int>& data_categories) {
  std::map<std::pair<RovPolicy, int>, int> cells;  // category 0 = unobserved
  for (const auto& [asn, policy] : truth) {
    auto it = data_categories.find(asn);
    ++cells[{policy, it == data_categories.end() ? 0 : it->second}];
  }
  out << "policy";
  for (int c = 0; c <= 7; ++c)
    out << "," << (c == 0 ? std::string("unobserved") : "c" + std::to_string(c));
  out << "\n";
  for (RovPolicy policy : {RovPolicy::None, RovPolicy::Strict,
                           RovPolicy::Depreference, RovPolicy::SelectiveCustomer}) {
    out << to_string(policy);
    for (int c = 0; c <= 7; ++c) {
      auto it = cells.find({policy, c});
      out << "," << (it == cells.end() ? 0 : it->second);
    }
    out << "\n";
  }
}

// summary.txt: human-readable digest of one analysis run
inline void write_summary(std::ostream& out, const ClassificationResult& r,
                          const CorrelationSummary& corr,
                          const std::vector<IxpReport>& ixps,
                          const std::map<std::string, GraphMetrics>& graphs) {
  auto histogram = [&](const std::map<Asn, int>& cats, int max_cat) {
    std::map<int, int> h;
    for (const auto& [asn, c] : cats) ++h[c];
    for (int c = 1; c <= max_cat; ++c)
      out << "  C" << c << ": " << h[c] << "\n";
  };
  out << "control-plane categories (" << r.control_categories.size()
      << " ASes):\n";
  histogram(r.control_categories, 4);
  out << "data-plane categories (" << r.data_categories.size() << " ASes):\n";
  histogram(r.data_categories, 7);
  out << "threshold-flagged as effectively strict: "
      << r.thresholded_strict.size() << "\n";
  out << "cross-plane similarity: high " << corr.high << ", medium "
      << corr.medium << ", low " << corr.low << " (control-only "
      << corr.only_control << ", data-only " << corr.only_data << ")\n";
  if (!ixps.empty()) {
    out << "ixps observed: " << ixps.size() << "\n";
    for (const IxpReport& x : ixps)
      out << "  ixp " << x.ixp_id << ": " << x.total_paths << " paths, "
          << fmt(100.0 * x.invalid_fraction, 1) << "% invalid, "
          << x.routeserver_peerings << " routeserver / " << x.direct_peerings
          << " direct peerings\n";
  }
  if (!graphs.empty()) {
    out << "propagation graphs:\n";
    out << "  graph        V      E   degree  components  largest\n";
    for (const auto& [label, m] : graphs) {
      out << "  " << std::left << std::setw(8) << label << std::right
          << std::setw(6) << m.vertex_count << std::setw(7) << m.edge_count
          << std::setw(9) << fmt(m.avg_node_degree, 2) << std::setw(12)
          << m.component_count << std::setw(9) << m.largest_component << "\n";
    }
  }
}

}  // namespace rov
