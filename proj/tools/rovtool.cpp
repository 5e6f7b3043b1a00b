// rovtool: drive the measurement pipeline end to end.
//
//   rovtool simulate ...      run the two-configuration experiment, write raw
//                             artifacts (traceroutes, control dump, mapping
//                             tables, VRPs, ground truth)
//   rovtool analyze ...       preprocess + classify + correlate + IXP and
//                             propagation-graph reports
//   rovtool score ...         confusion matrix of ground truth vs categories
//   rovtool graph-metrics ... metric vector for stored edge lists
//
// Exit codes: 0 ok, 1 data/runtime error, 2 usage error.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rov/classify.hpp"
#include "rov/correlate.hpp"
#include "rov/ingest.hpp"
#include "rov/ixp.hpp"
#include "rov/propgraph.hpp"
#include "rov/reports.hpp"
#include "rov/scenario.hpp"
#include "rov/simulate.hpp"

namespace fs = std::filesystem;
using namespace rov;

namespace {

struct SimulateOptions {
  std::string scenario_file;
  bool demo = false;
  int generate_nodes = 0;
  int tier1 = 5;
  int ixps = 2;
  double strict_frac = 0.2;
  double depref_frac = 0.1;
  double probe_frac = 0.3;
  double unresponsive = 0.0;
  double internal = 0.0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int run_simulate(const SimulateOptions& opt) {
  Scenario sc;
  if (!opt.scenario_file.empty()) {
    auto in = open_input(opt.scenario_file);
    sc = load_scenario(in, opt.scenario_file);
  } else if (opt.generate_nodes > 0) {
    GenerateParams params;
    params.node_count = opt.generate_nodes;
    params.tier1_count = opt.tier1;
    params.ixp_count = opt.ixps;
    params.strict_fraction = opt.strict_frac;
    params.depreference_fraction = opt.depref_frac;
    params.probe_fraction = opt.probe_frac;
    sc = generate_scenario(params, opt.seed);
  } else {
    sc = demo_scenario();
  }
  sc.seed = opt.seed;
  if (opt.unresponsive > 0) sc.noise.unresponsive_prob = opt.unresponsive;
  if (opt.internal > 0) sc.noise.internal_ip_prob = opt.internal;
  sc.topo.validate_or_throw();

  ExperimentArtifacts art =
      run_experiment(sc.topo, sc.exp, sc.noise, sc.seed, sc.iteration_cap);

  fs::create_directories(opt.out_dir);
  auto path = [&](const char* name) { return (fs::path(opt.out_dir) / name).string(); };

  {
    auto out = open_output(path("traceroutes.jsonl"));
    write_traceroutes(out, art.traceroutes);
  }
  {
    auto out = open_output(path("control_dump.txt"));
    write_control_dump(out, art.control_paths);
  }
  {
    auto out = open_output(path("ip2as.csv"));
    out << "# prefix,asn\n";
    for (const auto& [asn, node] : sc.topo.nodes)
      for (std::uint32_t ip : node.router_ips)
        out << format_ipv4(ip) << "/32," << asn << "\n";
  }
  {
    auto out = open_output(path("ixp_lans.csv"));
    out << "# prefix,ixp_id,ixp_name\n";
    for (const auto& [asn, node] : sc.topo.nodes)
      if (node.kind == AsKind::Ixp)
        out << node.peering_lan->str() << "," << asn << ",ixp" << asn << "\n";
  }
  {
    auto out = open_output(path("target_equiv.csv"));
    out << "# asn,target_asn\n";
  }
  {
    auto out = open_output(path("vrps_a.csv"));
    save_vrps(out, art.vrps[0]);
  }
  {
    auto out = open_output(path("vrps_b.csv"));
    save_vrps(out, art.vrps[1]);
  }
  {
    auto out = open_output(path("ground_truth.csv"));
    write_ground_truth_csv(out, art.ground_truth);
  }
  {
    auto out = open_output(path("as_types.csv"));
    write_as_types_csv(out, sc.topo);
  }
  {
    nlohmann::json j;
    j["origins"] = {{"a", sc.exp.origin_a}, {"b", sc.exp.origin_b}};
    j["prefixes"] = {{"p1", sc.exp.p1.str()}, {"p2", sc.exp.p2.str()}};
    j["seed"] = sc.seed;
    j["noise"] = {{"unresponsive_prob", sc.noise.unresponsive_prob},
                  {"internal_ip_prob", sc.noise.internal_ip_prob}};
    auto out = open_output(path("experiment.json"));
    out << j.dump(2) << "\n";
  }
  {
    nlohmann::json j;
    j["files"] = {"traceroutes.jsonl", "control_dump.txt", "ip2as.csv",
                  "ixp_lans.csv",      "target_equiv.csv", "vrps_a.csv",
                  "vrps_b.csv",        "ground_truth.csv", "as_types.csv",
                  "experiment.json"};
    j["nodes"] = sc.topo.nodes.size();
    j["sessions"] = sc.topo.sessions.size();
    j["seed"] = sc.seed;
    auto out = open_output(path("manifest.json"));
    out << j.dump(2) << "\n";
  }
  std::cout << "wrote " << sc.topo.nodes.size() << " ASes, "
            << art.traceroutes.size() << " traceroute records, "
            << art.control_paths.size() << " control paths to " << opt.out_dir
            << "\n";
  return 0;
}

struct AnalyzeOptions {
  std::string in_dir = ".";
  std::string out_dir;
  double threshold_paths = 0.10;
  double threshold_routers = 0.10;
  std::string enforcing_set = "c67";
  bool strict_parse = false;
  bool graphs_only = false;
};

int run_analyze(const AnalyzeOptions& opt) {
  fs::path in(opt.in_dir);
  fs::path out_dir(opt.out_dir.empty() ? opt.in_dir : opt.out_dir);
  fs::create_directories(out_dir);
  auto ipath = [&](const char* name) { return (in / name).string(); };
  auto opath = [&](const char* name) { return (out_dir / name).string(); };

  auto expin = open_input(ipath("experiment.json"));
  auto expj = nlohmann::json::parse(expin);
  ExperimentSpec exp;
  exp.origin_a = expj.at("origins").at("a").get<Asn>();
  exp.origin_b = expj.at("origins").at("b").get<Asn>();
  exp.p1 = *Prefix::parse(expj.at("prefixes").at("p1").get<std::string>());
  exp.p2 = *Prefix::parse(expj.at("prefixes").at("p2").get<std::string>());

  std::map<char, std::vector<Vrp>> vrps;
  {
    auto a = open_input(ipath("vrps_a.csv"));
    vrps['A'] = load_vrps(a, "vrps_a.csv", opt.strict_parse);
    auto b = open_input(ipath("vrps_b.csv"));
    vrps['B'] = load_vrps(b, "vrps_b.csv", opt.strict_parse);
  }
  IpMappingDb db;
  {
    auto ip2as = open_input(ipath("ip2as.csv"));
    auto lans = open_input(ipath("ixp_lans.csv"));
    auto equiv = open_input(ipath("target_equiv.csv"));
    db = load_mapping_db(ip2as, lans, equiv, opt.strict_parse);
  }
  std::set<Asn> targets = {exp.origin_a, exp.origin_b};

  std::vector<TraceRecord> records;
  {
    auto tr = open_input(ipath("traceroutes.jsonl"));
    records = load_traceroutes(tr, "traceroutes.jsonl", opt.strict_parse);
  }
  std::vector<MeasuredPath> data_paths =
      preprocess_traceroutes(records, db, targets, vrps);

  std::vector<MeasuredPath> control_paths;
  {
    auto cd = open_input(ipath("control_dump.txt"));
    control_paths =
        load_control_dump(cd, "control_dump.txt", targets, vrps, opt.strict_parse);
  }

  ClassificationResult cls =
      classify_all(data_paths, control_paths, exp.p1, exp.p2,
                   opt.threshold_paths, opt.threshold_routers);

  // propagation graphs
  std::set<Asn> enforcing;
  for (const auto& [asn, cat] : cls.data_categories) {
    bool is_enforcing = cat == 6 || cat == 7;
    if (opt.enforcing_set == "c367") is_enforcing |= cat == 3;
    if (is_enforcing) enforcing.insert(asn);
  }
  PathGraph g1 = build_g1(data_paths);
  PathGraph g2 = derive_g2(g1, enforcing);
  PathGraph g3 = derive_g3(g1);
  std::map<std::string, GraphMetrics> graph_metrics;
  for (const auto& [label, g] :
       std::map<std::string, const PathGraph*>{{"g1", &g1}, {"g2", &g2}, {"g3", &g3}}) {
    if (!g->vertices.empty()) graph_metrics[label] = metrics(*g);
    auto out = open_output(opath((label + "_edges.csv").c_str()));
    write_edges_csv(out, *g);
  }
  {
    auto out = open_output(opath("graph_metrics.csv"));
    write_metrics_csv(out, graph_metrics);
  }
  if (opt.graphs_only) {
    std::cout << "wrote propagation graphs for " << g1.vertex_count()
              << " ASes to " << out_dir.string() << "\n";
    return 0;
  }

  CorrelationSummary corr =
      intersect_and_score(cls.control_categories, cls.data_categories);
  PeeringMap peerings = extract_peerings(data_paths);
  std::vector<IxpReport> ixps = ixp_report(peerings);
  RatioSummary ratios = ratio_summary(ixps);

  {
    auto out = open_output(opath("classification.csv"));
    write_classification_csv(out, cls);
  }
  {
    auto out = open_output(opath("correlation.csv"));
    write_correlation_csv(out, corr);
  }
  {
    auto out = open_output(opath("ixp_report.csv"));
    write_ixp_csv(out, ixps, ratios);
  }
  {
    auto out = open_output(opath("ixp_peerings.csv"));
    write_peerings_csv(out, peerings);
  }
  {
    auto out = open_output(opath("summary.txt"));
    write_summary(out, cls, corr, ixps, graph_metrics);
    // optional depth statistics when AS types are available
    if (fs::exists(in / "as_types.csv")) {
      auto tin = open_input(ipath("as_types.csv"));
      auto kinds = load_as_types_csv(tin, "as_types.csv");
      std::set<Asn> tier1;
      for (const auto& [asn, kind] : kinds)
        if (kind == "tier1" && g1.vertices.count(asn)) tier1.insert(asn);
      if (!tier1.empty()) {
        auto depth = tree_depth(g1.adjacency(), tier1);
        double sum = 0;
        for (const auto& [asn, d] : depth) sum += d;
        out << "mean distance to a tier-1 in g1: "
            << fmt(sum / static_cast<double>(depth.size()), 2) << " over "
            << depth.size() << " reachable ASes\n";
      }
    }
  }
  if (fs::exists(in / "ground_truth.csv")) {
    auto gin = open_input(ipath("ground_truth.csv"));
    auto truth = load_ground_truth_csv(gin, "ground_truth.csv");
    auto out = open_output(opath("scorecard.csv"));
    write_scorecard_csv(out, truth, cls.data_categories);
  }

  std::cout << "classified " << cls.data_categories.size()
            << " ASes on the data plane, " << cls.control_categories.size()
            << " on the control plane; reports in " << out_dir.string() << "\n";
  return 0;
}

int run_score(const std::string& in_dir) {
  fs::path in(in_dir);
  auto gin = open_input((in / "ground_truth.csv").string());
  auto truth = load_ground_truth_csv(gin, "ground_truth.csv");

  std::map<Asn, int> data_categories;
  auto cin_ = open_input((in / "classification.csv").string());
  LineReader reader(cin_, "classification.csv");
  std::string line;
  while (reader.next(line)) {
    if (line.rfind("asn,", 0) == 0) continue;
    auto fields = split(line, ',');
    if (fields.size() != 8) reader.fail("expected 8 fields");
    if (trim(fields[1]) != "data") continue;
    data_categories[static_cast<Asn>(std::stoul(trim(fields[0])))] =
        std::stoi(trim(fields[2]));
  }
  write_scorecard_csv(std::cout, truth, data_categories);
  return 0;
}

int run_graph_metrics(const std::vector<std::string>& edge_files) {
  std::map<std::string, GraphMetrics> all;
  for (const std::string& file : edge_files) {
    auto in = open_input(file);
    PathGraph g = load_edges_csv(in, file);
    all[fs::path(file).stem().string()] = metrics(g);
  }
  write_metrics_csv(std::cout, all);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROV measurement toolkit"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "run the experiment");
  simulate->add_option("--scenario", sim.scenario_file, "scenario JSON file");
  simulate->add_flag("--demo", sim.demo, "built-in 5-node scenario (default)");
  simulate->add_option("--generate", sim.generate_nodes,
                       "generate a random topology of N ASes");
  simulate->add_option("--tier1", sim.tier1, "tier-1 count when generating");
  simulate->add_option("--ixps", sim.ixps, "IXP count when generating");
  simulate->add_option("--strict-frac", sim.strict_frac,
                       "strict-policy fraction when generating");
  simulate->add_option("--depref-frac", sim.depref_frac,
                       "depreference fraction when generating");
  simulate->add_option("--probe-frac", sim.probe_frac,
                       "probe fraction when generating");
  simulate->add_option("--unresponsive", sim.unresponsive,
                       "per-hop timeout probability");
  simulate->add_option("--internal", sim.internal,
                       "per-hop private-address probability");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--out", sim.out_dir, "output directory");

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "preprocess and classify");
  analyze->add_option("--in", an.in_dir, "artifact directory");
  analyze->add_option("--out", an.out_dir, "report directory (default --in)");
  analyze->add_option("--threshold-paths", an.threshold_paths,
                      "invalid-path fraction threshold");
  analyze->add_option("--threshold-routers", an.threshold_routers,
                      "invalid-router fraction threshold");
  analyze->add_option("--enforcing-set", an.enforcing_set,
                      "enforcing categories for g2: c67 or c367")
      ->check(CLI::IsMember({"c67", "c367"}));
  analyze->add_flag("--strict-parse", an.strict_parse,
                    "fail on malformed records instead of skipping");
  analyze->add_flag("--graphs-only", an.graphs_only,
                    "emit only the propagation graphs and their metrics");

  std::string score_dir = ".";
  auto* score = app.add_subcommand("score", "confusion matrix vs ground truth");
  score->add_option("--in", score_dir, "directory with ground truth + reports");

  std::vector<std::string> edge_files;
  auto* gm = app.add_subcommand("graph-metrics", "metrics for edge lists");
  gm->add_option("--edges", edge_files, "edge CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (analyze->parsed()) return run_analyze(an);
    if (score->parsed()) return run_score(score_dir);
    if (gm->parsed()) return run_graph_metrics(edge_files);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
