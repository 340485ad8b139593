#include "app.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "signedmeso/balance.hpp"
#include "signedmeso/blockmodel.hpp"
#include "signedmeso/error.hpp"
#include "signedmeso/graph.hpp"
#include "signedmeso/mesoscale.hpp"
#include "signedmeso/partition.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/report.hpp"
#include "signedmeso/synth.hpp"

#ifndef SIGNEDMESO_VERSION
#define SIGNEDMESO_VERSION "unknown"
#endif

namespace signedmeso::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Config {
  std::string command;
  std::string input;
  std::string partition;
  std::string fit;
  std::string method = "blockmodel";
  std::size_t bmax = 6;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  std::size_t bootstrap_k = 0;
  double tol = kDefaultTolerance;
  std::string out;
  unsigned threads = 1;
  std::string format = "json";
  bool undirected = false;
  bool lcc = false;
  unsigned louvain_restarts = 16;
  unsigned blockmodel_restarts = 8;
  std::string null_model = "sign-shuffle";

  PlantedParams planted;
  std::string truth;
  std::vector<double> ratios{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::vector<std::string> methods{"louvain", "blockmodel"};
  std::size_t replicates = 20;
};

json metadata(const Config& c) {
  json config = {{"method", c.method},
                 {"bmax", c.bmax},
                 {"k", c.k},
                 {"seed", c.seed},
                 {"samples", c.samples},
                 {"bootstrap_k", c.bootstrap_k},
                 {"tol", c.tol},
                 {"threads", c.threads},
                 {"format", c.format},
                 {"undirected", c.undirected},
                 {"lcc", c.lcc},
                 {"louvain_restarts", c.louvain_restarts},
                 {"blockmodel_restarts", c.blockmodel_restarts}};
  if (!c.input.empty()) config["input"] = fs::path(c.input).filename().string();
  if (!c.partition.empty()) config["partition"] = fs::path(c.partition).filename().string();
  if (!c.fit.empty()) config["fit"] = fs::path(c.fit).filename().string();
  if (c.command == "null") config["null"] = c.null_model;
  if (c.command == "synth" || c.command == "sweep") {
    config["n"] = c.planted.n;
    config["groups"] = c.planted.groups;
    config["p_pos_in"] = c.planted.p_pos_in;
    config["p_neg_in"] = c.planted.p_neg_in;
    config["p_pos_out"] = c.planted.p_pos_out;
    config["p_neg_out"] = c.planted.p_neg_out;
  }
  if (c.command == "sweep") {
    config["ratios"] = c.ratios;
    config["methods"] = c.methods;
    config["replicates"] = c.replicates;
  }
  return {{"command", c.command}, {"version", SIGNEDMESO_VERSION}, {"seed", c.seed}, {"config", config}};
}

/// Destination of a single result: --out when given, otherwise `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  void write(const std::string& text) const {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    write_file(path_, text);
  }

  static void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "' for writing");
    f << text;
    if (!f) throw Error("failed writing '" + path.string() + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SignedGraph load_graph(const Config& c) {
  if (!fs::exists(c.input)) throw Error("input file '" + c.input + "' does not exist");
  const DirectedSignedGraph directed = load_edge_list(fs::path(c.input));
  SignedGraph g = c.undirected ? undirected_from_arcs(directed) : symmetrize(directed);
  return c.lcc ? largest_connected_component(g) : g;
}

Partition read_partition_file(const std::string& path, const SignedGraph& g) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open partition file '" + path + "'");
  return import_partition(f, g);
}

struct Partitioned {
  Partition partition;
  std::optional<BlockModelFit> fit;
};

Partitioned compute_partition(const Config& c, const SignedGraph& g) {
  if (c.method == "import") {
    if (c.partition.empty()) throw ValidationError("--method import requires --partition");
    return {read_partition_file(c.partition, g), std::nullopt};
  }
  const Threads threads{c.threads};
  if (c.method == "louvain") return {louvain_signed(g, LouvainOptions{c.seed, c.louvain_restarts, threads}), {}};
  if (c.method == "spectral") return {spectral_signed(g, SpectralOptions{c.k, c.seed, 50}), {}};
  BlockModelFit fit = fit_blockmodel(g, BlockModelOptions{c.bmax, c.seed, c.blockmodel_restarts, threads});
  Partition p = fit.partition;
  return {std::move(p), std::move(fit)};
}

json partition_json(const Partitioned& part, const SignedGraph& g) {
  json j = report::to_json(part.partition, g);
  j["modularity"] = report::to_json(signed_modularity(g, part.partition));
  if (part.fit) j["fit"] = report::to_json(*part.fit);
  return j;
}

std::string csv_number(double x) {
  std::ostringstream s;
  s.precision(std::numeric_limits<double>::max_digits10);
  s << x;
  return s.str();
}

std::string csv_number(const std::optional<double>& x) { return x ? csv_number(*x) : std::string(); }

int cmd_stats(const Config& c, std::ostream& out) {
  const DirectedSignedGraph directed = [&] {
    if (!fs::exists(c.input)) throw Error("input file '" + c.input + "' does not exist");
    return load_edge_list(fs::path(c.input));
  }();
  SignedGraph g = c.undirected ? undirected_from_arcs(directed) : symmetrize(directed);
  if (c.lcc) g = largest_connected_component(g);
  const GraphStats s = descriptive_stats(g);
  const Sink sink(c.out, out);
  if (c.format == "csv") {
    std::ostringstream t;
    t << "key,value\n"
      << "nodes," << s.nodes << "\nedges," << s.edges << "\npositive_edges," << s.positive_edges
      << "\nnegative_edges," << s.negative_edges << "\nneg_pos_ratio," << csv_number(s.neg_pos_ratio)
      << "\nmean_degree," << csv_number(s.mean_degree) << "\ndensity," << csv_number(s.density)
      << "\ndropped_self_loops," << directed.dropped_self_loops << "\n";
    sink.write(t.str());
    return kOk;
  }
  json doc = report::document("stats", metadata(c));
  doc["stats"] = report::to_json(s);
  doc["dropped_self_loops"] = directed.dropped_self_loops;
  sink.write(dump(doc));
  return kOk;
}

int cmd_partition(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const Partitioned part = compute_partition(c, g);
  const Sink sink(c.out, out);
  if (c.format == "csv") {
    std::ostringstream t;
    write_partition(t, g, part.partition);
    sink.write(t.str());
    return kOk;
  }
  json doc = report::document("partition", metadata(c));
  doc["partition"] = partition_json(part, g);
  sink.write(dump(doc));
  return kOk;
}

std::optional<Classification> classify_if_possible(const SignedGraph& g, const Partition& p, double tol) {
  if (p.block_count() < 2) return std::nullopt;
  return classify_all(g, p, tol);
}

int cmd_analyze(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const Partitioned part = compute_partition(c, g);
  const Partition& p = part.partition;
  const json meta = metadata(c);

  std::map<std::string, json> sections;
  sections["stats"] = report::to_json(descriptive_stats(g));
  sections["partition"] = partition_json(part, g);
  sections["densities"] = report::to_json(density_matrices(g, p));

  std::optional<Classification> classes = classify_if_possible(g, p, c.tol);
  if (classes && c.bootstrap_k > 0) {
    const Matrix<double> certainty =
        bootstrap_certainty(g, p, BootstrapOptions{c.bootstrap_k, c.tol, c.seed, Threads{c.threads}});
    attach_robustness(classes->pairs, certainty);
  }
  sections["classification"] = classes ? report::to_json(*classes) : json(nullptr);
  sections["frustration"] = report::to_json(frustration_report(g, p, classes ? classes->pairs : std::vector<PairRelation>{}));
  sections["triads"] = report::to_json(triad_census(g));
  if (c.samples > 0) {
    if (c.samples < 2) throw ValidationError("at least 2 null-model samples required");
    sections["zscores"] = report::to_json(sign_shuffle_zscores(g, NullModelOptions{c.samples, c.seed, Threads{c.threads}}));
  }

  if (c.out.empty()) {
    json doc = report::document("analysis", meta);
    for (const auto& [name, section] : sections) doc[name] = section;
    out << dump(doc);
    return kOk;
  }
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& [name, section] : sections) {
    json doc = report::document(name, meta);
    doc[name] = section;
    Sink::write_file(dir / (name + ".json"), dump(doc));
  }
  std::ostringstream csv;
  write_partition(csv, g, p);
  Sink::write_file(dir / "partition.csv", csv.str());
  return kOk;
}

int cmd_frustration(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const Partitioned part = compute_partition(c, g);
  const std::optional<Classification> classes = classify_if_possible(g, part.partition, c.tol);
  const FrustrationReport f =
      frustration_report(g, part.partition, classes ? classes->pairs : std::vector<PairRelation>{});
  const Sink sink(c.out, out);
  if (c.format == "csv") {
    std::ostringstream t;
    t << "r,s,fi\n";
    for (std::size_t r = 0; r < f.pairwise.rows(); ++r) {
      for (std::size_t s = r + 1; s < f.pairwise.cols(); ++s) t << r << ',' << s << ',' << csv_number(f.pairwise(r, s)) << '\n';
    }
    sink.write(t.str());
    return kOk;
  }
  json doc = report::document("frustration", metadata(c));
  doc["partition"] = partition_json(part, g);
  doc["frustration"] = report::to_json(f);
  sink.write(dump(doc));
  return kOk;
}

int cmd_triads(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const TriadCensus census = triad_census(g);
  const Sink sink(c.out, out);
  if (c.format == "csv") {
    std::ostringstream t;
    t << "triad,count,fraction\n";
    for (std::size_t i = 0; i < 4; ++i) {
      t << kTriadNames[i] << ',' << census.counts[i] << ','
        << (census.fractions ? csv_number((*census.fractions)[i]) : std::string()) << '\n';
    }
    t << "dob,," << csv_number(census.dob) << "\nwdob,," << csv_number(census.wdob) << '\n';
    sink.write(t.str());
    return kOk;
  }
  json doc = report::document("triads", metadata(c));
  doc["triads"] = report::to_json(census);
  sink.write(dump(doc));
  return kOk;
}

BlockModelFit null_fit(const Config& c, const SignedGraph& g) {
  if (!c.fit.empty()) {
    std::ifstream f(c.fit);
    if (!f) throw Error("cannot open fit file '" + c.fit + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ValidationError("fit file '" + c.fit + "': " + e.what());
    }
    if (j.contains("partition") && j["partition"].contains("fit")) j = j["partition"]["fit"];
    if (j.contains("fit")) j = j["fit"];
    BlockModelFit fit = report::fit_from_json(j);
    if (fit.partition.node_count() != g.node_count()) throw ValidationError("fit does not match the graph size");
    return fit;
  }
  if (!c.partition.empty()) return fit_at_partition(g, read_partition_file(c.partition, g));
  return fit_blockmodel(g, BlockModelOptions{c.bmax, c.seed, c.blockmodel_restarts, Threads{c.threads}});
}

int cmd_null(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const NullModelOptions options{c.samples, c.seed, Threads{c.threads}};
  json doc = report::document("null", metadata(c));
  if (c.null_model == "sign-shuffle" || c.null_model == "both") {
    doc["sign_shuffle"] = report::to_json(sign_shuffle_zscores(g, options));
  }
  if (c.null_model == "blockmodel" || c.null_model == "both") {
    const BlockModelFit fit = null_fit(c, g);
    json block = report::to_json(blockmodel_dob_zscore(g, fit, options));
    block["samples"] = c.samples;
    block["fit"] = report::to_json(fit);
    doc["blockmodel"] = std::move(block);
  }
  Sink(c.out, out).write(dump(doc));
  return kOk;
}

int cmd_robustness(const Config& c, std::ostream& out) {
  const SignedGraph g = load_graph(c);
  const Partitioned part = compute_partition(c, g);
  if (part.partition.block_count() < 2) throw ValidationError("robustness needs a partition with at least 2 blocks");
  Classification classes = classify_all(g, part.partition, c.tol);
  const Matrix<double> certainty =
      bootstrap_certainty(g, part.partition, BootstrapOptions{c.bootstrap_k, c.tol, c.seed, Threads{c.threads}});
  attach_robustness(classes.pairs, certainty);
  const Sink sink(c.out, out);
  if (c.format == "csv") {
    std::ostringstream t;
    t << "r,s,label,category,certainty\n";
    for (const PairRelation& r : classes.pairs) {
      t << r.r << ',' << r.s << ',' << r.label() << ',' << to_string(r.category) << ','
        << csv_number(r.robustness) << '\n';
    }
    sink.write(t.str());
    return kOk;
  }
  json doc = report::document("robustness", metadata(c));
  doc["replicates"] = c.bootstrap_k;
  doc["partition"] = partition_json(part, g);
  doc["classification"] = report::to_json(classes);
  doc["certainty"] = report::matrix(certainty);
  sink.write(dump(doc));
  return kOk;
}

int cmd_synth(const Config& c, std::ostream& out) {
  PlantedParams params = c.planted;
  params.seed = c.seed;
  const PlantedGraph planted = generate_planted(params);
  std::ostringstream edges;
  write_edge_list(edges, planted.graph);
  Sink(c.out, out).write(edges.str());
  if (!c.truth.empty()) {
    // Isolated nodes do not survive an edge list round trip, so leave them out.
    std::ostringstream truth;
    truth << "node,label\n";
    for (NodeId u = 0; u < planted.graph.node_count(); ++u) {
      if (planted.graph.degree(u) > 0) truth << planted.graph.label(u) << ',' << planted.truth.block(u) << '\n';
    }
    Sink::write_file(c.truth, truth.str());
  }
  return kOk;
}

int cmd_sweep(const Config& c, std::ostream& out) {
  SweepOptions options;
  options.ratios = c.ratios;
  for (const std::string& m : c.methods) options.methods.push_back(parse_method(m));
  options.replicates = c.replicates;
  options.seed = c.seed;
  options.b_max = c.bmax;
  options.blockmodel_restarts = c.blockmodel_restarts;
  options.louvain_restarts = c.louvain_restarts;
  options.threads = Threads{c.threads};
  const SweepResult result = run_sweep(c.planted, options);

  json doc = report::document("sweep", metadata(c));
  json cells = json::array();
  for (const SweepCell& cell : result.cells) cells.push_back(report::to_json(cell));
  doc["cells"] = cells;

  if (c.format == "json") {
    Sink(c.out, out).write(dump(doc));
    return kOk;
  }
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  Sink(c.out, out).write(csv.str());
  if (!c.out.empty()) Sink::write_file(c.out + ".json", dump(doc));
  return kOk;
}

void add_common(CLI::App* sub, Config& c, bool formats) {
  sub->add_option("--input", c.input, "Signed edge list (src dst weight)")->required();
  sub->add_flag("--undirected", c.undirected, "Treat each line as one undirected edge");
  sub->add_flag("--lcc", c.lcc, "Restrict to the largest connected component");
  sub->add_option("--out", c.out, "Output file (default: stdout)");
  sub->add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();
  if (formats) sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void add_partitioning(CLI::App* sub, Config& c) {
  sub->add_option("--method", c.method, "Partitioning method")
      ->check(CLI::IsMember({"louvain", "spectral", "blockmodel", "import"}))
      ->capture_default_str();
  sub->add_option("--partition", c.partition, "node,label CSV for --method import");
  sub->add_option("--bmax", c.bmax, "Largest block count tried by the block model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--k", c.k, "Spectral cluster count")->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))->capture_default_str();
  sub->add_option("--louvain-restarts", c.louvain_restarts)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--blockmodel-restarts", c.blockmodel_restarts)->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--tol", c.tol, "Density comparison tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();
}

void add_seed(CLI::App* sub, Config& c) {
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void add_planted(CLI::App* sub, Config& c) {
  sub->add_option("--n", c.planted.n, "Node count")->capture_default_str();
  sub->add_option("--groups", c.planted.groups, "Planted group count")->capture_default_str();
  sub->add_option("--p-pos-in", c.planted.p_pos_in)->capture_default_str();
  sub->add_option("--p-neg-in", c.planted.p_neg_in)->capture_default_str();
  sub->add_option("--p-pos-out", c.planted.p_pos_out)->capture_default_str();
  sub->add_option("--p-neg-out", c.planted.p_neg_out)->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Meso-scale structure of signed networks"};
  app.set_version_flag("--version", SIGNEDMESO_VERSION);
  app.require_subcommand(1);

  std::map<std::string, std::function<int(const Config&, std::ostream&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, auto handler) {
    handlers[name] = handler;
    return app.add_subcommand(name, help);
  };

  auto* stats = add("stats", "Descriptive statistics", cmd_stats);
  add_common(stats, c, true);

  auto* partition = add("partition", "Partition the network", cmd_partition);
  add_common(partition, c, true);
  add_partitioning(partition, c);
  add_seed(partition, c);

  auto* analyze = add("analyze", "Full meso-scale analysis", cmd_analyze);
  add_common(analyze, c, false);
  analyze->get_option("--out")->description("Output directory (default: one JSON document on stdout)");
  add_partitioning(analyze, c);
  add_seed(analyze, c);
  analyze->add_option("--samples", c.samples, "Sign-shuffle samples for triad z-scores (0 skips)")->capture_default_str();
  analyze->add_option("--bootstrap-k", c.bootstrap_k, "Bootstrap replicates (0 skips)")->capture_default_str();

  auto* frustration = add("frustration", "Frustration indices", cmd_frustration);
  add_common(frustration, c, true);
  add_partitioning(frustration, c);
  add_seed(frustration, c);

  auto* triads = add("triads", "Triad census", cmd_triads);
  add_common(triads, c, true);

  auto* null = add("null", "Null-model z-scores", cmd_null);
  add_common(null, c, false);
  add_seed(null, c);
  null->add_option("--null", c.null_model, "Null model")
      ->check(CLI::IsMember({"sign-shuffle", "blockmodel", "both"}))
      ->capture_default_str();
  null->add_option("--samples", c.samples, "Null-model samples (default 1000)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  null->add_option("--fit", c.fit, "Block-model fit JSON for the block-model null");
  null->add_option("--partition", c.partition, "node,label CSV to fit the block-model null at");
  null->add_option("--bmax", c.bmax, "Largest block count when fitting")->check(CLI::PositiveNumber)->capture_default_str();

  auto* robustness = add("robustness", "Bootstrap certainty of pair types", cmd_robustness);
  add_common(robustness, c, true);
  add_partitioning(robustness, c);
  add_seed(robustness, c);
  robustness->add_option("--bootstrap-k", c.bootstrap_k, "Bootstrap replicates (default 100)")
      ->check(CLI::PositiveNumber);

  auto* synth = add("synth", "Generate a planted signed partition", cmd_synth);
  synth->add_option("--out", c.out, "Edge list output (default: stdout)");
  synth->add_option("--truth", c.truth, "Write the planted partition as node,label CSV");
  add_seed(synth, c);
  synth->add_option("--threads", c.threads, "Accepted for uniformity; generation is sequential")->capture_default_str();
  add_planted(synth, c);

  auto* sweep = add("sweep", "Recovery sweep over P-/P+ ratios", cmd_sweep);
  sweep->add_option("--out", c.out, "CSV output; a .json metadata sidecar is written next to it");
  sweep->add_option("--format", c.format, "Output format (default csv)")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();
  add_seed(sweep, c);
  add_planted(sweep, c);
  sweep->add_option("--ratios", c.ratios, "P-/P+ ratios")->delimiter(',')->capture_default_str();
  sweep->add_option("--methods", c.methods, "Methods")
      ->delimiter(',')
      ->check(CLI::IsMember({"louvain", "spectral", "blockmodel", "oracle"}))
      ->capture_default_str();
  sweep->add_option("--replicates", c.replicates)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--bmax", c.bmax)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--louvain-restarts", c.louvain_restarts)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--blockmodel-restarts", c.blockmodel_restarts)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << SIGNEDMESO_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return kUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  // Subcommands share one Config, so per-command defaults are applied here.
  auto unset = [chosen](const char* name) {
    const CLI::Option* o = chosen->get_option_no_throw(name);
    return o != nullptr && o->count() == 0;
  };
  if (c.command == "null" && unset("--samples")) c.samples = 1000;
  if (c.command == "robustness" && unset("--bootstrap-k")) c.bootstrap_k = 100;
  if (c.command == "sweep" && unset("--format")) c.format = "csv";
  if (const CLI::Option* m = chosen->get_option_no_throw("--method"); m && m->count() == 0 && !c.partition.empty()) {
    c.method = "import";
  }
  try {
    return handlers.at(c.command)(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace signedmeso::cli
