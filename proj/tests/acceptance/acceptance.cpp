// Acceptance checks. Usage: signedmeso_acceptance [criterion...]
// Prints one PASS/FAIL/SKIP line per criterion. Exit status: 0 when all
// selected criteria pass, 77 when every selected criterion was skipped,
// 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "signedmeso/balance.hpp"
#include "signedmeso/blockmodel.hpp"
#include "signedmeso/graph.hpp"
#include "signedmeso/mesoscale.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/synth.hpp"

namespace fs = std::filesystem;
using namespace signedmeso;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status;
  std::string detail;
};

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(const std::string& name, double got, double want, double tol) {
    std::ostringstream s;
    s << name << "=" << std::setprecision(6) << got << " (want " << want << " +- " << tol << ")";
    notes_.push_back(s.str());
    expect(std::abs(got - want) <= tol, s.str());
  }
  void note(const std::string& s) { notes_.push_back(s); }

  Outcome outcome() const {
    std::ostringstream s;
    const auto& list = failures_.empty() ? notes_ : failures_;
    for (std::size_t i = 0; i < list.size(); ++i) s << (i ? "; " : "") << list[i];
    return {failures_.empty() ? Status::pass : Status::fail, s.str()};
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::optional<fs::path> find_dataset(const std::string& stem) {
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("SIGNEDMESO_DATA_DIR")) dirs.emplace_back(env);
  dirs.emplace_back(fs::path(SIGNEDMESO_TEST_DATA) / "external");
  for (const auto& d : dirs) {
    for (const char* ext : {".txt", ".csv", ".tsv"}) {
      const fs::path p = d / (stem + ext);
      if (fs::exists(p)) return p;
    }
  }
  return std::nullopt;
}

SignedGraph load_network(const fs::path& path) {
  return largest_connected_component(symmetrize(load_edge_list(path)));
}

const char* kNewGuinea = "new_guinea_tribes";

Outcome new_guinea_descriptive() {
  const auto path = find_dataset(kNewGuinea);
  if (!path) return {Status::skip, "new_guinea_tribes edge list not found (set SIGNEDMESO_DATA_DIR)"};
  const auto start = std::chrono::steady_clock::now();
  const SignedGraph g = load_network(*path);
  const GraphStats s = descriptive_stats(g);
  const TriadCensus c = triad_census(g);
  const double elapsed = seconds_since(start);

  Checks k;
  k.expect(s.nodes == 16, "N=" + std::to_string(s.nodes) + " (want 16)");
  k.expect(s.edges == 58, "L=" + std::to_string(s.edges) + " (want 58)");
  k.near("L-/L+", s.neg_pos_ratio, 1.0, 0.005);
  k.near("<k>", s.mean_degree, 7.25, 0.005);
  k.near("c", s.density, 0.48, 0.005);
  k.expect(c.fractions.has_value(), "no triangles");
  if (c.fractions) {
    const double want[4] = {0.279, 0.029, 0.588, 0.103};
    for (std::size_t i = 0; i < 4; ++i) k.near(std::string("T") + kTriadNames[i], (*c.fractions)[i], want[i], 0.002);
    k.near("DoB", *c.dob, 0.867, 0.002);
  }
  k.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s (limit 1 s)");
  return k.outcome();
}

Outcome new_guinea_zscores() {
  const auto path = find_dataset(kNewGuinea);
  if (!path) return {Status::skip, "new_guinea_tribes edge list not found (set SIGNEDMESO_DATA_DIR)"};
  const auto start = std::chrono::steady_clock::now();
  const SignedGraph g = load_network(*path);
  const MotifZScores z = sign_shuffle_zscores(g, NullModelOptions{10000, 1, Threads{0}});
  const double elapsed = seconds_since(start);

  Checks k;
  const double want[4] = {4.48, -6.28, 3.70, -0.42};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!z.motifs[i].z) {
      k.expect(false, std::string("z(") + kTriadNames[i] + ") degenerate");
      continue;
    }
    k.near(std::string("z") + kTriadNames[i], *z.motifs[i].z, want[i], 0.6);
  }
  k.expect(elapsed < 30.0, "runtime " + fmt(elapsed) + " s (limit 30 s)");
  return k.outcome();
}

Outcome recovery_sweep() {
  const auto start = std::chrono::steady_clock::now();
  PlantedParams base;  // N=180, g=3, P+=0.2, eps+=eps-=0.01
  SweepOptions options;
  options.ratios = {0.0, 0.5, 1.0, 1.5, 2.0};
  options.methods = {Method::louvain, Method::blockmodel};
  options.replicates = 20;
  options.seed = 1;
  options.threads = Threads{0};
  const SweepResult r = run_sweep(base, options);
  const double elapsed = seconds_since(start);

  std::map<std::pair<double, Method>, SweepCell> cells;
  for (const SweepCell& c : r.cells) cells[{c.ratio, c.method}] = c;
  Checks k;
  for (double ratio : options.ratios) {
    const SweepCell& lv = cells.at({ratio, Method::louvain});
    const SweepCell& bm = cells.at({ratio, Method::blockmodel});
    k.note("ratio " + fmt(ratio, 1) + ": nmi bm/lv " + fmt(bm.nmi_mean) + "/" + fmt(lv.nmi_mean) + ", balanced bm/lv " +
           fmt(bm.balanced_frac_mean) + "/" + fmt(lv.balanced_frac_mean));
    k.expect(bm.nmi_mean >= 0.95, "blockmodel NMI " + fmt(bm.nmi_mean) + " < 0.95 at ratio " + fmt(ratio, 1));
    if (ratio * base.p_pos_in < base.p_neg_out) {
      k.expect(lv.nmi_mean >= 0.95, "louvain NMI " + fmt(lv.nmi_mean) + " < 0.95 at ratio " + fmt(ratio, 1));
    }
    if (ratio >= 1.0) {
      k.expect(lv.balanced_frac_mean >= bm.balanced_frac_mean + 0.3,
               "balanced fraction louvain " + fmt(lv.balanced_frac_mean) + " vs blockmodel " +
                   fmt(bm.balanced_frac_mean) + " at ratio " + fmt(ratio, 1));
    }
  }
  k.note("runtime " + fmt(elapsed, 1) + " s");
  k.expect(elapsed < 600.0, "runtime " + fmt(elapsed, 1) + " s (limit 600 s)");
  return k.outcome();
}

Outcome frustration_ordering() {
  const auto start = std::chrono::steady_clock::now();
  auto gen = rng::stream(1, "acceptance.frustration");
  auto draw_pair = [&gen] {
    for (;;) {
      const double a = rng::uniform01(gen);
      const double b = rng::uniform01(gen);
      if (a + b <= 1.0) return std::pair{a, b};
    }
  };
  std::map<BalanceCategory, std::pair<double, std::size_t>> sums;
  for (std::uint64_t i = 0; i < 300; ++i) {
    PlantedParams params;
    params.groups = 2 + i % 2;
    params.n = 60;
    std::tie(params.p_pos_in, params.p_neg_in) = draw_pair();
    std::tie(params.p_pos_out, params.p_neg_out) = draw_pair();
    params.seed = i;
    const PlantedGraph pg = generate_planted(params);
    const Classification c = classify_all(pg.graph, pg.truth);
    const FrustrationReport f = frustration_report(pg.graph, pg.truth, c.pairs);
    for (const PairRelation& rel : c.pairs) {
      if (!f.pairwise(rel.r, rel.s)) continue;
      auto& [sum, n] = sums[rel.category];
      sum += *f.pairwise(rel.r, rel.s);
      ++n;
    }
  }
  const double elapsed = seconds_since(start);

  Checks k;
  auto mean = [&](BalanceCategory c) {
    const auto& [sum, n] = sums[c];
    return n ? sum / double(n) : std::nan("");
  };
  const double b = mean(BalanceCategory::balanced);
  const double u = mean(BalanceCategory::unbalanced);
  const double a = mean(BalanceCategory::anti_balanced);
  k.note("mean FI balanced " + fmt(b) + " (" + std::to_string(sums[BalanceCategory::balanced].second) + " pairs), unbalanced " +
         fmt(u) + " (" + std::to_string(sums[BalanceCategory::unbalanced].second) + "), anti-balanced " + fmt(a) + " (" +
         std::to_string(sums[BalanceCategory::anti_balanced].second) + ")");
  k.expect(!std::isnan(b) && !std::isnan(u) && !std::isnan(a), "suite does not cover all three categories");
  k.expect(u - b >= 0.1, "unbalanced - balanced = " + fmt(u - b) + " < 0.1");
  k.expect(a - u >= 0.1, "anti-balanced - unbalanced = " + fmt(a - u) + " < 0.1");
  k.expect(elapsed < 60.0, "runtime " + fmt(elapsed, 1) + " s (limit 60 s)");
  return k.outcome();
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Checks k;
  std::size_t triad_mismatch = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 20 + (seed * 37) % 181;
    const SignedGraph g = fixtures::random_signed(n, std::min(0.9, 15.0 / double(n)), 0.1 + 0.015 * double(seed), seed);
    const TriadCensus c = triad_census(g);
    const auto want = oracles::trace_triad_counts(g);
    for (std::size_t i = 0; i < 4; ++i) triad_mismatch += std::abs(double(c.counts[i]) - want[i]) > 1e-6;
  }
  k.expect(triad_mismatch == 0, std::to_string(triad_mismatch) + " triad counts differ from the trace formulas");

  std::size_t louvain_cases = 0, louvain_bad = 0;
  for (const SignedGraph& g : fixtures::small_suite(8)) {
    double best = -2.0;
    oracles::for_each_set_partition(g.node_count(), [&](const Partition& p) {
      best = std::max(best, oracles::modularity_by_definition(g, p));
    });
    const double got = signed_modularity(g, louvain_signed(g, 1, 64)).q_signed;
    ++louvain_cases;
    louvain_bad += std::abs(got - best) > 1e-9;
  }
  k.expect(louvain_bad == 0, std::to_string(louvain_bad) + " Louvain fits below the exhaustive optimum");

  std::size_t bm_cases = 0, bm_bad = 0;
  for (const SignedGraph& g : fixtures::small_suite(8)) {
    double best = std::numeric_limits<double>::infinity();
    oracles::for_each_set_partition(g.node_count(), [&](const Partition& p) { best = std::min(best, description_length(g, p)); });
    const double got = fit_blockmodel(g, BlockModelOptions{g.node_count(), 1, 64, {}}).description_length;
    ++bm_cases;
    bm_bad += std::abs(got - best) > 1e-9;
  }
  k.expect(bm_bad == 0, std::to_string(bm_bad) + " block-model fits above the exhaustive DL optimum");
  const double elapsed = seconds_since(start);
  k.note("50 triad graphs, " + std::to_string(louvain_cases) + " Louvain and " + std::to_string(bm_cases) +
         " block-model fixtures match");
  k.expect(elapsed < 300.0, "runtime " + fmt(elapsed, 1) + " s (limit 300 s)");
  return k.outcome();
}

Outcome exact_fixtures() {
  const auto start = std::chrono::steady_clock::now();
  Checks k;
  const SignedGraph g = fixtures::g2x3();
  const Partition p = fixtures::g2x3_blocks();

  const PairRelation r = classify_all(g, p).pairs.at(0);
  k.expect(r.label() == "A+|D-", "label " + r.label() + " (want A+|D-)");
  k.expect(r.score == 2, "score " + std::to_string(r.score) + " (want 2)");
  k.expect(*pairwise_frustration(g, p)(0, 1) == 0.0, "FI not 0");
  k.expect(*triad_census(g).dob == 1.0, "DoB not 1");
  const double certainty = bootstrap_certainty(g, p, BootstrapOptions{200, kDefaultTolerance, 1, {}})(0, 1);
  k.expect(certainty == 1.0, "bootstrap certainty " + fmt(certainty) + " (want 1.0)");

  const SignedGraph f = g.flipped();
  const PairRelation rf = classify_all(f, p).pairs.at(0);
  k.expect(rf.label() == "D+|A-", "flipped label " + rf.label() + " (want D+|A-)");
  k.expect(rf.score == -2, "flipped score " + std::to_string(rf.score) + " (want -2)");
  k.expect(*pairwise_frustration(f, p)(0, 1) == 1.0, "flipped FI not 1");

  const double elapsed = seconds_since(start);
  k.note("(A+,D-) +2 FI 0 DoB 1 certainty " + fmt(certainty) + "; flipped (D+,A-) -2 FI 1");
  k.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s (limit 1 s)");
  return k.outcome();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "signedmeso_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "signedmeso");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(int(argv.size()), argv.data(), o, e);
    out = o.str() + e.str();
    return code;
  };

  Checks k;
  std::string scratch;
  const std::string graph = (dir / "planted.txt").string();
  const std::string truth = (dir / "truth.csv").string();
  k.expect(run({"synth", "--n", "60", "--p-neg-in", "0.1", "--seed", "3", "--out", graph, "--truth", truth}, scratch) == 0,
           "synth failed: " + scratch);

  const std::vector<std::vector<std::string>> commands{
      {"synth", "--n", "90", "--seed", "5"},
      {"partition", "--input", graph, "--method", "louvain", "--seed", "2"},
      {"partition", "--input", graph, "--method", "spectral", "--k", "3", "--seed", "2"},
      {"partition", "--input", graph, "--method", "blockmodel", "--seed", "2"},
      {"analyze", "--input", graph, "--seed", "4", "--samples", "50", "--bootstrap-k", "20"},
      {"frustration", "--input", graph, "--method", "louvain", "--seed", "4"},
      {"null", "--input", graph, "--null", "both", "--samples", "50", "--seed", "6"},
      {"robustness", "--input", graph, "--partition", truth, "--bootstrap-k", "30", "--seed", "7"},
      {"sweep", "--n", "45", "--ratios", "0,1", "--methods", "louvain,spectral,blockmodel,oracle", "--replicates", "2",
       "--seed", "8"},
  };
  std::size_t identical = 0;
  for (auto cmd : commands) {
    cmd.insert(cmd.end(), {"--threads", "1"});
    std::string first, second;
    const int a = run(cmd, first);
    const int b = run(cmd, second);
    const bool ok = a == 0 && b == 0 && first == second && !first.empty();
    identical += ok;
    k.expect(ok, cmd.front() + " output differs between runs or failed (" + std::to_string(a) + ")");
  }
  k.note(std::to_string(identical) + "/" + std::to_string(commands.size()) + " stochastic commands byte-identical");
  fs::remove_all(dir);
  return k.outcome();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "New Guinea Tribes descriptive statistics", new_guinea_descriptive},
      {2, "New Guinea Tribes sign-shuffle z-scores", new_guinea_zscores},
      {3, "planted-partition recovery sweep", recovery_sweep},
      {4, "frustration ordering across categories", frustration_ordering},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "exact two-triangle fixtures", exact_fixtures},
      {7, "single-threaded determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& c : all) selected.push_back(c.id);
  }

  int passed = 0, failed = 0, skipped = 0;
  for (int id : selected) {
    const auto it = std::find_if(all.begin(), all.end(), [id](const Criterion& c) { return c.id == id; });
    if (it == all.end()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = it->check();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::cout << tag << " criterion " << id << " (" << it->title << "): " << o.detail << std::endl;
    (o.status == Status::pass ? passed : o.status == Status::fail ? failed : skipped)++;
  }
  if (failed > 0) return 1;
  if (passed == 0 && skipped > 0) return 77;
  return 0;
}
