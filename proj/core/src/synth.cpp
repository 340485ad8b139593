#include "signedmeso/synth.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "signedmeso/balance.hpp"
#include "signedmeso/blockmodel.hpp"
#include "signedmeso/error.hpp"
#include "signedmeso/mesoscale.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void mean_std(const std::vector<double>& xs, double& mean, double& stddev) {
  mean = 0.0;
  stddev = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void validate(const PlantedParams& params) {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(name) + " must lie in [0, 1]");
  };
  probability(params.p_pos_in, "P+ (p_pos_in)");
  probability(params.p_neg_in, "P- (p_neg_in)");
  probability(params.p_pos_out, "eps+ (p_pos_out)");
  probability(params.p_neg_out, "eps- (p_neg_out)");
  if (params.p_pos_in + params.p_neg_in > 1.0) throw ValidationError("P+ + P- <= 1 violated");
  if (params.p_pos_out + params.p_neg_out > 1.0) throw ValidationError("eps+ + eps- <= 1 violated");
  if (params.groups == 0) throw ValidationError("group count must be positive");
  if (params.n % params.groups != 0) throw ValidationError("n must be divisible by the group count");
}

PlantedGraph generate_planted(const PlantedParams& params) {
  validate(params);
  const std::size_t size = params.n / params.groups;
  std::vector<BlockId> truth(params.n);
  for (std::size_t i = 0; i < params.n; ++i) truth[i] = static_cast<BlockId>(i / size);

  rng::Engine gen = rng::stream(params.seed, "planted");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < params.n; ++i) {
    for (NodeId j = i + 1; j < params.n; ++j) {
      const bool inside = truth[i] == truth[j];
      const double pp = inside ? params.p_pos_in : params.p_pos_out;
      const double pn = inside ? params.p_neg_in : params.p_neg_out;
      const double x = rng::uniform01(gen);
      if (x < pp) {
        edges.push_back({i, j, Sign::positive});
      } else if (x < pp + pn) {
        edges.push_back({i, j, Sign::negative});
      }
    }
  }
  return {SignedGraph(params.n, std::move(edges)), Partition(std::move(truth))};
}

std::string to_string(Method m) {
  switch (m) {
    case Method::louvain: return "louvain";
    case Method::spectral: return "spectral";
    case Method::blockmodel: return "blockmodel";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

Method parse_method(const std::string& id) {
  for (Method m : {Method::louvain, Method::spectral, Method::blockmodel, Method::oracle}) {
    if (to_string(m) == id) return m;
  }
  throw ValidationError("unknown method '" + id + "'");
}

double balanced_pair_fraction(const SignedGraph& g, const Partition& p) {
  if (p.block_count() < 2) return 0.0;
  const Classification c = classify_all(g, p);
  std::size_t balanced = 0;
  for (const PairRelation& rel : c.pairs) balanced += rel.category == BalanceCategory::balanced;
  return static_cast<double>(balanced) / static_cast<double>(c.pairs.size());
}

Partition partition_with(Method method, const SignedGraph& g, const Partition& truth, std::uint64_t seed,
                         const SweepOptions& options) {
  switch (method) {
    case Method::oracle: return truth;
    case Method::louvain: return louvain_signed(g, LouvainOptions{seed, options.louvain_restarts, {}});
    case Method::spectral: return spectral_signed(g, SpectralOptions{truth.block_count(), seed, 50});
    case Method::blockmodel:
      return fit_blockmodel(g, BlockModelOptions{options.b_max, seed, options.blockmodel_restarts, {}}).partition;
  }
  throw ValidationError("unknown method");
}

SweepResult run_sweep(const PlantedParams& base, const SweepOptions& options) {
  if (options.replicates < 1) throw ValidationError("sweep: replicates must be at least 1");
  if (options.methods.empty()) throw ValidationError("sweep: no methods given");
  for (double ratio : options.ratios) {
    PlantedParams p = base;
    p.p_neg_in = ratio * base.p_pos_in;
    validate(p);
  }

  const std::size_t nr = options.ratios.size();
  const std::size_t nm = options.methods.size();
  const std::size_t reps = options.replicates;

  struct Outcome {
    double nmi = 0.0;
    double balanced = 0.0;
  };
  std::vector<Outcome> outcomes(nr * nm * reps);
  // One task per (ratio, replicate) so each planted graph is generated once.
  parallel_for(nr * reps, options.threads, [&](std::size_t task) {
    const std::size_t ri = task / reps;
    const std::size_t rep = task % reps;
    PlantedParams params = base;
    params.p_neg_in = options.ratios[ri] * base.p_pos_in;
    params.seed = rng::derive_seed(options.seed, "sweep.graph", {ri, rep});
    const PlantedGraph planted = generate_planted(params);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const std::uint64_t method_seed = rng::derive_seed(options.seed, "sweep.method", {ri, mi, rep});
      const Partition found = partition_with(options.methods[mi], planted.graph, planted.truth, method_seed, options);
      outcomes[(ri * nm + mi) * reps + rep] = {nmi(found, planted.truth),
                                               balanced_pair_fraction(planted.graph, found)};
    }
  });

  SweepResult result;
  for (std::size_t ri = 0; ri < nr; ++ri) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      std::vector<double> nmis;
      std::vector<double> fracs;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const Outcome& o = outcomes[(ri * nm + mi) * reps + rep];
        nmis.push_back(o.nmi);
        fracs.push_back(o.balanced);
      }
      SweepCell cell;
      cell.ratio = options.ratios[ri];
      cell.method = options.methods[mi];
      cell.replicates = reps;
      mean_std(nmis, cell.nmi_mean, cell.nmi_std);
      mean_std(fracs, cell.balanced_frac_mean, cell.balanced_frac_std);
      result.cells.push_back(cell);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "ratio,method,replicates,nmi_mean,nmi_std,balanced_frac_mean,balanced_frac_std\n";
  for (const SweepCell& c : result.cells) {
    out << format_double(c.ratio) << ',' << to_string(c.method) << ',' << c.replicates << ','
        << format_double(c.nmi_mean) << ',' << format_double(c.nmi_std) << ','
        << format_double(c.balanced_frac_mean) << ',' << format_double(c.balanced_frac_std) << '\n';
  }
}

}  // namespace signedmeso
