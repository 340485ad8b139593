#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "signedmeso/graph.hpp"
#include "signedmeso/parallel.hpp"
#include "signedmeso/partition.hpp"

namespace signedmeso {

/// Planted signed partition: `groups` equal groups of consecutive node ids.
/// Each dyad is independently positive, negative or absent, with (P+, P-)
/// inside a group and (eps+, eps-) between groups.
struct PlantedParams {
  std::size_t n = 180;
  std::size_t groups = 3;
  double p_pos_in = 0.2;
  double p_neg_in = 0.0;
  double p_pos_out = 0.01;
  double p_neg_out = 0.01;
  std::uint64_t seed = 0;
};

/// Throws ValidationError naming the first violated constraint.
void validate(const PlantedParams& params);

struct PlantedGraph {
  SignedGraph graph;
  Partition truth;
};

PlantedGraph generate_planted(const PlantedParams& params);

enum class Method { louvain, spectral, blockmodel, oracle };

std::string to_string(Method m);
/// Throws ValidationError on an unknown id.
Method parse_method(const std::string& id);

struct SweepOptions {
  std::vector<double> ratios;  // P- / P+
  std::vector<Method> methods;
  std::size_t replicates = 20;
  std::uint64_t seed = 0;
  std::size_t b_max = 6;             // blockmodel
  unsigned blockmodel_restarts = 8;  // blockmodel
  unsigned louvain_restarts = 8;
  Threads threads;
};

struct SweepCell {
  double ratio = 0.0;
  Method method = Method::oracle;
  std::size_t replicates = 0;
  double nmi_mean = 0.0;
  double nmi_std = 0.0;
  double balanced_frac_mean = 0.0;
  double balanced_frac_std = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // ratio-major, then method order
};

/// Fraction of community pairs classified (A+, D-) or (A+, D'-); 0 when
/// the partition has a single block.
double balanced_pair_fraction(const SignedGraph& g, const Partition& p);

/// Partitions g with the given method. `truth` is returned for the oracle
/// method; spectral uses k = truth.block_count().
Partition partition_with(Method method, const SignedGraph& g, const Partition& truth, std::uint64_t seed,
                         const SweepOptions& options);

/// For every (ratio, method, replicate): generates a planted graph with
/// P- = ratio * P+, partitions it, and records NMI against the truth and the
/// balanced-pair fraction. Graphs depend on (seed, ratio, replicate) only, so
/// all methods see the same networks. Standard deviations are sample
/// standard deviations (0 for one replicate).
SweepResult run_sweep(const PlantedParams& base, const SweepOptions& options);

/// "ratio,method,replicates,nmi_mean,nmi_std,balanced_frac_mean,balanced_frac_std".
void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace signedmeso
