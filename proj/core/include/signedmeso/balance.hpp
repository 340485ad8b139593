#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "signedmeso/blockmodel.hpp"
#include "signedmeso/graph.hpp"
#include "signedmeso/matrix.hpp"
#include "signedmeso/mesoscale.hpp"
#include "signedmeso/parallel.hpp"
#include "signedmeso/partition.hpp"

namespace signedmeso {

/// Triangle sign patterns, indexed by the number of negative edges.
enum class Triad : std::uint8_t { ppp = 0, ppn = 1, pnn = 2, nnn = 3 };

inline constexpr std::array<const char*, 4> kTriadNames{"+++", "++-", "+--", "---"};

struct TriadCensus {
  std::array<std::uint64_t, 4> counts{};
  // Unset when the graph has no triangles.
  std::optional<std::array<double, 4>> fractions;
  std::optional<double> dob;   // +++ and +--
  std::optional<double> wdob;  // dob plus ---

  std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

TriadCensus triad_census(const SignedGraph& g);

/// Every triangle as the indices (into g.edges()) of its three edges.
std::vector<std::array<std::uint32_t, 3>> triangle_edges(const SignedGraph& g);

struct MotifZScore {
  double observed = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  std::optional<double> z;  // unset when the null distribution is degenerate
};

struct MotifZScores {
  std::array<MotifZScore, 4> motifs;
  std::size_t samples = 0;
};

struct NullModelOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  Threads threads;
};

/// Z-scores of triad counts against networks with the same edges and a
/// uniformly permuted sign multiset. Throws ValidationError if samples < 2.
MotifZScores sign_shuffle_zscores(const SignedGraph& g, const NullModelOptions& options);

struct DobZScore {
  double observed = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  std::optional<double> z;
  std::size_t used = 0;     // samples with at least one triangle
  std::size_t skipped = 0;  // triangle-free samples
  bool degenerate = false;
};

/// DoB of g against networks drawn from a block-model fit. Throws
/// ValidationError if samples < 2 or g has no triangles.
DobZScore blockmodel_dob_zscore(const SignedGraph& g, const BlockModelFit& fit, const NullModelOptions& options);

/// FI_rs = (L+_rs + L-_rr + L-_ss) / (L_rr + L_ss + L_rs); unset when the
/// denominator is 0 and on the diagonal.
Matrix<std::optional<double>> pairwise_frustration(const SignedGraph& g, const Partition& p);

/// Share of edges misplaced by the partition (negative inside, positive
/// between). Throws ValidationError on a graph without edges.
double overall_frustration(const SignedGraph& g, const Partition& p);

struct FrustrationReport {
  double overall = 0.0;
  Matrix<std::optional<double>> pairwise;
  std::map<BalanceCategory, std::optional<double>> category_means;
};

/// Pairwise and overall indices, with pairwise values averaged per balance
/// category of the given relations.
FrustrationReport frustration_report(const SignedGraph& g, const Partition& p,
                                     const std::vector<PairRelation>& relations);

/// 2 I(p; u) / (H(p) + H(u)), natural logs. Two single-block partitions
/// score 1.
double nmi(const Partition& p, const Partition& u);

}  // namespace signedmeso
