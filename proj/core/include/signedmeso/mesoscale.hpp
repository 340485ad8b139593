#pragma once

// Pairwise classification of communities from block edge densities.
//
// For every pair of blocks (r, s) each sign channel is assortative (A),
// core-periphery (C) or disassortative (D) depending on where the
// between-block density falls relative to the two within-block densities.
// Blocks are ordered per pair by their positive within-density, so the
// negative channel additionally carries a "prime" mark when its diagonal
// ordering is reversed. That gives 3 x 6 = 18 relation types.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signedmeso/graph.hpp"
#include "signedmeso/matrix.hpp"
#include "signedmeso/parallel.hpp"
#include "signedmeso/partition.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

inline constexpr double kDefaultTolerance = 1e-9;

/// Within- and between-block edge densities w+ and w-.
struct DensityPair {
  Matrix<double> w_pos;
  Matrix<double> w_neg;
  std::vector<std::size_t> block_sizes;

  std::size_t block_count() const noexcept { return block_sizes.size(); }
  /// Singleton blocks have no internal dyads; their diagonal is 0 by fiat.
  bool degenerate_diagonal(std::size_t r) const { return block_sizes.at(r) < 2; }
};

/// Off-diagonal: count / (N_r N_s). Diagonal: 2 count / (N_r (N_r - 1)).
DensityPair density_matrices(const SignedGraph& g, const Partition& p);

/// Same normalization applied to raw (possibly multiplicity-weighted)
/// symmetric count tables.
DensityPair densities_from_counts(const Matrix<double>& pos_counts, const Matrix<double>& neg_counts,
                                  std::span<const std::size_t> block_sizes);

enum class RelationType : std::uint8_t { assortative, core_periphery, disassortative };
enum class BalanceCategory : std::uint8_t { balanced, unbalanced, anti_balanced };

constexpr char letter(RelationType t) noexcept {
  switch (t) {
    case RelationType::assortative: return 'A';
    case RelationType::core_periphery: return 'C';
    case RelationType::disassortative: return 'D';
  }
  return '?';
}

std::string_view to_string(BalanceCategory c) noexcept;

struct PairRelation {
  BlockId r = 0;  // as requested
  BlockId s = 0;
  BlockId first = 0;  // block with the larger positive within-density
  BlockId second = 0;
  RelationType pos_type = RelationType::core_periphery;
  RelationType neg_type = RelationType::core_periphery;
  bool prime = false;
  int score = 0;
  BalanceCategory category = BalanceCategory::unbalanced;
  bool degenerate_pos = false;  // no positive edges within or between the pair
  bool degenerate_neg = false;
  bool low_confidence = false;  // a singleton block's diagonal was used
  std::optional<double> robustness;

  /// "A+|D'-" style label; one of relation_labels().
  std::string label() const;
};

/// The 18 relation labels, positive type major, negative type
/// (A, A', C, C', D, D') minor.
const std::array<std::string, 18>& relation_labels();

/// Classifies blocks r != s. Within tol of a diagonal counts as "between
/// the diagonals", so ties resolve to C.
PairRelation classify_pair(const DensityPair& d, BlockId r, BlockId s, double tol = kDefaultTolerance);

struct TypeCensus {
  std::map<std::string, std::size_t> counts;  // all 18 labels present
  std::size_t pairs = 0;
  std::string dominant;  // max count, ties -> lexicographically smallest
  std::vector<std::string> occurring;

  static TypeCensus from(const std::vector<PairRelation>& relations);
};

struct Classification {
  std::vector<PairRelation> pairs;  // (r, s) with r < s, row-major
  TypeCensus census;
};

/// Classifies all B(B-1)/2 pairs. Throws ValidationError when B < 2.
Classification classify_all(const SignedGraph& g, const Partition& p, double tol = kDefaultTolerance);

/// Draws `draws` indices from [0, population); the default samples uniformly
/// with replacement.
using Resampler = std::function<std::vector<std::size_t>(std::size_t population, std::size_t draws, rng::Engine&)>;

std::vector<std::size_t> resample_with_replacement(std::size_t population, std::size_t draws, rng::Engine& gen);

struct BootstrapOptions {
  std::size_t replicates = 100;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  Threads threads;
  Resampler resampler = resample_with_replacement;
};

/// Fraction of edge-resampled replicates whose 18-type label matches the
/// original, per block pair. Symmetric; the diagonal is NaN (unused).
Matrix<double> bootstrap_certainty(const SignedGraph& g, const Partition& p, const BootstrapOptions& options);

/// Writes certainty values into relations[i].robustness.
void attach_robustness(std::vector<PairRelation>& relations, const Matrix<double>& certainty);

}  // namespace signedmeso
