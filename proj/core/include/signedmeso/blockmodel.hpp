#pragma once

// Two-channel Bernoulli block model.
//
// Every dyad {i, j} is positive, negative, or absent with probabilities
// (p_pos[r][s], p_neg[r][s], 1 - p_pos - p_neg) where r, s are the blocks of
// i and j. The number of blocks is selected by the description length
//
//   DL = -log L + B(B+1)/2 * ln(N(N-1)/2) + N ln B
//
// evaluated at the maximum-likelihood probabilities.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "signedmeso/graph.hpp"
#include "signedmeso/matrix.hpp"
#include "signedmeso/parallel.hpp"
#include "signedmeso/partition.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

struct BlockModelFit {
  Partition partition;
  Matrix<double> p_pos;  // symmetric B x B
  Matrix<double> p_neg;
  double log_likelihood = 0.0;
  double description_length = 0.0;
};

struct BlockModelOptions {
  std::size_t b_max = 6;
  std::uint64_t seed = 0;
  unsigned restarts = 8;
  Threads threads;
};

/// Maximum-likelihood log-likelihood of g under partition p.
double blockmodel_log_likelihood(const SignedGraph& g, const Partition& p);

/// Model-complexity part of the description length.
double description_length_penalty(std::size_t node_count, std::size_t block_count);

/// DL of g under p at the MLE probabilities.
double description_length(const SignedGraph& g, const Partition& p);

/// MLE probabilities for a given partition.
BlockModelFit fit_at_partition(const SignedGraph& g, const Partition& p);

/// Greedy DL minimization at exactly B blocks (B <= N), best of
/// options.restarts seeded runs.
BlockModelFit fit_blockmodel_fixed(const SignedGraph& g, std::size_t blocks, const BlockModelOptions& options);

/// Fits B = 1..min(b_max, N) and returns the fit with the smallest DL. Ties go
/// to the smaller B, then the lexicographically smaller assignment.
BlockModelFit fit_blockmodel(const SignedGraph& g, const BlockModelOptions& options);

/// Draws one network from the fitted model; node i keeps block
/// fit.partition.block(i). Labels are taken from `labels` when given.
SignedGraph sample_from_blockmodel(const BlockModelFit& fit, std::uint64_t seed,
                                   std::vector<std::string> labels = {});

SignedGraph sample_from_blockmodel(const BlockModelFit& fit, rng::Engine& gen,
                                   std::vector<std::string> labels = {});

}  // namespace signedmeso
