#pragma once

#include <cstddef>
#include <cstdint>

#include "signedmeso/graph.hpp"
#include "signedmeso/parallel.hpp"
#include "signedmeso/partition.hpp"

namespace signedmeso {

/// Newman modularity of each sign channel and their signed combination
///   q_signed = (2L+ q_pos - 2L- q_neg) / (2L+ + 2L-).
/// A channel without edges contributes 0.
struct ModularityScore {
  double q_pos = 0.0;
  double q_neg = 0.0;
  double q_signed = 0.0;
};

ModularityScore signed_modularity(const SignedGraph& g, const Partition& p);

struct LouvainOptions {
  std::uint64_t seed = 0;
  unsigned restarts = 16;
  Threads threads;
};

/// Multi-level Louvain on the signed modularity. Each restart visits nodes in
/// a seeded random order; the best restart wins (earliest on ties). The
/// returned partition is stable under single-node moves, including moves to
/// a new singleton block.
Partition louvain_signed(const SignedGraph& g, const LouvainOptions& options);

inline Partition louvain_signed(const SignedGraph& g, std::uint64_t seed, unsigned restarts) {
  return louvain_signed(g, LouvainOptions{seed, restarts, {}});
}

struct SpectralOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  unsigned kmeans_restarts = 50;
};

/// k-means (k-means++ seeding) on the eigenvectors of the k smallest
/// eigenvalues of the signed Laplacian D - A, where D holds unsigned degrees
/// and A the +-1 adjacency. Dense eigensolver; meant for a few thousand nodes.
/// Throws ValidationError unless 2 <= k <= N.
Partition spectral_signed(const SignedGraph& g, const SpectralOptions& options);

inline Partition spectral_signed(const SignedGraph& g, std::size_t k, std::uint64_t seed) {
  return spectral_signed(g, SpectralOptions{k, seed, 50});
}

}  // namespace signedmeso
