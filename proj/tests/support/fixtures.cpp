#include "fixtures.hpp"

#include "signedmeso/rng.hpp"

namespace fixtures {

using signedmeso::Edge;
using signedmeso::NodeId;
using signedmeso::Sign;

SignedGraph g2x3() {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = u + 1; v < 6; ++v) edges.push_back({u, v, (u < 3) == (v < 3) ? Sign::positive : Sign::negative});
  }
  return SignedGraph(6, std::move(edges));
}

Partition g2x3_blocks() { return Partition({0, 0, 0, 1, 1, 1}); }

SignedGraph bridged_cliques() {
  std::vector<Edge> edges;
  for (NodeId base : {0u, 4u}) {
    for (NodeId u = 0; u < 4; ++u) {
      for (NodeId v = u + 1; v < 4; ++v) edges.push_back({base + u, base + v, Sign::positive});
    }
  }
  edges.push_back({3, 4, Sign::positive});
  return SignedGraph(8, std::move(edges));
}

SignedGraph complete_positive(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, Sign::positive});
  }
  return SignedGraph(n, std::move(edges));
}

SignedGraph random_signed(std::size_t n, double p, double neg, std::uint64_t seed) {
  auto gen = signedmeso::rng::stream(seed, "test.random_signed");
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (signedmeso::rng::uniform01(gen) >= p) continue;
      edges.push_back({u, v, signedmeso::rng::uniform01(gen) < neg ? Sign::negative : Sign::positive});
    }
  }
  return SignedGraph(n, std::move(edges));
}

std::vector<SignedGraph> small_suite(std::size_t max_nodes) {
  std::vector<SignedGraph> suite;
  suite.push_back(g2x3());
  suite.push_back(g2x3().flipped());
  suite.push_back(SignedGraph(2, {{0, 1, Sign::positive}}));
  suite.push_back(SignedGraph(2, {{0, 1, Sign::negative}}));
  suite.push_back(complete_positive(5));
  if (max_nodes >= 8) suite.push_back(bridged_cliques());
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = std::min<std::size_t>(max_nodes, 5 + seed % 4);
    suite.push_back(random_signed(n, 0.6, 0.4, seed));
  }
  return suite;
}

}  // namespace fixtures
