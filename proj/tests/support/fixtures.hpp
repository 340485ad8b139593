#pragma once

#include <cstdint>
#include <vector>

#include "signedmeso/graph.hpp"
#include "signedmeso/partition.hpp"

namespace fixtures {

using signedmeso::Partition;
using signedmeso::SignedGraph;

/// Two positive triangles {0,1,2}, {3,4,5}; all nine cross pairs negative.
SignedGraph g2x3();
Partition g2x3_blocks();

/// Two positive 4-cliques joined by the single positive edge (3, 4).
SignedGraph bridged_cliques();

/// Complete graph on n nodes, every edge positive.
SignedGraph complete_positive(std::size_t n);

/// G(n, p) with each present edge negative with probability neg.
SignedGraph random_signed(std::size_t n, double p, double neg, std::uint64_t seed);

/// Small graphs used by the exhaustive-search checks, all with n <= max_nodes.
std::vector<SignedGraph> small_suite(std::size_t max_nodes);

}  // namespace fixtures
