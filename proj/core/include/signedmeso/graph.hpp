#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace signedmeso {

using NodeId = std::uint32_t;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr int value(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept {
  return s == Sign::positive ? Sign::negative : Sign::positive;
}

/// One weighted arc of a directed signed network.
struct Arc {
  NodeId source;
  NodeId target;
  double weight;

  bool operator==(const Arc&) const = default;
};

/// Directed signed network as read from disk. Node ids are contiguous;
/// labels[i] is the input label that was remapped to id i.
struct DirectedSignedGraph {
  std::size_t node_count = 0;
  std::vector<Arc> arcs;
  std::vector<std::string> labels;
  std::size_t dropped_self_loops = 0;
};

struct Edge {
  NodeId u;  // u < v
  NodeId v;
  Sign sign;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  NodeId node;
  Sign sign;
};

/// Simple undirected graph with +1/-1 edge signs. Immutable after
/// construction; edges are stored once per unordered pair, sorted by (u, v),
/// with a sorted adjacency list per node.
class SignedGraph {
 public:
  SignedGraph() = default;

  /// Builds the graph from edges given in any orientation. Throws
  /// ValidationError on self-loops, out-of-range ids, or repeated pairs.
  /// Empty `labels` means "0", "1", ... are used.
  SignedGraph(std::size_t node_count, std::vector<Edge> edges,
              std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t positive_edge_count() const noexcept { return positive_count_; }
  std::size_t negative_edge_count() const noexcept { return edges_.size() - positive_count_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(NodeId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  /// Sign of the edge {u, v}, if present.
  std::optional<Sign> sign(NodeId u, NodeId v) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeId u) const { return labels_.at(u); }

  /// Same topology and labels with per-edge signs replaced; signs[i] applies
  /// to edges()[i].
  SignedGraph with_signs(std::span<const Sign> signs) const;

  /// Every sign negated.
  SignedGraph flipped() const;

 private:
  std::size_t node_count_ = 0;
  std::size_t positive_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<std::string> labels_;
};

/// Descriptive statistics of a signed graph.
struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t positive_edges = 0;
  std::size_t negative_edges = 0;
  double neg_pos_ratio = 0.0;  // +inf when there are no positive edges
  double mean_degree = 0.0;
  double density = 0.0;
};

enum class EdgeListFormat { plain, csv };

/// Parses "source target weight" lines (whitespace or commas). Lines starting
/// with '#' and a "source,target,weight" header are skipped. Self-loops are
/// dropped and counted; zero weights and repeated ordered pairs are errors.
DirectedSignedGraph load_edge_list(std::istream& in, EdgeListFormat format = EdgeListFormat::plain);
DirectedSignedGraph load_edge_list(const std::filesystem::path& path);

/// Collapses arc pairs into undirected signed edges: opposite signs give a
/// negative edge, otherwise the sign of the summed weights.
SignedGraph symmetrize(const DirectedSignedGraph& directed);

/// Treats every arc as an undirected edge signed by its weight. Throws
/// ValidationError if an unordered pair appears twice.
SignedGraph undirected_from_arcs(const DirectedSignedGraph& directed);

/// Induced subgraph on the largest sign-blind connected component. Ties go to
/// the component with the smallest node id. Labels follow their nodes.
SignedGraph largest_connected_component(const SignedGraph& g);

GraphStats descriptive_stats(const SignedGraph& g);

/// Writes "u v sign" lines using node labels.
void write_edge_list(std::ostream& out, const SignedGraph& g);

}  // namespace signedmeso
