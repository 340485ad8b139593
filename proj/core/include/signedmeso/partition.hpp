#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "signedmeso/graph.hpp"

namespace signedmeso {

using BlockId = std::uint32_t;

/// Node -> block assignment with contiguous labels 0..B-1, every block
/// nonempty.
class Partition {
 public:
  Partition() = default;

  /// Validates that labels are contiguous from 0 and every block is used.
  explicit Partition(std::vector<BlockId> assignment);

  /// Relabels arbitrary integer labels to 0..B-1 in first-occurrence order.
  template <typename Label>
  static Partition compact(std::span<const Label> labels);
  static Partition compact(const std::vector<std::int64_t>& labels) {
    return compact(std::span<const std::int64_t>(labels));
  }

  /// All nodes in one block.
  static Partition single_block(std::size_t node_count) {
    return Partition(std::vector<BlockId>(node_count, 0));
  }

  std::size_t node_count() const noexcept { return assignment_.size(); }
  std::size_t block_count() const noexcept { return sizes_.size(); }
  BlockId block(NodeId u) const { return assignment_.at(u); }
  std::span<const BlockId> assignment() const noexcept { return assignment_; }
  std::span<const std::size_t> block_sizes() const noexcept { return sizes_; }

  /// Same partition with labels renumbered in first-occurrence order.
  Partition canonical() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<BlockId> assignment_;
  std::vector<std::size_t> sizes_;
};

template <typename Label>
Partition Partition::compact(std::span<const Label> labels) {
  std::vector<BlockId> out(labels.size());
  std::map<Label, BlockId> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = seen.try_emplace(labels[i], static_cast<BlockId>(seen.size())).first->second;
  }
  return Partition(std::move(out));
}

/// Throws ValidationError unless p covers exactly the nodes of g.
void require_covers(const SignedGraph& g, const Partition& p);

/// Reads "node,label" CSV (header optional). Node names are matched against
/// the graph's labels; block labels are compacted in first-occurrence order.
/// Throws ValidationError listing missing, unknown, or duplicate nodes.
Partition import_partition(std::istream& in, const SignedGraph& g);

/// Writes "node,label" CSV with a header, using graph labels for nodes.
void write_partition(std::ostream& out, const SignedGraph& g, const Partition& p);

}  // namespace signedmeso
