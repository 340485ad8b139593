#include "signedmeso/partition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

#include "signedmeso/error.hpp"

namespace signedmeso {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string join_limited(const std::vector<std::string>& items, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  if (items.size() > limit) out += ", ... (" + std::to_string(items.size()) + " total)";
  return out;
}

}  // namespace

Partition::Partition(std::vector<BlockId> assignment) : assignment_(std::move(assignment)) {
  for (BlockId b : assignment_) {
    if (b >= sizes_.size()) sizes_.resize(b + 1, 0);
    ++sizes_[b];
  }
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    if (sizes_[b] == 0) {
      throw ValidationError("partition labels are not contiguous: block " + std::to_string(b) + " is empty");
    }
  }
}

Partition Partition::canonical() const {
  return compact(std::span<const BlockId>(assignment_));
}

void require_covers(const SignedGraph& g, const Partition& p) {
  if (g.node_count() != p.node_count()) {
    throw ValidationError("partition covers " + std::to_string(p.node_count()) + " nodes but graph has " +
                          std::to_string(g.node_count()));
  }
}

Partition import_partition(std::istream& in, const SignedGraph& g) {
  std::unordered_map<std::string, NodeId> by_label;
  for (NodeId u = 0; u < g.node_count(); ++u) by_label.emplace(g.label(u), u);

  std::vector<std::string> block_of(g.node_count());
  std::vector<bool> assigned(g.node_count(), false);
  std::vector<std::string> file_order;  // block labels as first seen
  std::vector<std::string> unknown;
  std::vector<std::string> duplicate;

  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const std::size_t comma = text.find(',');
    if (comma == std::string_view::npos) throw ParseError(line_no, "expected 'node,label'");
    const std::string node(trim(text.substr(0, comma)));
    const std::string label(trim(text.substr(comma + 1)));
    if (first && node == "node" && label == "label") {
      first = false;
      continue;
    }
    first = false;
    if (node.empty() || label.empty()) throw ParseError(line_no, "empty field");

    const auto it = by_label.find(node);
    if (it == by_label.end()) {
      unknown.push_back(node);
      continue;
    }
    if (assigned[it->second]) {
      duplicate.push_back(node);
      continue;
    }
    assigned[it->second] = true;
    block_of[it->second] = label;
    file_order.push_back(label);
  }

  std::vector<std::string> missing;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!assigned[u]) missing.push_back(g.label(u));
  }
  std::string problems;
  if (!missing.empty()) problems += "missing nodes: " + join_limited(missing) + "; ";
  if (!unknown.empty()) problems += "unknown nodes: " + join_limited(unknown) + "; ";
  if (!duplicate.empty()) problems += "duplicate nodes: " + join_limited(duplicate) + "; ";
  if (!problems.empty()) {
    problems.resize(problems.size() - 2);
    throw ValidationError("partition file does not match graph: " + problems);
  }

  std::unordered_map<std::string, BlockId> ids;
  for (const std::string& label : file_order) ids.try_emplace(label, static_cast<BlockId>(ids.size()));
  std::vector<BlockId> assignment(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) assignment[u] = ids.at(block_of[u]);
  return Partition(std::move(assignment));
}

void write_partition(std::ostream& out, const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  out << "node,label\n";
  for (NodeId u = 0; u < g.node_count(); ++u) out << g.label(u) << ',' << p.block(u) << '\n';
}

}  // namespace signedmeso
