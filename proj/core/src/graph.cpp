#include "signedmeso/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "signedmeso/error.hpp"

namespace signedmeso {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line, EdgeListFormat format) {
  std::vector<std::string_view> fields;
  if (format == EdgeListFormat::csv) {
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return fields;
  }
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_header(const std::vector<std::string_view>& f) {
  return f.size() == 3 && iequals(f[0], "source") && iequals(f[1], "target") && iequals(f[2], "weight");
}

std::optional<double> parse_weight(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double w = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(w)) return std::nullopt;
  return w;
}

}  // namespace

SignedGraph::SignedGraph(std::size_t node_count, std::vector<Edge> edges,
                         std::vector<std::string> labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (node_count_ > std::numeric_limits<NodeId>::max()) {
    throw ValidationError("node count exceeds NodeId range");
  }
  if (labels_.empty()) {
    labels_.reserve(node_count_);
    for (std::size_t i = 0; i < node_count_; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != node_count_) {
    throw ValidationError("label count does not match node count");
  }

  for (Edge& e : edges_) {
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ValidationError("self-loop on node " + labels_[e.u]);
    if (e.sign != Sign::positive && e.sign != Sign::negative) {
      throw ValidationError("edge sign must be +1 or -1");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ValidationError("repeated edge {" + labels_[edges_[i].u] + ", " + labels_[edges_[i].v] + "}");
    }
  }

  std::vector<std::size_t> degree(node_count_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
    if (e.sign == Sign::positive) ++positive_count_;
  }
  offsets_.assign(node_count_ + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Lower neighbors first, then higher; both passes follow the (u, v) edge
  // order, so every neighbor list ends up sorted.
  for (const Edge& e : edges_) adjacency_[cursor[e.v]++] = {e.u, e.sign};
  for (const Edge& e : edges_) adjacency_[cursor[e.u]++] = {e.v, e.sign};
}

std::optional<Sign> SignedGraph::sign(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v,
                                   [](const Neighbor& n, NodeId x) { return n.node < x; });
  if (it == nb.end() || it->node != v) return std::nullopt;
  return it->sign;
}

SignedGraph SignedGraph::with_signs(std::span<const Sign> signs) const {
  if (signs.size() != edges_.size()) throw ValidationError("sign vector size mismatch");
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].sign = signs[i];
  return SignedGraph(node_count_, std::move(edges), labels_);
}

SignedGraph SignedGraph::flipped() const {
  std::vector<Sign> signs;
  signs.reserve(edges_.size());
  for (const Edge& e : edges_) signs.push_back(flip(e.sign));
  return with_signs(signs);
}

DirectedSignedGraph load_edge_list(std::istream& in, EdgeListFormat format) {
  DirectedSignedGraph graph;
  std::unordered_map<std::string, NodeId> ids;
  std::unordered_set<std::uint64_t> seen;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(graph.labels.size()));
    if (inserted) graph.labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == '%') continue;
    const auto fields = split_fields(text, format);
    if (!seen_data && is_header(fields)) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 fields 'source target weight', got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty node label");
    const auto weight = parse_weight(fields[2]);
    if (!weight) throw ParseError(line_no, "invalid weight '" + std::string(fields[2]) + "'");
    if (*weight == 0.0) throw ParseError(line_no, "zero weight is not a signed edge");

    const NodeId s = intern(fields[0]);
    const NodeId t = intern(fields[1]);
    if (s == t) {
      ++graph.dropped_self_loops;
      continue;
    }
    if (!seen.insert(pair_key(s, t)).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate arc " +
                            std::string(fields[0]) + " -> " + std::string(fields[1]));
    }
    graph.arcs.push_back({s, t, *weight});
  }
  if (in.bad()) throw Error("read failure");
  graph.node_count = graph.labels.size();
  return graph;
}

DirectedSignedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  const auto format = path.extension() == ".csv" ? EdgeListFormat::csv : EdgeListFormat::plain;
  return load_edge_list(in, format);
}

SignedGraph symmetrize(const DirectedSignedGraph& directed) {
  struct Pair {
    double forward = 0.0;   // weight of lo -> hi
    double backward = 0.0;  // weight of hi -> lo
  };
  std::unordered_map<std::uint64_t, Pair> pairs;
  std::vector<std::uint64_t> order;
  for (const Arc& a : directed.arcs) {
    const NodeId lo = std::min(a.source, a.target);
    const NodeId hi = std::max(a.source, a.target);
    auto [it, inserted] = pairs.try_emplace(pair_key(lo, hi));
    if (inserted) order.push_back(pair_key(lo, hi));
    (a.source == lo ? it->second.forward : it->second.backward) = a.weight;
  }

  std::vector<Edge> edges;
  edges.reserve(order.size());
  for (std::uint64_t key : order) {
    const Pair& p = pairs.at(key);
    Sign sign;
    if (p.forward * p.backward < 0.0) {
      sign = Sign::negative;
    } else {
      sign = p.forward + p.backward > 0.0 ? Sign::positive : Sign::negative;
    }
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), sign});
  }
  return SignedGraph(directed.node_count, std::move(edges), directed.labels);
}

SignedGraph undirected_from_arcs(const DirectedSignedGraph& directed) {
  std::vector<Edge> edges;
  edges.reserve(directed.arcs.size());
  for (const Arc& a : directed.arcs) {
    edges.push_back({a.source, a.target, a.weight > 0 ? Sign::positive : Sign::negative});
  }
  return SignedGraph(directed.node_count, std::move(edges), directed.labels);
}

SignedGraph largest_connected_component(const SignedGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return g;

  std::vector<std::uint32_t> component(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::size_t> sizes;
  std::vector<NodeId> queue;
  for (NodeId start = 0; start < n; ++start) {
    if (component[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto c = static_cast<std::uint32_t>(sizes.size());
    component[start] = c;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Neighbor& nb : g.neighbors(queue[head])) {
        if (component[nb.node] == std::numeric_limits<std::uint32_t>::max()) {
          component[nb.node] = c;
          queue.push_back(nb.node);
        }
      }
    }
    sizes.push_back(queue.size());
  }

  // Components are numbered by their smallest node, so max_element's
  // first-maximum rule implements the tie-break.
  const auto best = static_cast<std::uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[best] == n) return g;

  std::vector<NodeId> new_id(n, 0);
  std::vector<std::string> labels;
  NodeId next = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (component[u] == best) {
      new_id[u] = next++;
      labels.push_back(g.label(u));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (component[e.u] == best) edges.push_back({new_id[e.u], new_id[e.v], e.sign});
  }
  return SignedGraph(next, std::move(edges), std::move(labels));
}

GraphStats descriptive_stats(const SignedGraph& g) {
  GraphStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.positive_edges = g.positive_edge_count();
  s.negative_edges = g.negative_edge_count();
  s.neg_pos_ratio = s.positive_edges == 0
                        ? std::numeric_limits<double>::infinity()
                        : static_cast<double>(s.negative_edges) / static_cast<double>(s.positive_edges);
  if (s.nodes > 0) s.mean_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
  if (s.nodes >= 2) {
    s.density = 2.0 * static_cast<double>(s.edges) /
                (static_cast<double>(s.nodes) * static_cast<double>(s.nodes - 1));
  }
  return s;
}

void write_edge_list(std::ostream& out, const SignedGraph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << value(e.sign) << '\n';
  }
}

}  // namespace signedmeso
