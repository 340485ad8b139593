#include "signedmeso/blockmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "signedmeso/error.hpp"

namespace signedmeso {

namespace {

constexpr double kGainEpsilon = 1e-10;

double xlogx_ratio(double count, double total) {
  return count > 0.0 ? count * std::log(count / total) : 0.0;
}

// Maximized log-likelihood contribution of one block pair.
double pair_term(double e_pos, double e_neg, double dyads) {
  if (dyads <= 0.0) return 0.0;
  return xlogx_ratio(e_pos, dyads) + xlogx_ratio(e_neg, dyads) + xlogx_ratio(dyads - e_pos - e_neg, dyads);
}

double dyad_count(double size_r, double size_s, bool same) {
  return same ? size_r * (size_r - 1.0) / 2.0 : size_r * size_s;
}

// Edge counts per block pair (symmetric; the diagonal counts internal edges).
struct BlockState {
  std::size_t blocks = 0;
  std::vector<double> size;
  Matrix<double> pos;
  Matrix<double> neg;

  BlockState(const SignedGraph& g, std::span<const BlockId> assignment, std::size_t b)
      : blocks(b), size(b, 0.0), pos(Matrix<double>::square(b)), neg(Matrix<double>::square(b)) {
    for (BlockId x : assignment) size[x] += 1.0;
    for (const Edge& e : g.edges()) add(assignment[e.u], assignment[e.v], e.sign, 1.0);
  }

  void add(std::size_t r, std::size_t s, Sign sign, double amount) {
    Matrix<double>& m = sign == Sign::positive ? pos : neg;
    m(r, s) += amount;
    if (r != s) m(s, r) += amount;
  }

  double term(std::size_t r, std::size_t s) const {
    return pair_term(pos(r, s), neg(r, s), dyad_count(size[r], size[s], r == s));
  }

  double log_likelihood() const {
    double total = 0.0;
    for (std::size_t r = 0; r < blocks; ++r) {
      for (std::size_t s = r; s < blocks; ++s) total += term(r, s);
    }
    return total;
  }
};

// Change in log-likelihood from moving a node with per-block edge counts
// (kp, kn) from block a to block b.
double move_delta(const BlockState& st, std::size_t a, std::size_t b, const std::vector<double>& kp,
                  const std::vector<double>& kn) {
  auto new_size = [&](std::size_t t) { return st.size[t] - (t == a ? 1.0 : 0.0) + (t == b ? 1.0 : 0.0); };
  // Edges from the node to block t move from pair (a, t) to pair (b, t).
  auto shifted = [&](const Matrix<double>& m, const std::vector<double>& k, std::size_t x, std::size_t y) {
    double v = m(x, y);
    if (x == a || y == a) v -= (x == a && y == a) ? k[a] : k[x == a ? y : x];
    if (x == b || y == b) v += (x == b && y == b) ? k[b] : k[x == b ? y : x];
    return v;
  };

  double delta = 0.0;
  auto account = [&](std::size_t x, std::size_t y) {
    const double before = st.term(x, y);
    const double after =
        pair_term(shifted(st.pos, kp, x, y), shifted(st.neg, kn, x, y), dyad_count(new_size(x), new_size(y), x == y));
    delta += after - before;
  };
  for (std::size_t t = 0; t < st.blocks; ++t) {
    account(std::min(a, t), std::max(a, t));
    if (t != a) account(std::min(b, t), std::max(b, t));
  }
  return delta;
}

struct GreedyResult {
  std::vector<BlockId> assignment;
  double dl = 0.0;
};

GreedyResult greedy_fit(const SignedGraph& g, std::size_t blocks, rng::Engine& gen) {
  const std::size_t n = g.node_count();
  std::vector<BlockId> assignment(n, 0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng::shuffle(std::span(order), gen);
  for (std::size_t i = 0; i < n; ++i) {
    assignment[order[i]] = i < blocks ? static_cast<BlockId>(i)
                                      : static_cast<BlockId>(rng::uniform_index(gen, blocks));
  }

  BlockState st(g, assignment, blocks);
  std::vector<double> kp(blocks, 0.0);
  std::vector<double> kn(blocks, 0.0);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    rng::shuffle(std::span(order), gen);
    bool improved = false;
    for (NodeId u : order) {
      const BlockId a = assignment[u];
      if (st.size[a] <= 1.0) continue;
      std::fill(kp.begin(), kp.end(), 0.0);
      std::fill(kn.begin(), kn.end(), 0.0);
      for (const Neighbor& nb : g.neighbors(u)) {
        (nb.sign == Sign::positive ? kp : kn)[assignment[nb.node]] += 1.0;
      }
      BlockId best = a;
      double best_gain = kGainEpsilon;
      for (BlockId b = 0; b < blocks; ++b) {
        if (b == a) continue;
        const double gain = move_delta(st, a, b, kp, kn);
        if (gain > best_gain) {
          best_gain = gain;
          best = b;
        }
      }
      if (best == a) continue;
      for (const Neighbor& nb : g.neighbors(u)) {
        const BlockId t = assignment[nb.node];
        st.add(a, t, nb.sign, -1.0);
        st.add(best, t, nb.sign, 1.0);
      }
      st.size[a] -= 1.0;
      st.size[best] += 1.0;
      assignment[u] = best;
      improved = true;
    }
    if (!improved) break;
  }

  const Partition p = Partition::compact(std::span<const BlockId>(assignment));
  return {std::vector<BlockId>(p.assignment().begin(), p.assignment().end()),
          -st.log_likelihood() + description_length_penalty(n, blocks)};
}

bool better(double dl, std::size_t blocks, std::span<const BlockId> assignment, const BlockModelFit& incumbent) {
  const double diff = dl - incumbent.description_length;
  if (diff < -1e-9) return true;
  if (diff > 1e-9) return false;
  const std::size_t inc_blocks = incumbent.partition.block_count();
  if (blocks != inc_blocks) return blocks < inc_blocks;
  const auto other = incumbent.partition.assignment();
  return std::lexicographical_compare(assignment.begin(), assignment.end(), other.begin(), other.end());
}

}  // namespace

double blockmodel_log_likelihood(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  return BlockState(g, p.assignment(), p.block_count()).log_likelihood();
}

double description_length_penalty(std::size_t node_count, std::size_t block_count) {
  const double n = static_cast<double>(node_count);
  const double b = static_cast<double>(block_count);
  const double dyads = n * (n - 1.0) / 2.0;
  const double per_parameter = dyads > 1.0 ? std::log(dyads) : 0.0;
  const double labels = block_count > 0 ? n * std::log(b) : 0.0;
  return b * (b + 1.0) * per_parameter / 2.0 + labels;
}

double description_length(const SignedGraph& g, const Partition& p) {
  return -blockmodel_log_likelihood(g, p) + description_length_penalty(g.node_count(), p.block_count());
}

BlockModelFit fit_at_partition(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  const std::size_t b = p.block_count();
  const BlockState st(g, p.assignment(), b);
  BlockModelFit fit;
  fit.partition = p;
  fit.p_pos = Matrix<double>::square(b);
  fit.p_neg = Matrix<double>::square(b);
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t s = 0; s < b; ++s) {
      const double dyads = dyad_count(st.size[r], st.size[s], r == s);
      if (dyads > 0) {
        fit.p_pos(r, s) = st.pos(r, s) / dyads;
        fit.p_neg(r, s) = st.neg(r, s) / dyads;
      }
    }
  }
  fit.log_likelihood = st.log_likelihood();
  fit.description_length = -fit.log_likelihood + description_length_penalty(g.node_count(), b);
  return fit;
}

BlockModelFit fit_blockmodel_fixed(const SignedGraph& g, std::size_t blocks, const BlockModelOptions& options) {
  if (blocks < 1 || blocks > g.node_count()) {
    throw ValidationError("blockmodel: block count must be in [1, N]");
  }
  const unsigned restarts = std::max(1u, options.restarts);
  std::vector<GreedyResult> runs(restarts);
  parallel_for(restarts, options.threads, [&](std::size_t r) {
    rng::Engine gen = rng::stream(options.seed, "blockmodel", {blocks, r});
    runs[r] = greedy_fit(g, blocks, gen);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    const double diff = runs[r].dl - runs[best].dl;
    if (diff < -1e-9 || (diff <= 1e-9 && runs[r].assignment < runs[best].assignment)) best = r;
  }
  return fit_at_partition(g, Partition(std::move(runs[best].assignment)));
}

BlockModelFit fit_blockmodel(const SignedGraph& g, const BlockModelOptions& options) {
  if (options.b_max < 1) throw ValidationError("blockmodel: b_max must be at least 1");
  if (g.node_count() == 0) throw ValidationError("blockmodel: empty graph");

  const std::size_t b_max = std::min(options.b_max, g.node_count());
  const unsigned restarts = std::max(1u, options.restarts);
  const std::size_t tasks = b_max * restarts;
  std::vector<GreedyResult> runs(tasks);
  parallel_for(tasks, options.threads, [&](std::size_t t) {
    const std::size_t blocks = t / restarts + 1;
    const std::size_t r = t % restarts;
    rng::Engine gen = rng::stream(options.seed, "blockmodel", {blocks, r});
    runs[t] = greedy_fit(g, blocks, gen);
  });

  BlockModelFit best;
  best.description_length = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t blocks = t / restarts + 1;
    if (best.partition.node_count() == 0 || better(runs[t].dl, blocks, runs[t].assignment, best)) {
      best.partition = Partition(runs[t].assignment);
      best.description_length = runs[t].dl;
    }
  }
  return fit_at_partition(g, best.partition);
}

SignedGraph sample_from_blockmodel(const BlockModelFit& fit, rng::Engine& gen, std::vector<std::string> labels) {
  const std::size_t n = fit.partition.node_count();
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    const BlockId r = fit.partition.block(i);
    for (NodeId j = i + 1; j < n; ++j) {
      const BlockId s = fit.partition.block(j);
      const double pp = fit.p_pos(r, s);
      const double pn = fit.p_neg(r, s);
      if (pp <= 0.0 && pn <= 0.0) continue;
      const double x = rng::uniform01(gen);
      if (x < pp) {
        edges.push_back({i, j, Sign::positive});
      } else if (x < pp + pn) {
        edges.push_back({i, j, Sign::negative});
      }
    }
  }
  return SignedGraph(n, std::move(edges), std::move(labels));
}

SignedGraph sample_from_blockmodel(const BlockModelFit& fit, std::uint64_t seed, std::vector<std::string> labels) {
  rng::Engine gen = rng::stream(seed, "blockmodel.sample");
  return sample_from_blockmodel(fit, gen, std::move(labels));
}

}  // namespace signedmeso
