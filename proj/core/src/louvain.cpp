#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "signedmeso/error.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

namespace {

constexpr double kGainEpsilon = 1e-10;

struct Link {
  std::uint32_t node;
  double pos;
  double neg;
};

// Weighted graph of one Louvain level. Links exclude edges folded inside a
// super node; degrees still count them.
struct LevelGraph {
  std::size_t n = 0;
  double m_pos = 0.0;
  double m_neg = 0.0;
  std::vector<double> k_pos;
  std::vector<double> k_neg;
  std::vector<std::size_t> offsets;
  std::vector<Link> links;

  std::span<const Link> neighbors(std::size_t u) const {
    return {links.data() + offsets[u], links.data() + offsets[u + 1]};
  }
};

LevelGraph base_level(const SignedGraph& g) {
  LevelGraph level;
  level.n = g.node_count();
  level.m_pos = static_cast<double>(g.positive_edge_count());
  level.m_neg = static_cast<double>(g.negative_edge_count());
  level.k_pos.assign(level.n, 0.0);
  level.k_neg.assign(level.n, 0.0);
  level.offsets.assign(level.n + 1, 0);
  for (NodeId u = 0; u < level.n; ++u) {
    level.offsets[u + 1] = level.offsets[u] + g.degree(u);
    for (const Neighbor& nb : g.neighbors(u)) {
      const bool positive = nb.sign == Sign::positive;
      level.links.push_back({nb.node, positive ? 1.0 : 0.0, positive ? 0.0 : 1.0});
      (positive ? level.k_pos[u] : level.k_neg[u]) += 1.0;
    }
  }
  return level;
}

LevelGraph aggregate(const LevelGraph& fine, const std::vector<std::uint32_t>& comm, std::size_t nc) {
  LevelGraph coarse;
  coarse.n = nc;
  coarse.m_pos = fine.m_pos;
  coarse.m_neg = fine.m_neg;
  coarse.k_pos.assign(nc, 0.0);
  coarse.k_neg.assign(nc, 0.0);

  std::vector<std::vector<std::uint32_t>> members(nc);
  for (std::uint32_t u = 0; u < fine.n; ++u) {
    members[comm[u]].push_back(u);
    coarse.k_pos[comm[u]] += fine.k_pos[u];
    coarse.k_neg[comm[u]] += fine.k_neg[u];
  }

  std::vector<double> wp(nc, 0.0);
  std::vector<double> wn(nc, 0.0);
  std::vector<std::uint32_t> touched;
  coarse.offsets.assign(nc + 1, 0);
  for (std::uint32_t c = 0; c < nc; ++c) {
    touched.clear();
    for (std::uint32_t u : members[c]) {
      for (const Link& l : fine.neighbors(u)) {
        const std::uint32_t d = comm[l.node];
        if (d == c) continue;
        if (wp[d] == 0.0 && wn[d] == 0.0) touched.push_back(d);
        wp[d] += l.pos;
        wn[d] += l.neg;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      coarse.links.push_back({d, wp[d], wn[d]});
      wp[d] = 0.0;
      wn[d] = 0.0;
    }
    coarse.offsets[c + 1] = coarse.links.size();
  }
  return coarse;
}

// Relabels comm to 0..nc-1 in first-occurrence order; returns nc.
std::size_t renumber(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> map(comm.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (map[c] == UINT32_MAX) map[c] = next++;
    c = map[c];
  }
  return next;
}

// Repeated sweeps of best-gain single-node moves until no node moves.
// Returns true if any node changed community.
bool local_moves(const LevelGraph& g, std::vector<std::uint32_t>& comm, rng::Engine& gen) {
  const std::size_t n = g.n;
  const double inv_pos = g.m_pos > 0 ? 1.0 / (2.0 * g.m_pos) : 0.0;
  const double inv_neg = g.m_neg > 0 ? 1.0 / (2.0 * g.m_neg) : 0.0;

  std::vector<double> d_pos(n, 0.0);
  std::vector<double> d_neg(n, 0.0);
  std::vector<std::size_t> size(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    d_pos[comm[u]] += g.k_pos[u];
    d_neg[comm[u]] += g.k_neg[u];
    ++size[comm[u]];
  }
  std::vector<std::uint32_t> empty;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (size[c] == 0) empty.push_back(c);
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng::shuffle(std::span(order), gen);

  std::vector<double> wp(n, 0.0);
  std::vector<double> wn(n, 0.0);
  std::vector<char> is_candidate(n, 0);
  std::vector<std::uint32_t> candidates;

  bool any_move = false;
  for (int pass = 0; pass < 1000; ++pass) {
    bool moved = false;
    for (std::uint32_t u : order) {
      const std::uint32_t old = comm[u];
      candidates.clear();
      auto add_candidate = [&](std::uint32_t c) {
        if (!is_candidate[c]) {
          is_candidate[c] = 1;
          candidates.push_back(c);
        }
      };
      for (const Link& l : g.neighbors(u)) {
        const std::uint32_t c = comm[l.node];
        wp[c] += l.pos;
        wn[c] += l.neg;
        add_candidate(c);
      }

      d_pos[old] -= g.k_pos[u];
      d_neg[old] -= g.k_neg[u];
      --size[old];
      add_candidate(old);
      // Non-adjacent communities can still gain through the negative null term.
      if (g.k_neg[u] > 0) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (size[c] > 0 && d_neg[c] > 0) add_candidate(c);
        }
      }
      if (size[old] > 0 && !empty.empty()) add_candidate(empty.back());

      auto gain = [&](std::uint32_t c) {
        return (2.0 * wp[c] - 2.0 * g.k_pos[u] * d_pos[c] * inv_pos) -
               (2.0 * wn[c] - 2.0 * g.k_neg[u] * d_neg[c] * inv_neg);
      };
      std::sort(candidates.begin(), candidates.end());
      std::uint32_t best = old;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::uint32_t c : candidates) {
        const double gc = gain(c);
        if (gc > best_gain) {
          best_gain = gc;
          best = c;
        }
      }
      if (best != old && !(best_gain > gain(old) + kGainEpsilon)) best = old;

      for (std::uint32_t c : candidates) {
        wp[c] = 0.0;
        wn[c] = 0.0;
        is_candidate[c] = 0;
      }

      if (best != old) {
        // An empty target is always the top of the free list.
        if (size[best] == 0) empty.pop_back();
        if (size[old] == 0) empty.push_back(old);
        moved = true;
      }
      comm[u] = best;
      d_pos[best] += g.k_pos[u];
      d_neg[best] += g.k_neg[u];
      ++size[best];
    }
    if (!moved) break;
    any_move = true;
  }
  return any_move;
}

std::vector<std::uint32_t> louvain_run(const SignedGraph& g, rng::Engine& gen) {
  const LevelGraph base = base_level(g);
  std::vector<std::uint32_t> membership(base.n);
  std::iota(membership.begin(), membership.end(), 0u);

  LevelGraph level = base;
  for (;;) {
    std::vector<std::uint32_t> comm(level.n);
    std::iota(comm.begin(), comm.end(), 0u);
    const bool moved = local_moves(level, comm, gen);
    const std::size_t nc = renumber(comm);
    for (auto& m : membership) m = comm[m];
    if (!moved || nc == level.n) break;
    level = aggregate(level, comm, nc);
  }

  // Aggregation can leave single nodes that would gain from moving on their
  // own; polish at node level so the result is single-move stable.
  local_moves(base, membership, gen);
  renumber(membership);
  return membership;
}

}  // namespace

Partition louvain_signed(const SignedGraph& g, const LouvainOptions& options) {
  if (g.node_count() == 0) throw ValidationError("louvain: empty graph");
  const unsigned restarts = std::max(1u, options.restarts);

  struct Result {
    std::vector<std::uint32_t> membership;
    double q = 0.0;
  };
  std::vector<Result> results(restarts);
  parallel_for(restarts, options.threads, [&](std::size_t r) {
    rng::Engine gen = rng::stream(options.seed, "louvain", {r});
    results[r].membership = louvain_run(g, gen);
    results[r].q = signed_modularity(g, Partition(results[r].membership)).q_signed;
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (results[r].q > results[best].q + 1e-12) best = r;
  }
  return Partition::compact(std::span<const std::uint32_t>(results[best].membership));
}

}  // namespace signedmeso
