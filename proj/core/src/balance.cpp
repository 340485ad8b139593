#include "signedmeso/balance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "signedmeso/error.hpp"
#include "signedmeso/rng.hpp"

namespace signedmeso {

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Population moments, summed in index order.
Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  const double n = static_cast<double>(xs.size());
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / n);
  return m;
}

std::optional<double> zscore(double observed, const Moments& m) {
  // Relative guard so that round-off in a constant sample never yields a z.
  if (!(m.stddev > 1e-12 * std::max(1.0, std::abs(m.mean)))) return std::nullopt;
  return (observed - m.mean) / m.stddev;
}

std::array<std::uint64_t, 4> count_patterns(const std::vector<std::array<std::uint32_t, 3>>& triangles,
                                             const std::vector<Sign>& signs) {
  std::array<std::uint64_t, 4> counts{};
  for (const auto& t : triangles) {
    const int negatives = (signs[t[0]] == Sign::negative) + (signs[t[1]] == Sign::negative) +
                          (signs[t[2]] == Sign::negative);
    ++counts[negatives];
  }
  return counts;
}

}  // namespace

TriadCensus triad_census(const SignedGraph& g) {
  TriadCensus census;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nu = g.neighbors(u);
    for (const Neighbor& v : nu) {
      if (v.node <= u) continue;
      const auto nv = g.neighbors(v.node);
      // Merge the sorted neighbor lists, keeping w > v.
      auto a = std::upper_bound(nu.begin(), nu.end(), v.node,
                                [](NodeId x, const Neighbor& n) { return x < n.node; });
      auto b = std::upper_bound(nv.begin(), nv.end(), v.node,
                                [](NodeId x, const Neighbor& n) { return x < n.node; });
      while (a != nu.end() && b != nv.end()) {
        if (a->node < b->node) {
          ++a;
        } else if (b->node < a->node) {
          ++b;
        } else {
          const int negatives =
              (v.sign == Sign::negative) + (a->sign == Sign::negative) + (b->sign == Sign::negative);
          ++census.counts[negatives];
          ++a;
          ++b;
        }
      }
    }
  }

  const std::uint64_t total = census.total();
  if (total > 0) {
    std::array<double, 4> f{};
    for (std::size_t i = 0; i < 4; ++i) f[i] = static_cast<double>(census.counts[i]) / static_cast<double>(total);
    census.fractions = f;
    census.dob = f[0] + f[2];
    census.wdob = f[0] + f[2] + f[3];
  }
  return census;
}

std::vector<std::array<std::uint32_t, 3>> triangle_edges(const SignedGraph& g) {
  const auto edges = g.edges();
  // Edges are sorted by (u, v) with u < v.
  auto index_of = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    const auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{a, b}, [](const Edge& e, auto key) {
      return std::pair{e.u, e.v} < key;
    });
    return static_cast<std::uint32_t>(it - edges.begin());
  };

  std::vector<std::array<std::uint32_t, 3>> out;
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const NodeId u = edges[i].u;
    const NodeId v = edges[i].v;
    const auto nu = g.neighbors(u);
    const auto nv = g.neighbors(v);
    auto after_v = [v](std::span<const Neighbor> nb) {
      return std::upper_bound(nb.begin(), nb.end(), v, [](NodeId x, const Neighbor& n) { return x < n.node; });
    };
    auto a = after_v(nu);
    auto b = after_v(nv);
    while (a != nu.end() && b != nv.end()) {
      if (a->node < b->node) {
        ++a;
      } else if (b->node < a->node) {
        ++b;
      } else {
        out.push_back({i, index_of(u, a->node), index_of(v, a->node)});
        ++a;
        ++b;
      }
    }
  }
  return out;
}

MotifZScores sign_shuffle_zscores(const SignedGraph& g, const NullModelOptions& options) {
  if (options.samples < 2) throw ValidationError("sign shuffle: at least 2 samples required");

  const auto triangles = triangle_edges(g);
  std::vector<Sign> signs;
  signs.reserve(g.edge_count());
  for (const Edge& e : g.edges()) signs.push_back(e.sign);
  const auto observed = count_patterns(triangles, signs);

  std::vector<std::array<std::uint64_t, 4>> sampled(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t i) {
    rng::Engine gen = rng::stream(options.seed, "sign-shuffle", {i});
    std::vector<Sign> shuffled = signs;
    rng::shuffle(std::span(shuffled), gen);
    sampled[i] = count_patterns(triangles, shuffled);
  });

  MotifZScores out;
  out.samples = options.samples;
  for (std::size_t m = 0; m < 4; ++m) {
    std::vector<double> xs(options.samples);
    for (std::size_t i = 0; i < options.samples; ++i) xs[i] = static_cast<double>(sampled[i][m]);
    const Moments mom = moments(xs);
    out.motifs[m] = {static_cast<double>(observed[m]), mom.mean, mom.stddev,
                     zscore(static_cast<double>(observed[m]), mom)};
  }
  return out;
}

DobZScore blockmodel_dob_zscore(const SignedGraph& g, const BlockModelFit& fit, const NullModelOptions& options) {
  if (options.samples < 2) throw ValidationError("block-model null: at least 2 samples required");
  if (fit.partition.node_count() != g.node_count()) {
    throw ValidationError("block-model null: fit does not match graph size");
  }
  const TriadCensus census = triad_census(g);
  if (!census.dob) throw ValidationError("block-model null: graph has no triangles");

  std::vector<std::optional<double>> dobs(options.samples);
  parallel_for(options.samples, options.threads, [&](std::size_t i) {
    rng::Engine gen = rng::stream(options.seed, "blockmodel-null", {i});
    dobs[i] = triad_census(sample_from_blockmodel(fit, gen)).dob;
  });

  DobZScore out;
  out.observed = *census.dob;
  std::vector<double> xs;
  for (const auto& d : dobs) {
    if (d) {
      xs.push_back(*d);
    } else {
      ++out.skipped;
    }
  }
  out.used = xs.size();
  const Moments mom = moments(xs);
  out.mean = mom.mean;
  out.stddev = mom.stddev;
  out.z = xs.empty() ? std::nullopt : zscore(out.observed, mom);
  out.degenerate = !out.z.has_value();
  return out;
}

Matrix<std::optional<double>> pairwise_frustration(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  const std::size_t b = p.block_count();
  Matrix<double> pos = Matrix<double>::square(b);
  Matrix<double> neg = Matrix<double>::square(b);
  for (const Edge& e : g.edges()) {
    const BlockId r = p.block(e.u);
    const BlockId s = p.block(e.v);
    Matrix<double>& m = e.sign == Sign::positive ? pos : neg;
    m(r, s) += 1.0;
    if (r != s) m(s, r) += 1.0;
  }
  Matrix<std::optional<double>> fi = Matrix<std::optional<double>>::square(b);
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t s = 0; s < b; ++s) {
      if (r == s) continue;
      const double denom = pos(r, r) + neg(r, r) + pos(s, s) + neg(s, s) + pos(r, s) + neg(r, s);
      if (denom > 0.0) fi(r, s) = (pos(r, s) + neg(r, r) + neg(s, s)) / denom;
    }
  }
  return fi;
}

double overall_frustration(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  if (g.edge_count() == 0) throw ValidationError("frustration: graph has no edges");
  std::size_t misplaced = 0;
  for (const Edge& e : g.edges()) {
    const bool inside = p.block(e.u) == p.block(e.v);
    if (inside == (e.sign == Sign::negative)) ++misplaced;
  }
  return static_cast<double>(misplaced) / static_cast<double>(g.edge_count());
}

FrustrationReport frustration_report(const SignedGraph& g, const Partition& p,
                                     const std::vector<PairRelation>& relations) {
  FrustrationReport report;
  report.overall = overall_frustration(g, p);
  report.pairwise = pairwise_frustration(g, p);
  std::map<BalanceCategory, std::pair<double, std::size_t>> sums;
  for (const PairRelation& rel : relations) {
    const auto& v = report.pairwise(rel.r, rel.s);
    if (!v) continue;
    auto& [sum, count] = sums[rel.category];
    sum += *v;
    ++count;
  }
  for (BalanceCategory c : {BalanceCategory::balanced, BalanceCategory::unbalanced, BalanceCategory::anti_balanced}) {
    const auto it = sums.find(c);
    report.category_means[c] =
        it == sums.end() ? std::nullopt : std::optional<double>(it->second.first / static_cast<double>(it->second.second));
  }
  return report;
}

double nmi(const Partition& p, const Partition& u) {
  if (p.node_count() != u.node_count()) throw ValidationError("nmi: partitions differ in size");
  const std::size_t n = p.node_count();
  if (n == 0) return 1.0;
  const double nn = static_cast<double>(n);

  std::map<std::pair<BlockId, BlockId>, std::size_t> joint;
  for (NodeId i = 0; i < n; ++i) ++joint[{p.block(i), u.block(i)}];

  auto entropy = [nn](std::span<const std::size_t> sizes) {
    double h = 0.0;
    for (std::size_t s : sizes) {
      if (s == 0) continue;
      const double q = static_cast<double>(s) / nn;
      h -= q * std::log(q);
    }
    return h;
  };
  const double hp = entropy(p.block_sizes());
  const double hu = entropy(u.block_sizes());
  if (hp + hu <= 0.0) return 1.0;  // both single-block

  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    const double pij = static_cast<double>(count) / nn;
    const double pi = static_cast<double>(p.block_sizes()[key.first]) / nn;
    const double pj = static_cast<double>(u.block_sizes()[key.second]) / nn;
    mi += pij * std::log(pij / (pi * pj));
  }
  return std::clamp(2.0 * mi / (hp + hu), 0.0, 1.0);
}

}  // namespace signedmeso
