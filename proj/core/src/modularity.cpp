#include "signedmeso/partitioning.hpp"

#include <vector>

namespace signedmeso {

namespace {

// Newman modularity of one sign channel; 0 when the channel is empty.
double channel_modularity(const SignedGraph& g, const Partition& p, Sign sign) {
  const std::size_t m = sign == Sign::positive ? g.positive_edge_count() : g.negative_edge_count();
  if (m == 0) return 0.0;
  std::vector<double> internal(p.block_count(), 0.0);
  std::vector<double> degree_sum(p.block_count(), 0.0);
  for (const Edge& e : g.edges()) {
    if (e.sign != sign) continue;
    degree_sum[p.block(e.u)] += 1.0;
    degree_sum[p.block(e.v)] += 1.0;
    if (p.block(e.u) == p.block(e.v)) internal[p.block(e.u)] += 1.0;
  }
  const double two_m = 2.0 * static_cast<double>(m);
  double q = 0.0;
  for (std::size_t c = 0; c < p.block_count(); ++c) {
    const double share = degree_sum[c] / two_m;
    q += internal[c] / static_cast<double>(m) - share * share;
  }
  return q;
}

}  // namespace

ModularityScore signed_modularity(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  ModularityScore score;
  score.q_pos = channel_modularity(g, p, Sign::positive);
  score.q_neg = channel_modularity(g, p, Sign::negative);
  const double lp = static_cast<double>(g.positive_edge_count());
  const double ln = static_cast<double>(g.negative_edge_count());
  if (lp + ln > 0) score.q_signed = (2 * lp * score.q_pos - 2 * ln * score.q_neg) / (2 * lp + 2 * ln);
  return score;
}

}  // namespace signedmeso
