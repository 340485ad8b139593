#include "signedmeso/mesoscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "signedmeso/error.hpp"

namespace signedmeso {

namespace {

RelationType channel_type(double first_diag, double second_diag, double between, double tol) {
  const double lo = std::min(first_diag, second_diag);
  const double hi = std::max(first_diag, second_diag);
  if (between < lo - tol) return RelationType::assortative;
  if (between > hi + tol) return RelationType::disassortative;
  return RelationType::core_periphery;
}

int positive_score(RelationType t) {
  switch (t) {
    case RelationType::assortative: return 1;
    case RelationType::core_periphery: return 0;
    case RelationType::disassortative: return -1;
  }
  return 0;
}

std::array<std::string, 18> make_labels() {
  std::array<std::string, 18> out;
  std::size_t i = 0;
  for (char pos : {'A', 'C', 'D'}) {
    for (char neg : {'A', 'C', 'D'}) {
      for (bool prime : {false, true}) {
        out[i++] = std::string{pos} + "+|" + neg + (prime ? "'" : "") + "-";
      }
    }
  }
  return out;
}

void count_block_edges(const SignedGraph& g, const Partition& p, Matrix<double>& pos, Matrix<double>& neg) {
  for (const Edge& e : g.edges()) {
    const BlockId r = p.block(e.u);
    const BlockId s = p.block(e.v);
    Matrix<double>& m = e.sign == Sign::positive ? pos : neg;
    m(r, s) += 1.0;
    if (r != s) m(s, r) += 1.0;
  }
}

}  // namespace

std::string_view to_string(BalanceCategory c) noexcept {
  switch (c) {
    case BalanceCategory::balanced: return "balanced";
    case BalanceCategory::unbalanced: return "unbalanced";
    case BalanceCategory::anti_balanced: return "anti-balanced";
  }
  return "unknown";
}

DensityPair densities_from_counts(const Matrix<double>& pos_counts, const Matrix<double>& neg_counts,
                                  std::span<const std::size_t> block_sizes) {
  const std::size_t b = block_sizes.size();
  DensityPair d{Matrix<double>::square(b), Matrix<double>::square(b),
                std::vector<std::size_t>(block_sizes.begin(), block_sizes.end())};
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t s = 0; s < b; ++s) {
      const double nr = static_cast<double>(block_sizes[r]);
      const double ns = static_cast<double>(block_sizes[s]);
      const double possible = r == s ? nr * (nr - 1.0) / 2.0 : nr * ns;
      if (possible <= 0.0) continue;
      d.w_pos(r, s) = pos_counts(r, s) / possible;
      d.w_neg(r, s) = neg_counts(r, s) / possible;
    }
  }
  return d;
}

DensityPair density_matrices(const SignedGraph& g, const Partition& p) {
  require_covers(g, p);
  const std::size_t b = p.block_count();
  Matrix<double> pos = Matrix<double>::square(b);
  Matrix<double> neg = Matrix<double>::square(b);
  count_block_edges(g, p, pos, neg);
  return densities_from_counts(pos, neg, p.block_sizes());
}

std::string PairRelation::label() const {
  std::string out{letter(pos_type)};
  out += "+|";
  out += letter(neg_type);
  if (prime) out += '\'';
  out += '-';
  return out;
}

const std::array<std::string, 18>& relation_labels() {
  static const std::array<std::string, 18> labels = make_labels();
  return labels;
}

PairRelation classify_pair(const DensityPair& d, BlockId r, BlockId s, double tol) {
  const std::size_t b = d.block_count();
  if (r >= b || s >= b) throw ValidationError("classify_pair: block index out of range");
  if (r == s) throw ValidationError("classify_pair: r and s must differ");

  PairRelation rel;
  rel.r = r;
  rel.s = s;
  const BlockId lo = std::min(r, s);
  const BlockId hi = std::max(r, s);
  // Exact comparison: the ordering only decides which block is "first".
  const bool swap = d.w_pos(hi, hi) > d.w_pos(lo, lo);
  rel.first = swap ? hi : lo;
  rel.second = swap ? lo : hi;

  const std::size_t f = rel.first;
  const std::size_t t = rel.second;
  rel.pos_type = channel_type(d.w_pos(f, f), d.w_pos(t, t), d.w_pos(f, t), tol);
  rel.neg_type = channel_type(d.w_neg(f, f), d.w_neg(t, t), d.w_neg(f, t), tol);
  rel.prime = d.w_neg(f, f) < d.w_neg(t, t) - tol;

  const int s_pos = positive_score(rel.pos_type);
  const int s_neg = -positive_score(rel.neg_type);
  rel.score = s_pos + s_neg;
  if (rel.pos_type == RelationType::assortative && rel.neg_type == RelationType::disassortative) {
    rel.category = BalanceCategory::balanced;
  } else if (rel.pos_type == RelationType::disassortative && rel.neg_type == RelationType::assortative) {
    rel.category = BalanceCategory::anti_balanced;
  } else {
    rel.category = BalanceCategory::unbalanced;
  }

  rel.degenerate_pos = d.w_pos(f, f) == 0.0 && d.w_pos(t, t) == 0.0 && d.w_pos(f, t) == 0.0;
  rel.degenerate_neg = d.w_neg(f, f) == 0.0 && d.w_neg(t, t) == 0.0 && d.w_neg(f, t) == 0.0;
  rel.low_confidence = d.degenerate_diagonal(f) || d.degenerate_diagonal(t);
  return rel;
}

TypeCensus TypeCensus::from(const std::vector<PairRelation>& relations) {
  TypeCensus census;
  for (const std::string& label : relation_labels()) census.counts[label] = 0;
  for (const PairRelation& rel : relations) ++census.counts[rel.label()];
  census.pairs = relations.size();
  std::size_t best = 0;
  // std::map iterates labels in lexicographic order, so the first maximum
  // is the lexicographically smallest.
  for (const auto& [label, count] : census.counts) {
    if (count > 0) census.occurring.push_back(label);
    if (count > best) {
      best = count;
      census.dominant = label;
    }
  }
  return census;
}

Classification classify_all(const SignedGraph& g, const Partition& p, double tol) {
  const DensityPair d = density_matrices(g, p);
  const std::size_t b = d.block_count();
  if (b < 2) throw ValidationError("nothing to classify: partition has fewer than 2 blocks");
  Classification out;
  out.pairs.reserve(b * (b - 1) / 2);
  for (BlockId r = 0; r < b; ++r) {
    for (BlockId s = r + 1; s < b; ++s) out.pairs.push_back(classify_pair(d, r, s, tol));
  }
  out.census = TypeCensus::from(out.pairs);
  return out;
}

std::vector<std::size_t> resample_with_replacement(std::size_t population, std::size_t draws, rng::Engine& gen) {
  std::vector<std::size_t> out(draws);
  if (population == 0) return out;
  for (auto& x : out) x = static_cast<std::size_t>(rng::uniform_index(gen, population));
  return out;
}

Matrix<double> bootstrap_certainty(const SignedGraph& g, const Partition& p, const BootstrapOptions& options) {
  if (options.replicates == 0) throw ValidationError("bootstrap: replicate count must be positive");
  require_covers(g, p);
  const std::size_t b = p.block_count();
  if (b < 2) throw ValidationError("nothing to classify: partition has fewer than 2 blocks");

  std::vector<std::string> original(b * b);
  {
    const DensityPair d = density_matrices(g, p);
    for (BlockId r = 0; r < b; ++r) {
      for (BlockId s = r + 1; s < b; ++s) original[r * b + s] = classify_pair(d, r, s, options.tol).label();
    }
  }

  std::vector<const Edge*> positive;
  std::vector<const Edge*> negative;
  for (const Edge& e : g.edges()) (e.sign == Sign::positive ? positive : negative).push_back(&e);

  std::vector<std::vector<char>> agree(options.replicates);
  parallel_for(options.replicates, options.threads, [&](std::size_t k) {
    rng::Engine gen = rng::stream(options.seed, "bootstrap", {k});
    Matrix<double> pos = Matrix<double>::square(b);
    Matrix<double> neg = Matrix<double>::square(b);
    auto tally = [&](const std::vector<const Edge*>& pool, Matrix<double>& m) {
      for (std::size_t idx : options.resampler(pool.size(), pool.size(), gen)) {
        const Edge& e = *pool.at(idx);
        const BlockId r = p.block(e.u);
        const BlockId s = p.block(e.v);
        m(r, s) += 1.0;
        if (r != s) m(s, r) += 1.0;
      }
    };
    tally(positive, pos);
    tally(negative, neg);
    const DensityPair d = densities_from_counts(pos, neg, p.block_sizes());
    auto& row = agree[k];
    row.assign(b * b, 0);
    for (BlockId r = 0; r < b; ++r) {
      for (BlockId s = r + 1; s < b; ++s) {
        row[r * b + s] = classify_pair(d, r, s, options.tol).label() == original[r * b + s];
      }
    }
  });

  Matrix<double> certainty = Matrix<double>::square(b, std::numeric_limits<double>::quiet_NaN());
  for (BlockId r = 0; r < b; ++r) {
    for (BlockId s = r + 1; s < b; ++s) {
      std::size_t hits = 0;
      for (const auto& row : agree) hits += row[r * b + s];
      const double value = static_cast<double>(hits) / static_cast<double>(options.replicates);
      certainty(r, s) = value;
      certainty(s, r) = value;
    }
  }
  return certainty;
}

void attach_robustness(std::vector<PairRelation>& relations, const Matrix<double>& certainty) {
  for (PairRelation& rel : relations) rel.robustness = certainty(rel.r, rel.s);
}

}  // namespace signedmeso
