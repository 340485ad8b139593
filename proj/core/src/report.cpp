#include "signedmeso/report.hpp"

#include <cmath>

#include "signedmeso/error.hpp"

namespace signedmeso::report {

namespace {

template <typename T>
json matrix_impl(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string type_name(RelationType t) {
  return std::string(1, letter(t));
}

}  // namespace

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json number(const std::optional<double>& x) {
  return x ? number(*x) : json(nullptr);
}

json matrix(const Matrix<double>& m) { return matrix_impl(m); }
json matrix(const Matrix<std::optional<double>>& m) { return matrix_impl(m); }

json document(const std::string& kind, json metadata) {
  return json{{"schema_version", kSchemaVersion}, {"kind", kind}, {"metadata", std::move(metadata)}};
}

json to_json(const GraphStats& s) {
  return {{"nodes", s.nodes},
          {"edges", s.edges},
          {"positive_edges", s.positive_edges},
          {"negative_edges", s.negative_edges},
          {"neg_pos_ratio", number(s.neg_pos_ratio)},
          {"mean_degree", number(s.mean_degree)},
          {"density", number(s.density)}};
}

json to_json(const Partition& p, const SignedGraph& g) {
  json nodes = json::array();
  for (NodeId i = 0; i < p.node_count(); ++i) nodes.push_back({{"node", g.label(i)}, {"block", p.block(i)}});
  return {{"block_count", p.block_count()}, {"block_sizes", p.block_sizes()}, {"assignment", nodes}};
}

json to_json(const ModularityScore& q) {
  return {{"q_pos", number(q.q_pos)}, {"q_neg", number(q.q_neg)}, {"q_signed", number(q.q_signed)}};
}

json to_json(const DensityPair& d) {
  return {{"block_sizes", d.block_sizes}, {"w_pos", matrix(d.w_pos)}, {"w_neg", matrix(d.w_neg)}};
}

json to_json(const PairRelation& r) {
  return {{"r", r.r},
          {"s", r.s},
          {"first", r.first},
          {"second", r.second},
          {"label", r.label()},
          {"pos_type", type_name(r.pos_type)},
          {"neg_type", type_name(r.neg_type)},
          {"prime", r.prime},
          {"score", r.score},
          {"category", std::string(to_string(r.category))},
          {"robustness", number(r.robustness)},
          {"degenerate_pos", r.degenerate_pos},
          {"degenerate_neg", r.degenerate_neg},
          {"low_confidence", r.low_confidence}};
}

json to_json(const TypeCensus& c) {
  json counts = json::object();
  for (const std::string& label : relation_labels()) counts[label] = c.counts.at(label);
  return {{"pairs", c.pairs}, {"counts", counts}, {"dominant", c.dominant}, {"occurring", c.occurring}};
}

json to_json(const Classification& c) {
  json pairs = json::array();
  for (const PairRelation& r : c.pairs) pairs.push_back(to_json(r));
  return {{"pairs", pairs}, {"census", to_json(c.census)}};
}

json to_json(const TriadCensus& c) {
  json counts = json::object();
  json fractions = json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    counts[kTriadNames[i]] = c.counts[i];
    fractions[kTriadNames[i]] = c.fractions ? number((*c.fractions)[i]) : json(nullptr);
  }
  return {{"triangles", c.total()},
          {"counts", counts},
          {"fractions", fractions},
          {"dob", number(c.dob)},
          {"wdob", number(c.wdob)}};
}

json to_json(const MotifZScores& z) {
  json motifs = json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    const MotifZScore& m = z.motifs[i];
    motifs[kTriadNames[i]] = {{"observed", number(m.observed)},
                              {"mean", number(m.mean)},
                              {"stddev", number(m.stddev)},
                              {"z", number(m.z)},
                              {"degenerate", !m.z.has_value()}};
  }
  return {{"samples", z.samples}, {"motifs", motifs}};
}

json to_json(const DobZScore& z) {
  return {{"observed", number(z.observed)}, {"mean", number(z.mean)},  {"stddev", number(z.stddev)},
          {"z", number(z.z)},               {"used", z.used},          {"skipped", z.skipped},
          {"degenerate", z.degenerate}};
}

json to_json(const FrustrationReport& f) {
  json means = json::object();
  for (const auto& [category, mean] : f.category_means) means[std::string(to_string(category))] = number(mean);
  return {{"overall", number(f.overall)}, {"pairwise", matrix(f.pairwise)}, {"category_means", means}};
}

json to_json(const SweepCell& c) {
  return {{"ratio", c.ratio},
          {"method", to_string(c.method)},
          {"replicates", c.replicates},
          {"nmi_mean", number(c.nmi_mean)},
          {"nmi_std", number(c.nmi_std)},
          {"balanced_frac_mean", number(c.balanced_frac_mean)},
          {"balanced_frac_std", number(c.balanced_frac_std)}};
}

json to_json(const BlockModelFit& fit) {
  return {{"assignment", fit.partition.assignment()},
          {"B", fit.partition.block_count()},
          {"p_pos", fit.p_pos.data()},
          {"p_neg", fit.p_neg.data()},
          {"log_likelihood", number(fit.log_likelihood)},
          {"description_length", number(fit.description_length)}};
}

BlockModelFit fit_from_json(const json& j) {
  if (!j.is_object() || !j.contains("assignment") || !j.contains("B") || !j.contains("p_pos") ||
      !j.contains("p_neg")) {
    throw ValidationError("fit: expected assignment, B, p_pos and p_neg");
  }
  BlockModelFit fit;
  try {
    fit.partition = Partition(j.at("assignment").get<std::vector<BlockId>>());
    const auto b = j.at("B").get<std::size_t>();
    if (b != fit.partition.block_count()) throw ValidationError("fit: B does not match the assignment");
    auto flat = [&](const char* name) {
      const auto values = j.at(name).get<std::vector<double>>();
      if (values.size() != b * b) throw ValidationError(std::string("fit: ") + name + " must have B*B entries");
      Matrix<double> m = Matrix<double>::square(b);
      for (std::size_t r = 0; r < b; ++r) {
        for (std::size_t c = 0; c < b; ++c) m(r, c) = values[r * b + c];
      }
      return m;
    };
    fit.p_pos = flat("p_pos");
    fit.p_neg = flat("p_neg");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("fit: ") + e.what());
  }
  for (std::size_t r = 0; r < fit.p_pos.rows(); ++r) {
    for (std::size_t c = 0; c < fit.p_pos.cols(); ++c) {
      const double pp = fit.p_pos(r, c);
      const double pn = fit.p_neg(r, c);
      if (!(pp >= 0.0 && pn >= 0.0 && pp + pn <= 1.0 + 1e-12)) {
        throw ValidationError("fit: probabilities must be non-negative with p_pos + p_neg <= 1");
      }
      if (pp != fit.p_pos(c, r) || pn != fit.p_neg(c, r)) throw ValidationError("fit: probabilities must be symmetric");
    }
  }
  if (j.contains("log_likelihood") && j["log_likelihood"].is_number()) fit.log_likelihood = j["log_likelihood"];
  if (j.contains("description_length") && j["description_length"].is_number()) {
    fit.description_length = j["description_length"];
  }
  return fit;
}

}  // namespace signedmeso::report
