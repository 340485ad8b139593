#pragma once

// JSON documents written by the command-line tool.
//
// Non-finite numbers (an infinite L-/L+ ratio, undefined densities) are
// written as null. Every document carries "schema_version".

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "signedmeso/balance.hpp"
#include "signedmeso/blockmodel.hpp"
#include "signedmeso/graph.hpp"
#include "signedmeso/matrix.hpp"
#include "signedmeso/mesoscale.hpp"
#include "signedmeso/partition.hpp"
#include "signedmeso/partitioning.hpp"
#include "signedmeso/synth.hpp"

namespace signedmeso::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json number(double x);
json number(const std::optional<double>& x);
json matrix(const Matrix<double>& m);
json matrix(const Matrix<std::optional<double>>& m);

/// {"schema_version", "kind", "metadata"}; `metadata` is the run config.
json document(const std::string& kind, json metadata);

json to_json(const GraphStats& s);
json to_json(const Partition& p, const SignedGraph& g);
json to_json(const ModularityScore& q);
json to_json(const DensityPair& d);
json to_json(const PairRelation& r);
json to_json(const TypeCensus& c);
json to_json(const Classification& c);
json to_json(const TriadCensus& c);
json to_json(const MotifZScores& z);
json to_json(const DobZScore& z);
json to_json(const FrustrationReport& f);
json to_json(const SweepCell& c);

/// {"assignment", "B", "p_pos", "p_neg", "description_length",
/// "log_likelihood"}; probabilities row-major.
json to_json(const BlockModelFit& fit);
/// Inverse of to_json(BlockModelFit). Throws ValidationError on a malformed
/// document.
BlockModelFit fit_from_json(const json& j);

}  // namespace signedmeso::report
