#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stone/catalog.hpp"
#include "stone/cover.hpp"
#include "stone/embedding.hpp"
#include "stone/extended.hpp"
#include "stone/metric_space.hpp"
#include "stone/moduli.hpp"

namespace stone::io {

using nlohmann::json;

/// Reads and parses a JSON file. Throws IO for unreadable files and
/// ParseError for malformed JSON.
json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Numbers stay numbers; +inf becomes the string "inf".
json to_json(ExtReal value);
ExtReal ext_real_from_json(const json& value);

/// A space as read from disk. Tree inputs keep their tree so that tree
/// covers can be built from them.
struct SpaceDocument {
  FiniteMetricSpace space;
  std::optional<RootedTree> tree;
};

/// Accepts {"labels", "dist"}, {"points", "p"} and {"tree": {"edges", "root"}}
/// (the last two with optional "labels"). Validation failures surface as
/// the validator's error kinds; shape errors as ParseError.
SpaceDocument space_from_json(const json& doc);
/// Emits the points form when the space carries coordinates, else the dist form.
json space_to_json(const FiniteMetricSpace& space);
json tree_to_json(const RootedTree& tree);

json cover_to_json(const Cover& cover);
Cover cover_from_json(const json& doc, const FiniteMetricSpace& space);

json metrics_to_json(const CoverMetrics& metrics);
CoverMetrics metrics_from_json(const json& doc);

/// printf %.17g, or "inf".
std::string format_number(double value);
std::string format_number(ExtReal value);

/// CSV with header kind,argument,value.
std::string curves_to_csv(const std::vector<ModulusCurve>& curves);
std::vector<ModulusCurve> curves_from_csv(const std::string& text);

json violation_to_json(const CheckViolation& v);
json to_json(const DualityReport& report);
json to_json(const SmallConstantReport& report);
json to_json(const LinearTypeReport& report);
json to_json(const DistortionReport& report);
json to_json(const EmbeddingConfig& config);

/// {"K", "L", "config", "points": {label: {"n:tau": value}}, "report",
///  "scales": [...certificates], "witnesses": {...summary}}
json embedding_to_json(const Embedding& embedding, const FiniteMetricSpace& space);
/// The "points" object back as sequences, in the order of `labels`.
std::vector<SparseNonnegativeSequence> embedding_points_from_json(
    const json& doc, const std::vector<std::string>& labels);

}  // namespace stone::io
