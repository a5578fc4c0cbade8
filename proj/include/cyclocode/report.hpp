#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "cyclocode/class_graph.hpp"
#include "cyclocode/code.hpp"
#include "cyclocode/concentration.hpp"
#include "cyclocode/is_solver.hpp"
#include "cyclocode/pipeline.hpp"
#include "cyclocode/volume.hpp"

namespace cyclocode {

using Json = nlohmann::ordered_json;

std::string version();

/// CYCLOCODE_BUDGET when set to a positive integer, else the fallback.
std::uint64_t budget_from_env(std::uint64_t fallback);

struct RunManifest {
    std::string command;
    Json params = Json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::string> generator;
    double elapsed_ms = 0;  ///< outside the reproducibility scope
};

Json to_json(const RunManifest& manifest);
Json to_json(const BoundReport& report);
Json to_json(const SetCount& count);
Json to_json(const TailEstimate& estimate);
Json to_json(const DecayTable& table);
Json to_json(const DegreeStats& stats);
/// Summary only; per-vertex rows are included when `per_vertex` is set.
Json to_json(const SparsityDiagnostics& diag, bool per_vertex = false);
Json to_json(const SolveReport& report);
Json to_json(const Witness& witness);
Json to_json(const Verdict& verdict);
Json to_json(const CorrelationReport& report);
/// Header fields and provenance; words only when `with_words` is set.
Json to_json(const CodeArtifact& code, bool with_words = false);
Json to_json(const ConstructResult& result);

enum class OutputFormat { Text, Machine };

/// Text: the human table, then a "## machine" section holding the JSON.
/// Machine: the JSON document alone.
std::string render(OutputFormat format, const std::string& table, const Json& document);

}  // namespace cyclocode
