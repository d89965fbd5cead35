#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ilap/euclid.hpp"
#include "ilap/game.hpp"
#include "ilap/solver.hpp"

namespace ilap {
namespace io {

using json = nlohmann::json;

// Graph files: {"vertices": [...], "edges": [[a, b], ...]}, plus the optional
// extensions "incomplete" (truncated graphs) and "labels". Self-loops are
// rejected; duplicate edges collapse.
json graph_to_json(const Graph& g);
std::shared_ptr<const Graph> graph_from_json(const json& j);

// Problem files: {"graph": ..., "X": [ids], "f": {id: val}, "g": {id: val}}.
json problem_to_json(const DirichletProblem& p);
DirichletProblem problem_from_json(const json& j);

// Game files: problem layout plus "r" (running payoff), "start", "max_rounds".
json game_to_json(const GameConfig& cfg);
GameConfig game_from_json(const json& j);

json field_to_json(const ScalarField& f);
ScalarField field_from_json(const json& j);
std::string field_to_csv(const ScalarField& f);

json fnspec_to_json(const euclid::FnSpec& f);
euclid::FnSpec fnspec_from_json(const json& j);
json domain_to_json(const euclid::DomainSpec& d);
euclid::DomainSpec domain_from_json(const json& j);

json outcome_to_json(const SolveOutcome& o);
json estimate_to_json(const ValueEstimate& e);
json convergence_to_json(const euclid::ConvergenceReport& r);
std::string convergence_to_csv(const euclid::ConvergenceReport& r);
json comparison_to_json(const ComparisonReport& r);

// 17 significant digits, '.' decimal, no locale.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);

// Reproducibility record: command, arguments, input hash, seed, tool version.
json make_manifest(const std::string& command, const std::vector<std::string>& args,
                   std::string_view input_bytes, std::uint64_t seed, bool has_seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

inline constexpr const char* kToolVersion = "ilap 0.1.0";

}  // namespace io
}  // namespace ilap
