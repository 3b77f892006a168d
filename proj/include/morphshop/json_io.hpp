#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "morphshop/aggregation.hpp"
#include "morphshop/errors.hpp"
#include "morphshop/model.hpp"
#include "morphshop/ranking.hpp"
#include "morphshop/solvers.hpp"
#include "morphshop/synthesis.hpp"
#include "morphshop/trajectory.hpp"

namespace morphshop::io {

using Json = nlohmann::json;

// ParseError on malformed text / unreadable file.
Json parseText(std::string_view text);
Json readFile(const std::filesystem::path& path);
// Two-space indented, sorted keys, trailing newline.
std::string dump(const Json& j);

// Strict readers: unknown fields and wrong types raise ParseError with a path.
ModelSpec parseModelSpec(const Json& j);
MorphModel loadModel(const Json& j);
MorphModel loadModelText(std::string_view text);
MorphModel loadModelFile(const std::filesystem::path& path);
Json modelToJson(const MorphModel& model);
std::string saveModel(const MorphModel& model);

Selection parseSelection(const Json& j, const std::string& path = "selection");
ranking::CriteriaTable parseCriteriaTable(const Json& j);
solvers::KnapsackInstance parseKnapsack(const Json& j);
solvers::MultiChoiceInstance parseMultiChoice(const Json& j);
trajectory::StageCatalog parseStageCatalog(const Json& j);

struct AggregationRequest {
  std::vector<std::string> components;  // empty: taken from the model or the first prototype
  std::vector<Selection> prototypes;
  std::map<std::string, int> priorities;
  int lambda = 1;
  std::vector<aggregation::AdditionOperation> additionOps;
  double budget = 0;
  std::string strategy = "extend";
  aggregation::SolverKind solver = aggregation::SolverKind::Greedy;
  std::vector<aggregation::DeletionCandidate> deletionCandidates;
  double requiredGain = 0;
  std::vector<aggregation::DesignAlternativeCost> designAlternatives;
};
AggregationRequest parseAggregationRequest(const Json& j);

Json toJson(const Selection& s);
Json toJson(const synthesis::ExcellenceVector& v);
Json toJson(const synthesis::CompositeSolution& s);
Json toJson(const std::vector<synthesis::CompositeSolution>& s);
Json toJson(const ranking::LayerPartition& p);
Json toJson(const solvers::SolverResult& r);
Json toJson(const SelectionViolation& v);
Json toJson(const std::vector<SelectionViolation>& v);
Json toJson(const aggregation::KernelResult& k);
Json toJson(const aggregation::Superstructure& s);
Json toJson(const trajectory::Trajectory& t);
Json toJson(const std::vector<trajectory::Trajectory>& t);

// {error, detail, path}; `cap` is added for ExplosionError.
Json errorBody(const Error& e);

}  // namespace morphshop::io
