#include "morphshop/api.hpp"

namespace morphshop::api {

namespace {

void checkIds(const MorphModel& model, const Selection& selection) {
  for (const auto& [comp, da] : selection) {
    if (!model.hasComponent(comp)) throw UnknownIdError("unknown component '" + comp + "'", "selection." + comp);
    if (!model.hasAlternative(da)) throw UnknownIdError("unknown design alternative '" + da + "'", "selection." + comp);
    if (model.alternative(da).componentId != comp)
      throw UnknownIdError("'" + da + "' is not an alternative of component '" + comp + "'", "selection." + comp);
  }
}

}  // namespace

Json evaluate(const MorphModel& model, const Selection& selection, const synthesis::ComposeOptions& options) {
  checkIds(model, selection);
  Json out;
  out["violations"] = io::toJson(validatePartialSelection(model, selection));
  if (selection.empty()) {
    out["w"] = model.compatScaleMax();
    out["n"] = std::vector<int>(model.priorityScaleMax(), 0);
  } else {
    const auto ev = synthesis::excellence(model, selection);
    out["w"] = ev.w;
    out["n"] = ev.n;
  }
  synthesis::ComposeOptions pinned = options;
  pinned.fixed = selection;
  pinned.paretoOnly = true;
  const auto solutions = synthesis::composeNode(model, model.root().id, pinned);
  out["bestCompletion"] = solutions.empty() ? Json(nullptr) : io::toJson(solutions.front());
  return out;
}

Json compose(const MorphModel& model, const std::string& nodeId, const synthesis::ComposeOptions& options) {
  return io::toJson(synthesis::composeNode(model, nodeId, options));
}

Json aggregate(const io::AggregationRequest& request, const MorphModel* model) {
  aggregation::PrototypeSet protos;
  if (model) {
    protos = aggregation::fromModel(*model, request.prototypes);
  } else {
    if (request.prototypes.empty()) throw ValidationError("no prototypes", "prototypes");
    protos.components = request.components;
    if (protos.components.empty())
      for (const auto& [comp, da] : request.prototypes.front()) protos.components.push_back(comp);
    protos.prototypes = request.prototypes;
    protos.priorities = request.priorities;
    aggregation::validate(protos);
  }

  Json out = {{"strategy", request.strategy}};
  Selection result;
  if (request.strategy == "extend") {
    const auto kernel = aggregation::buildKernel(protos, request.lambda);
    const auto ext = aggregation::extendKernel(kernel, request.additionOps, request.budget, request.solver);
    out["kernel"] = io::toJson(kernel);
    out["chosenOps"] = ext.chosenOps;
    out["totalCost"] = ext.totalCost;
    out["totalProfit"] = ext.totalProfit;
    result = ext.selection;
  } else if (request.strategy == "compress") {
    const auto super = aggregation::buildSuperstructure(protos);
    const auto comp = aggregation::compressSuperstructure(super, request.deletionCandidates, request.requiredGain);
    out["superstructure"] = io::toJson(super);
    out["compressed"] = io::toJson(comp.superstructure);
    out["deleted"] = comp.deleted;
    out["totalCost"] = comp.totalCost;
    out["totalGain"] = comp.totalGain;
  } else if (request.strategy == "newdesign") {
    const auto super = aggregation::buildSuperstructure(protos);
    const auto nd = aggregation::newDesign(super, request.designAlternatives, request.budget, request.solver);
    out["superstructure"] = io::toJson(super);
    out["totalCost"] = nd.totalCost;
    out["totalProfit"] = nd.totalProfit;
    result = nd.selection;
  } else if (request.strategy == "median") {
    const auto median = aggregation::setMedian(protos);
    out["medianIndex"] = median.index;
    out["totalDistance"] = median.totalDistance;
    out["distances"] = median.distances;
    result = protos.prototypes[median.index];
  } else {
    throw ValidationError("unknown strategy '" + request.strategy + "'", "strategy");
  }
  if (request.strategy != "compress") {
    out["selection"] = io::toJson(result);
    if (model && !result.empty()) out["excellence"] = io::toJson(synthesis::excellence(*model, result));
  }
  return out;
}

Json trajectory(const trajectory::StageCatalog& catalog) {
  return io::toJson(trajectory::synthesizeTrajectory(catalog));
}

}  // namespace morphshop::api
