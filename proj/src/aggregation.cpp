#include "morphshop/aggregation.hpp"

#include <algorithm>
#include <limits>

#include "morphshop/errors.hpp"
#include "morphshop/trajectory.hpp"

namespace morphshop::aggregation {

namespace {

int priorityOf(const PrototypeSet& protos, const std::string& da) {
  auto it = protos.priorities.find(da);
  return it == protos.priorities.end() ? 1 : it->second;
}

solvers::SolverResult solveKnapsack(const solvers::KnapsackInstance& inst, SolverKind solver) {
  return solver == SolverKind::Greedy ? solvers::knapsackGreedy(inst) : solvers::knapsackExact(inst);
}

}  // namespace

void validate(const PrototypeSet& protos) {
  std::set<std::string> comps(protos.components.begin(), protos.components.end());
  if (comps.size() != protos.components.size()) throw ValidationError("duplicate component id", "components");
  for (std::size_t i = 0; i < protos.prototypes.size(); ++i) {
    const auto& p = protos.prototypes[i];
    const std::string path = "prototypes[" + std::to_string(i) + "]";
    for (const auto& c : protos.components)
      if (!p.contains(c)) throw ValidationError("prototype misses component '" + c + "'", path);
    for (const auto& [c, da] : p)
      if (!comps.contains(c)) throw ValidationError("prototype uses unknown component '" + c + "'", path + "." + c);
  }
}

PrototypeSet fromModel(const MorphModel& model, std::vector<Selection> prototypes) {
  PrototypeSet out;
  for (const auto& comp : model.components()) {
    out.components.push_back(comp.id);
    for (const auto& alt : comp.alternatives) out.priorities[alt.id] = alt.priority;
  }
  for (std::size_t i = 0; i < prototypes.size(); ++i)
    for (const auto& [c, da] : prototypes[i]) {
      model.component(c);
      if (model.alternative(da).componentId != c)
        throw UnknownIdError("'" + da + "' is not an alternative of component '" + c + "'",
                             "prototypes[" + std::to_string(i) + "]." + c);
    }
  out.prototypes = std::move(prototypes);
  validate(out);
  return out;
}

KernelResult buildKernel(const PrototypeSet& protos, int lambda) {
  validate(protos);
  if (lambda < 1 || static_cast<std::size_t>(lambda) > protos.prototypes.size())
    throw ValidationError("lambda must lie in [1, " + std::to_string(protos.prototypes.size()) + "]", "lambda");
  KernelResult out;
  out.lambda = lambda;
  for (const auto& p : protos.prototypes)
    for (const auto& [c, da] : p) ++out.counts[da];
  for (const auto& c : protos.components) {
    std::string best;
    int bestCount = 0;
    for (const auto& p : protos.prototypes) {
      const std::string& da = p.at(c);
      const int count = out.counts.at(da);
      bool better = best.empty() || count > bestCount ||
                    (count == bestCount && (priorityOf(protos, da) < priorityOf(protos, best) ||
                                            (priorityOf(protos, da) == priorityOf(protos, best) && da < best)));
      if (better) {
        best = da;
        bestCount = count;
      }
    }
    if (!best.empty() && bestCount >= lambda) out.kernel[c] = best;
  }
  return out;
}

Superstructure buildSuperstructure(const PrototypeSet& protos) {
  validate(protos);
  Superstructure out;
  for (const auto& c : protos.components) out.perComponent[c];
  for (const auto& p : protos.prototypes)
    for (const auto& [c, da] : p) out.perComponent[c].insert(da);
  return out;
}

ExtensionResult extendKernel(const KernelResult& kernel, const std::vector<AdditionOperation>& ops, double budget,
                             SolverKind solver) {
  solvers::KnapsackInstance inst;
  inst.budget = budget;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    const std::string path = "additionOps[" + std::to_string(i) + "]";
    if (!ids.insert(op.id).second) throw ValidationError("duplicate operation id '" + op.id + "'", path + ".id");
    auto it = kernel.kernel.find(op.component);
    if (it == kernel.kernel.end())
      throw ValidationError("kernel has no DA for component '" + op.component + "'", path + ".component");
    if (it->second != op.from)
      throw ValidationError("operation starts from '" + op.from + "' but the kernel holds '" + it->second + "'",
                            path + ".from");
    inst.items.push_back({op.id, op.cost, op.profit});
  }
  const auto solved = solveKnapsack(inst, solver);

  ExtensionResult out;
  out.selection = kernel.kernel;
  out.chosenOps = solved.chosen;
  out.totalCost = solved.totalCost;
  out.totalProfit = solved.totalProfit;
  std::map<std::string, std::string> touchedBy;
  for (const auto& id : solved.chosen) {
    const auto& op = *std::find_if(ops.begin(), ops.end(), [&](const auto& o) { return o.id == id; });
    auto [it, inserted] = touchedBy.emplace(op.component, op.id);
    if (!inserted)
      throw ConflictError("operations '" + it->second + "' and '" + op.id + "' both change component '" +
                          op.component + "'");
    out.selection[op.component] = op.to;
  }
  return out;
}

CompressionResult compressSuperstructure(const Superstructure& super, const std::vector<DeletionCandidate>& candidates,
                                         double requiredGain) {
  solvers::KnapsackInstance inst;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& cand = candidates[i];
    auto it = super.perComponent.find(cand.component);
    if (it == super.perComponent.end() || !it->second.contains(cand.da))
      throw ValidationError("'" + cand.da + "' is not in the superstructure at component '" + cand.component + "'",
                            "deletionCandidates[" + std::to_string(i) + "]");
    inst.items.push_back({cand.id, cand.cost, cand.profit});
  }
  const auto solved = solvers::knapsackMinCover(inst, requiredGain);

  CompressionResult out;
  out.superstructure = super;
  out.deleted = solved.chosen;
  out.totalCost = solved.totalCost;
  out.totalGain = solved.totalProfit;
  for (const auto& id : solved.chosen) {
    const auto& cand =
        *std::find_if(candidates.begin(), candidates.end(), [&](const auto& c) { return c.id == id; });
    auto& das = out.superstructure.perComponent[cand.component];
    das.erase(cand.da);
    if (das.empty())
      throw EmptyComponentError("deleting the chosen candidates empties component '" + cand.component + "'");
  }
  return out;
}

NewDesignResult newDesign(const Superstructure& super, const std::vector<DesignAlternativeCost>& costs, double budget,
                          SolverKind solver) {
  std::map<std::string, const DesignAlternativeCost*> byDa;
  for (const auto& c : costs) byDa[c.da] = &c;
  solvers::MultiChoiceInstance inst;
  inst.budget = budget;
  std::map<std::string, std::string> componentOf;
  for (const auto& [comp, das] : super.perComponent) {
    solvers::ItemGroup group{comp, {}};
    for (const auto& da : das) {
      auto it = byDa.find(da);
      if (it == byDa.end())
        throw ValidationError("no cost/profit given for '" + da + "'", "designAlternatives");
      group.items.push_back({da, it->second->cost, it->second->profit});
      componentOf[da] = comp;
    }
    inst.groups.push_back(std::move(group));
  }
  const auto solved = solver == SolverKind::Greedy ? solvers::multiChoiceGreedy(inst) : solvers::multiChoiceExact(inst);
  NewDesignResult out;
  for (const auto& da : solved.chosen) out.selection[componentOf.at(da)] = da;
  out.totalCost = solved.totalCost;
  out.totalProfit = solved.totalProfit;
  return out;
}

MedianResult setMedian(const PrototypeSet& protos) {
  validate(protos);
  if (protos.prototypes.empty()) throw ValidationError("no prototypes", "prototypes");
  const std::size_t n = protos.prototypes.size();
  MedianResult out;
  out.distances.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.distances[i][j] = out.distances[j][i] = trajectory::delta(protos.prototypes[i], protos.prototypes[j]);
  out.totalDistance = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < n; ++i) {
    int total = 0;
    for (int d : out.distances[i]) total += d;
    if (total < out.totalDistance) {
      out.totalDistance = total;
      out.index = i;
    }
  }
  return out;
}

}  // namespace morphshop::aggregation
