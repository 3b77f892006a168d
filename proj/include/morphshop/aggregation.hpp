#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "morphshop/model.hpp"
#include "morphshop/solvers.hpp"

namespace morphshop::aggregation {

enum class SolverKind { Greedy, Exact };

struct PrototypeSet {
  std::vector<std::string> components;  // fixed component order
  std::vector<Selection> prototypes;
  std::map<std::string, int> priorities;  // DA id -> priority; missing = 1
};

// Checks that every prototype covers exactly `components`.
// Throws ValidationError.
void validate(const PrototypeSet& protos);

// Builds a PrototypeSet over a model's components (priorities from the model).
// Every DA must belong to its component. Throws UnknownIdError.
PrototypeSet fromModel(const MorphModel& model, std::vector<Selection> prototypes);

struct KernelResult {
  Selection kernel;  // partial
  std::map<std::string, int> counts;
  int lambda = 1;

  bool operator==(const KernelResult&) const = default;
};

// Lambda must lie in [1, #prototypes]; ValidationError otherwise.
KernelResult buildKernel(const PrototypeSet& protos, int lambda);

struct Superstructure {
  std::map<std::string, std::set<std::string>> perComponent;

  bool operator==(const Superstructure&) const = default;
};

Superstructure buildSuperstructure(const PrototypeSet& protos);

struct AdditionOperation {
  std::string id;
  std::string component;
  std::string from;
  std::string to;
  double cost = 0;
  double profit = 0;
};

struct ExtensionResult {
  Selection selection;
  std::vector<std::string> chosenOps;
  double totalCost = 0;
  double totalProfit = 0;
};

// Throws ValidationError when an op does not start from the kernel DA,
// ConflictError when two chosen ops touch the same component.
ExtensionResult extendKernel(const KernelResult& kernel, const std::vector<AdditionOperation>& ops, double budget,
                             SolverKind solver);

struct DeletionCandidate {
  std::string id;
  std::string component;
  std::string da;
  double cost = 0;    // profit lost by deleting
  double profit = 0;  // gain a_i
};

struct CompressionResult {
  Superstructure superstructure;
  std::vector<std::string> deleted;  // candidate ids
  double totalCost = 0;
  double totalGain = 0;
};

// Throws ValidationError (candidate not in the superstructure), InfeasibleError,
// EmptyComponentError.
CompressionResult compressSuperstructure(const Superstructure& super, const std::vector<DeletionCandidate>& candidates,
                                         double requiredGain);

struct DesignAlternativeCost {
  std::string da;
  double cost = 0;
  double profit = 0;
};

struct NewDesignResult {
  Selection selection;
  double totalCost = 0;
  double totalProfit = 0;
};

// One group per component, in superstructure key order. Every superstructure
// DA needs an entry in `costs` (ValidationError otherwise).
NewDesignResult newDesign(const Superstructure& super, const std::vector<DesignAlternativeCost>& costs, double budget,
                          SolverKind solver);

struct MedianResult {
  std::size_t index = 0;
  int totalDistance = 0;
  std::vector<std::vector<int>> distances;
};

// Prototype with the least summed mismatch count to all others (lowest index
// on ties). ValidationError on an empty set.
MedianResult setMedian(const PrototypeSet& protos);

}  // namespace morphshop::aggregation
