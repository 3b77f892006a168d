#pragma once

#include <string>
#include <vector>

namespace morphshop::solvers {

struct KnapsackItem {
  std::string id;
  double cost = 0;    // a_i
  double profit = 0;  // c_i
};

struct KnapsackInstance {
  double budget = 0;
  std::vector<KnapsackItem> items;
};

struct ItemGroup {
  std::string id;
  std::vector<KnapsackItem> items;
};

struct MultiChoiceInstance {
  double budget = 0;
  std::vector<ItemGroup> groups;
};

struct SolverResult {
  std::vector<std::string> chosen;  // knapsack: sorted ids; mckp: one id per group, group order
  double totalCost = 0;
  double totalProfit = 0;

  bool operator==(const SolverResult&) const = default;
};

// ValidationError on negative cost/profit/budget, duplicate ids, empty group.
void validate(const KnapsackInstance& inst);
void validate(const MultiChoiceInstance& inst);

// Ratio greedy: items by profit/cost desc (zero cost first), ties by profit
// desc then id; an item is taken iff it still fits.
SolverResult knapsackGreedy(const KnapsackInstance& inst);

// Dynamic programming over the integer budget. Costs must be integral.
// Among optima the lexicographically smallest sorted id set is returned.
// Throws CapacityOverflowError when the table would exceed 10^7 cells.
SolverResult knapsackExact(const KnapsackInstance& inst);

// Start from the cheapest item of every group, then repeatedly apply the
// fitting upgrade with the best profit gain per extra cost.
// Throws InfeasibleError when even the cheapest choices exceed the budget.
SolverResult multiChoiceGreedy(const MultiChoiceInstance& inst);

// Exact DP; ties resolved to the lexicographically smallest id sequence in
// group order. Throws InfeasibleError / CapacityOverflowError.
SolverResult multiChoiceExact(const MultiChoiceInstance& inst);

// Minimum total cost subset whose profit is at least `requiredProfit`.
// Profits must be integral. Throws InfeasibleError when unreachable.
SolverResult knapsackMinCover(const KnapsackInstance& inst, double requiredProfit);

constexpr long long kMaxDpCells = 10'000'000;

}  // namespace morphshop::solvers
