#include "morphshop/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "morphshop/errors.hpp"

namespace morphshop::solvers {

namespace {

constexpr double kEps = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool same(double a, double b) { return std::abs(a - b) <= kEps * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

void checkItem(const KnapsackItem& item, const std::string& path, std::set<std::string>& ids) {
  if (item.id.empty()) throw ValidationError("item without id", path + ".id");
  if (!ids.insert(item.id).second) throw ValidationError("duplicate item id '" + item.id + "'", path + ".id");
  if (!std::isfinite(item.cost) || item.cost < 0) throw ValidationError("cost must be a nonnegative number", path + ".cost");
  if (!std::isfinite(item.profit) || item.profit < 0)
    throw ValidationError("profit must be a nonnegative number", path + ".profit");
}

void checkBudget(double budget) {
  if (!std::isfinite(budget) || budget < 0) throw ValidationError("budget must be a nonnegative number", "budget");
}

bool integral(double v) { return std::abs(v - std::round(v)) <= kEps; }

long long integralCapacity(double budget) { return static_cast<long long>(std::floor(budget + kEps)); }

void checkCells(long long rows, long long cols) {
  if (cols > 0 && rows > kMaxDpCells / cols)
    throw CapacityOverflowError("dynamic programming table would need " + std::to_string(rows) + " x " +
                                std::to_string(cols) + " cells (limit " + std::to_string(kMaxDpCells) + ")");
}

std::vector<KnapsackItem> sortedById(std::vector<KnapsackItem> items) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return items;
}

SolverResult summarize(const std::vector<const KnapsackItem*>& picked, bool sortIds) {
  SolverResult r;
  for (const auto* item : picked) {
    r.chosen.push_back(item->id);
    r.totalCost += item->cost;
    r.totalProfit += item->profit;
  }
  if (sortIds) std::sort(r.chosen.begin(), r.chosen.end());
  return r;
}

}  // namespace

void validate(const KnapsackInstance& inst) {
  checkBudget(inst.budget);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < inst.items.size(); ++i)
    checkItem(inst.items[i], "items[" + std::to_string(i) + "]", ids);
}

void validate(const MultiChoiceInstance& inst) {
  checkBudget(inst.budget);
  std::set<std::string> groupIds, itemIds;
  for (std::size_t g = 0; g < inst.groups.size(); ++g) {
    const auto& group = inst.groups[g];
    const std::string path = "groups[" + std::to_string(g) + "]";
    if (!groupIds.insert(group.id).second)
      throw ValidationError("duplicate group id '" + group.id + "'", path + ".id");
    if (group.items.empty()) throw ValidationError("group '" + group.id + "' has no items", path + ".items");
    for (std::size_t i = 0; i < group.items.size(); ++i)
      checkItem(group.items[i], path + ".items[" + std::to_string(i) + "]", itemIds);
  }
}

SolverResult knapsackGreedy(const KnapsackInstance& inst) {
  validate(inst);
  std::vector<const KnapsackItem*> order;
  for (const auto& item : inst.items) order.push_back(&item);
  auto ratio = [](const KnapsackItem* it) { return it->cost == 0 ? kInf : it->profit / it->cost; };
  std::sort(order.begin(), order.end(), [&](const KnapsackItem* a, const KnapsackItem* b) {
    const double ra = ratio(a), rb = ratio(b);
    if (ra != rb) return ra > rb;
    if (a->profit != b->profit) return a->profit > b->profit;
    return a->id < b->id;
  });
  std::vector<const KnapsackItem*> picked;
  double used = 0;
  for (const auto* item : order) {
    if (used + item->cost <= inst.budget + kEps) {
      used += item->cost;
      picked.push_back(item);
    }
  }
  return summarize(picked, true);
}

SolverResult knapsackExact(const KnapsackInstance& inst) {
  validate(inst);
  for (std::size_t i = 0; i < inst.items.size(); ++i)
    if (!integral(inst.items[i].cost))
      throw ValidationError("exact solver needs integral costs", "items[" + std::to_string(i) + "].cost");
  const auto items = sortedById(inst.items);
  const long long n = static_cast<long long>(items.size());
  const long long cap = integralCapacity(inst.budget);
  checkCells(n + 1, cap + 1);

  // best[i][c]: max profit from items i.. with capacity c.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (long long i = n - 1; i >= 0; --i) {
    const long long cost = std::llround(items[i].cost);
    for (long long c = 0; c <= cap; ++c) {
      best[i][c] = best[i + 1][c];
      if (cost <= c) best[i][c] = std::max(best[i][c], items[i].profit + best[i + 1][c - cost]);
    }
  }

  std::vector<const KnapsackItem*> picked;
  long long c = cap;
  double need = best[0][cap];
  long long i = 0;
  bool found = true;
  while (need > kEps && found) {
    found = false;
    for (long long j = i; j < n; ++j) {
      const long long cost = std::llround(items[j].cost);
      if (items[j].profit > 0 && cost <= c && same(items[j].profit + best[j + 1][c - cost], need)) {
        found = true;
        picked.push_back(&items[j]);
        need -= items[j].profit;
        c -= cost;
        i = j + 1;
        break;
      }
    }
  }
  return summarize(picked, true);
}

SolverResult multiChoiceGreedy(const MultiChoiceInstance& inst) {
  validate(inst);
  std::vector<const KnapsackItem*> current;
  double used = 0;
  for (const auto& group : inst.groups) {
    const KnapsackItem* pick = nullptr;
    for (const auto& item : group.items) {
      if (!pick || item.cost < pick->cost || (item.cost == pick->cost && item.profit > pick->profit) ||
          (item.cost == pick->cost && item.profit == pick->profit && item.id < pick->id))
        pick = &item;
    }
    current.push_back(pick);
    used += pick->cost;
  }
  if (used > inst.budget + kEps)
    throw InfeasibleError("cheapest choice per group already costs " + std::to_string(used) +
                          ", above the budget");

  for (;;) {
    std::size_t bestGroup = 0;
    const KnapsackItem* bestItem = nullptr;
    double bestRatio = 0, bestGain = 0;
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
      for (const auto& item : inst.groups[g].items) {
        const double dc = item.cost - current[g]->cost;
        const double dp = item.profit - current[g]->profit;
        if (dc <= 0 || dp <= 0 || used + dc > inst.budget + kEps) continue;
        const double ratio = dp / dc;
        bool better = !bestItem || ratio > bestRatio ||
                      (ratio == bestRatio && (dp > bestGain || (dp == bestGain && item.id < bestItem->id)));
        if (better) {
          bestGroup = g;
          bestItem = &item;
          bestRatio = ratio;
          bestGain = dp;
        }
      }
    }
    if (!bestItem) break;
    used += bestItem->cost - current[bestGroup]->cost;
    current[bestGroup] = bestItem;
  }
  return summarize(current, false);
}

SolverResult multiChoiceExact(const MultiChoiceInstance& inst) {
  validate(inst);
  for (std::size_t g = 0; g < inst.groups.size(); ++g)
    for (std::size_t i = 0; i < inst.groups[g].items.size(); ++i)
      if (!integral(inst.groups[g].items[i].cost))
        throw ValidationError("exact solver needs integral costs",
                              "groups[" + std::to_string(g) + "].items[" + std::to_string(i) + "].cost");
  const long long groups = static_cast<long long>(inst.groups.size());
  const long long cap = integralCapacity(inst.budget);
  checkCells(groups + 1, cap + 1);

  std::vector<std::vector<KnapsackItem>> sorted;
  for (const auto& g : inst.groups) sorted.push_back(sortedById(g.items));

  // best[g][c]: max profit of one item from each group g.. within capacity c.
  std::vector<std::vector<double>> best(groups + 1, std::vector<double>(cap + 1, kNegInf));
  std::fill(best[groups].begin(), best[groups].end(), 0.0);
  for (long long g = groups - 1; g >= 0; --g) {
    for (long long c = 0; c <= cap; ++c) {
      for (const auto& item : sorted[g]) {
        const long long cost = std::llround(item.cost);
        if (cost > c || best[g + 1][c - cost] == kNegInf) continue;
        best[g][c] = std::max(best[g][c], item.profit + best[g + 1][c - cost]);
      }
    }
  }
  if (best[0][cap] == kNegInf) throw InfeasibleError("no choice of one item per group fits the budget");

  std::vector<const KnapsackItem*> picked;
  long long c = cap;
  double need = best[0][cap];
  for (long long g = 0; g < groups; ++g) {
    for (const auto& item : sorted[g]) {
      const long long cost = std::llround(item.cost);
      if (cost > c || best[g + 1][c - cost] == kNegInf) continue;
      if (same(item.profit + best[g + 1][c - cost], need)) {
        picked.push_back(&item);
        need -= item.profit;
        c -= cost;
        break;
      }
    }
  }
  return summarize(picked, false);
}

SolverResult knapsackMinCover(const KnapsackInstance& inst, double requiredProfit) {
  validate(inst);
  if (!std::isfinite(requiredProfit)) throw ValidationError("required profit must be finite", "requiredGain");
  for (std::size_t i = 0; i < inst.items.size(); ++i)
    if (!integral(inst.items[i].profit))
      throw ValidationError("minimum cover needs integral profits", "items[" + std::to_string(i) + "].profit");
  const long long need0 = std::max(0LL, static_cast<long long>(std::ceil(requiredProfit - kEps)));
  const auto items = sortedById(inst.items);
  const long long n = static_cast<long long>(items.size());
  checkCells(n + 1, need0 + 1);

  // least[i][r]: min cost from items i.. reaching profit >= r.
  std::vector<std::vector<double>> least(n + 1, std::vector<double>(need0 + 1, kInf));
  least[n][0] = 0.0;
  for (long long i = n - 1; i >= 0; --i) {
    const long long p = std::llround(items[i].profit);
    for (long long r = 0; r <= need0; ++r) {
      least[i][r] = least[i + 1][r];
      const double with = items[i].cost + least[i + 1][std::max(0LL, r - p)];
      least[i][r] = std::min(least[i][r], with);
    }
  }
  if (least[0][need0] == kInf)
    throw InfeasibleError("total profit of all items is below the required " + std::to_string(need0));

  std::vector<const KnapsackItem*> picked;
  long long r = need0;
  double budget = least[0][need0];
  long long i = 0;
  bool found = true;
  while (r > 0 && found) {
    found = false;
    for (long long j = i; j < n; ++j) {
      const long long p = std::llround(items[j].profit);
      const long long rest = std::max(0LL, r - p);
      if (p > 0 && least[j + 1][rest] != kInf && same(items[j].cost + least[j + 1][rest], budget)) {
        found = true;
        picked.push_back(&items[j]);
        budget -= items[j].cost;
        r = rest;
        i = j + 1;
        break;
      }
    }
  }
  return summarize(picked, true);
}

}  // namespace morphshop::solvers
