#pragma once

// Brute-force reference implementations used by the unit, property and
// acceptance tests. They share no code with the engine beyond the model
// accessors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morphshop/model.hpp"

namespace oracle {

struct Vec {
  int w = 0;
  std::vector<int> n;
  auto operator<=>(const Vec&) const = default;
};

inline bool dominates(const Vec& a, const Vec& b) {
  if (a == b || a.w < b.w) return false;
  std::vector<int> ca(a.n.size()), cb(b.n.size());
  std::partial_sum(a.n.begin(), a.n.end(), ca.begin());
  std::partial_sum(b.n.begin(), b.n.end(), cb.begin());
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] < cb[i]) return false;
  return true;
}

inline std::set<Vec> paretoVectors(const std::vector<Vec>& all) {
  std::set<Vec> distinct(all.begin(), all.end());
  std::set<Vec> out;
  for (const auto& v : distinct) {
    bool dominated = false;
    for (const auto& u : distinct) dominated = dominated || dominates(u, v);
    if (!dominated) out.insert(v);
  }
  return out;
}

struct Composite {
  morphshop::Selection selection;
  Vec vec;
};

// Every feasible (w > 0) combination of the leaves under `nodeId`, with its
// leaf-level excellence.
inline std::vector<Composite> enumerate(const morphshop::MorphModel& model, const std::string& nodeId) {
  const auto& comps = model.componentsUnder(nodeId);
  std::vector<const morphshop::Component*> cs;
  for (const auto& c : comps) cs.push_back(&model.component(c));
  std::vector<std::size_t> pick(cs.size(), 0);
  std::vector<Composite> out;
  while (true) {
    Composite c;
    c.vec.w = model.compatScaleMax();
    c.vec.n.assign(model.priorityScaleMax(), 0);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto& alt = cs[i]->alternatives[pick[i]];
      c.selection[cs[i]->id] = alt.id;
      c.vec.n[alt.priority - 1] += 1;
      for (std::size_t j = 0; j < i; ++j)
        c.vec.w = std::min(c.vec.w, model.compat(cs[j]->alternatives[pick[j]].id, alt.id));
    }
    if (c.vec.w > 0) out.push_back(std::move(c));
    std::size_t k = 0;
    while (k < cs.size() && ++pick[k] == cs[k]->alternatives.size()) pick[k++] = 0;
    if (k == cs.size()) break;
  }
  return out;
}

// Pareto-efficient composites of the flat product under a node.
inline std::vector<Composite> pareto(const morphshop::MorphModel& model, const std::string& nodeId) {
  const auto all = enumerate(model, nodeId);
  std::vector<Vec> vecs;
  for (const auto& c : all) vecs.push_back(c.vec);
  const auto front = paretoVectors(vecs);
  std::vector<Composite> out;
  for (const auto& c : all)
    if (front.contains(c.vec)) out.push_back(c);
  return out;
}

struct Item {
  std::string id;
  double cost;
  double profit;
};

// Best profit over all subsets within the budget.
inline double knapsackBest(const std::vector<Item>& items, double budget) {
  double best = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double cost = 0, profit = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        cost += items[i].cost;
        profit += items[i].profit;
      }
    if (cost <= budget + 1e-9) best = std::max(best, profit);
  }
  return best;
}

// Least cost over subsets reaching the required profit; -1 if unreachable.
inline double minCoverCost(const std::vector<Item>& items, double required) {
  double best = -1;
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double cost = 0, profit = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        cost += items[i].cost;
        profit += items[i].profit;
      }
    if (profit + 1e-9 >= required && (best < 0 || cost < best)) best = cost;
  }
  return best;
}

// Best profit choosing exactly one item per group; -1 if nothing fits.
inline double multiChoiceBest(const std::vector<std::vector<Item>>& groups, double budget) {
  double best = -1;
  std::vector<std::size_t> pick(groups.size(), 0);
  while (true) {
    double cost = 0, profit = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      cost += groups[g][pick[g]].cost;
      profit += groups[g][pick[g]].profit;
    }
    if (cost <= budget + 1e-9) best = std::max(best, profit);
    std::size_t k = 0;
    while (k < groups.size() && ++pick[k] == groups[k].size()) pick[k++] = 0;
    if (k == groups.size()) break;
  }
  return best;
}

inline int mismatches(const morphshop::Selection& a, const morphshop::Selection& b) {
  int d = 0;
  for (const auto& [c, da] : a)
    if (b.at(c) != da) ++d;
  return d;
}

}  // namespace oracle
