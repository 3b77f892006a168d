#include "morphshop/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "morphshop/errors.hpp"

namespace morphshop::ranking {

namespace {

constexpr double kEps = 1e-12;

// Orients an estimate so that larger is always better.
double oriented(const Criterion& c, double v) { return c.direction == Direction::Maximize ? v : -v; }

LayerPartition fromLayers(std::vector<std::vector<std::string>> layers) {
  LayerPartition out;
  out.layers = std::move(layers);
  for (std::size_t i = 0; i < out.layers.size(); ++i)
    for (const auto& id : out.layers[i]) out.priorityOf[id] = static_cast<int>(i) + 1;
  return out;
}

}  // namespace

void validate(const CriteriaTable& table) {
  std::set<std::string> ids;
  for (std::size_t j = 0; j < table.criteria.size(); ++j) {
    const auto& c = table.criteria[j];
    if (!ids.insert(c.id).second)
      throw ValidationError("duplicate criterion id '" + c.id + "'", "criteria[" + std::to_string(j) + "].id");
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight))
      throw ValidationError("criterion weight must be a nonnegative number",
                            "criteria[" + std::to_string(j) + "].weight");
  }
  ids.clear();
  for (std::size_t i = 0; i < table.items.size(); ++i) {
    const auto& item = table.items[i];
    const std::string path = "items[" + std::to_string(i) + "]";
    if (!ids.insert(item.id).second) throw ValidationError("duplicate item id '" + item.id + "'", path + ".id");
    if (item.estimates.size() != table.criteria.size())
      throw ValidationError("item '" + item.id + "' has " + std::to_string(item.estimates.size()) +
                                " estimates for " + std::to_string(table.criteria.size()) + " criteria",
                            path + ".estimates");
    for (double v : item.estimates)
      if (!std::isfinite(v)) throw ValidationError("non-finite estimate", path + ".estimates");
  }
}

bool paretoDominates(const CriteriaTable& table, const Item& a, const Item& b) {
  bool strict = false;
  for (std::size_t j = 0; j < table.criteria.size(); ++j) {
    const double x = oriented(table.criteria[j], a.estimates[j]);
    const double y = oriented(table.criteria[j], b.estimates[j]);
    if (x < y) return false;
    if (x > y) strict = true;
  }
  return strict;
}

double concordance(const CriteriaTable& table, const Item& a, const Item& b) {
  double agree = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < table.criteria.size(); ++j) {
    const auto& c = table.criteria[j];
    total += c.weight;
    if (oriented(c, a.estimates[j]) >= oriented(c, b.estimates[j])) agree += c.weight;
  }
  return total > 0.0 ? agree / total : 0.0;
}

LayerPartition dominanceLayers(const CriteriaTable& table) {
  validate(table);
  if (table.items.empty()) throw EmptyTableError("criteria table has no items");

  const std::size_t n = table.items.size();
  std::vector<bool> removed(n, false);
  std::size_t left = n;
  std::vector<std::vector<std::string>> layers;
  while (left > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
      if (removed[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < n && !dominated; ++j)
        dominated = !removed[j] && j != i && paretoDominates(table, table.items[j], table.items[i]);
      if (!dominated) layer.push_back(i);
    }
    std::vector<std::string> ids;
    for (auto i : layer) {
      removed[i] = true;
      ids.push_back(table.items[i].id);
    }
    left -= layer.size();
    layers.push_back(std::move(ids));
  }
  return fromLayers(std::move(layers));
}

LayerPartition outrankLayers(const CriteriaTable& table, double threshold) {
  validate(table);
  if (table.items.empty()) throw EmptyTableError("criteria table has no items");
  if (!(threshold > 0.5 && threshold <= 1.0))
    throw ValidationError("concordance threshold must lie in (0.5, 1]", "threshold");
  const double weightSum = std::accumulate(table.criteria.begin(), table.criteria.end(), 0.0,
                                           [](double s, const Criterion& c) { return s + c.weight; });
  if (!(weightSum > 0.0)) throw ValidationError("criterion weights must sum to a positive value", "criteria");

  const std::size_t n = table.items.size();
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) edge[i][j] = concordance(table, table.items[i], table.items[j]) >= threshold - kEps;

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onStack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int compCount = 0;
  std::function<void(std::size_t)> strongConnect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onStack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!edge[v][w]) continue;
      if (index[w] < 0) {
        strongConnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (onStack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        onStack[w] = false;
        comp[w] = compCount;
      } while (w != v);
      ++compCount;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) strongConnect(v);

  std::vector<std::set<int>> incoming(compCount);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge[i][j] && comp[i] != comp[j]) incoming[comp[j]].insert(comp[i]);

  std::vector<bool> peeled(compCount, false);
  int remaining = compCount;
  std::vector<std::vector<std::string>> layers;
  while (remaining > 0) {
    std::vector<int> sources;
    for (int c = 0; c < compCount; ++c) {
      if (peeled[c]) continue;
      bool hasLiveParent = std::any_of(incoming[c].begin(), incoming[c].end(), [&](int p) { return !peeled[p]; });
      if (!hasLiveParent) sources.push_back(c);
    }
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(sources.begin(), sources.end(), comp[i]) != sources.end()) ids.push_back(table.items[i].id);
    for (int c : sources) peeled[c] = true;
    remaining -= static_cast<int>(sources.size());
    layers.push_back(std::move(ids));
  }
  return fromLayers(std::move(layers));
}

}  // namespace morphshop::ranking
