#pragma once

#include <map>
#include <string>
#include <vector>

namespace morphshop::ranking {

enum class Direction { Maximize, Minimize };

struct Criterion {
  std::string id;
  Direction direction = Direction::Maximize;
  double weight = 1.0;
};

struct Item {
  std::string id;
  std::vector<double> estimates;  // one per criterion
};

struct CriteriaTable {
  std::vector<Criterion> criteria;
  std::vector<Item> items;
};

// Ordered quality layers; priorityOf maps each item to its 1-based layer.
struct LayerPartition {
  std::vector<std::vector<std::string>> layers;
  std::map<std::string, int> priorityOf;

  bool operator==(const LayerPartition&) const = default;
};

// Throws ValidationError on ragged rows, duplicate ids, negative weights.
void validate(const CriteriaTable& table);

// True iff `a` is at least as good as `b` on every criterion and strictly
// better on one (directions applied).
bool paretoDominates(const CriteriaTable& table, const Item& a, const Item& b);

// Weight fraction of criteria on which `a` is at least as good as `b`.
double concordance(const CriteriaTable& table, const Item& a, const Item& b);

// Pareto peeling: layer j holds the items nondominated once layers < j are
// removed. Items keep table order inside a layer. Throws EmptyTableError.
LayerPartition dominanceLayers(const CriteriaTable& table);

constexpr double kDefaultConcordanceThreshold = 0.7;

// Concordance-only outranking: edge i->j when concordance(i, j) >= threshold.
// Strongly connected components are merged, then source components are
// peeled off layer by layer. Threshold must lie in (0.5, 1].
LayerPartition outrankLayers(const CriteriaTable& table, double threshold = kDefaultConcordanceThreshold);

}  // namespace morphshop::ranking
