#include "morphshop/synthesis.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>

#include "morphshop/errors.hpp"

namespace morphshop::synthesis {

bool dominates(const ExcellenceVector& a, const ExcellenceVector& b) {
  if (a.n.size() != b.n.size())
    throw ScaleMismatchError("excellence vectors use different priority scales (" + std::to_string(a.n.size()) +
                             " vs " + std::to_string(b.n.size()) + ")");
  int totalA = 0, totalB = 0;
  for (std::size_t r = 0; r < a.n.size(); ++r) {
    totalA += a.n[r];
    totalB += b.n[r];
  }
  if (totalA != totalB)
    throw ScaleMismatchError("excellence vectors count different numbers of parts (" + std::to_string(totalA) +
                             " vs " + std::to_string(totalB) + ")");
  if (a.w < b.w) return false;
  int prefixA = 0, prefixB = 0;
  for (std::size_t r = 0; r < a.n.size(); ++r) {
    prefixA += a.n[r];
    prefixB += b.n[r];
    if (prefixA < prefixB) return false;
  }
  return a != b;
}

bool rankedBefore(const ExcellenceVector& a, const ExcellenceVector& b) {
  if (a.w != b.w) return a.w > b.w;
  return a.n > b.n;
}

ExcellenceVector excellence(const MorphModel& model, const Selection& selection) {
  if (selection.empty()) throw IncompleteSelectionError("selection is empty");
  ExcellenceVector ev{model.compatScaleMax(), std::vector<int>(model.priorityScaleMax(), 0)};
  std::vector<std::string> das;
  for (const auto& [compId, daId] : selection) {
    model.component(compId);
    const auto& alt = model.alternative(daId);
    if (alt.componentId != compId)
      throw UnknownIdError("'" + daId + "' is not an alternative of component '" + compId + "'");
    ++ev.n[alt.priority - 1];
    das.push_back(daId);
  }
  for (std::size_t i = 0; i < das.size(); ++i)
    for (std::size_t j = i + 1; j < das.size(); ++j)
      ev.w = std::min(ev.w, model.compatibility().lookup(das[i], das[j]));
  return ev;
}

ExcellenceVector excellence(const MorphModel& model, const Selection& selection, const std::string& nodeId) {
  const auto& under = model.componentsUnder(nodeId);
  for (const auto& comp : under)
    if (!selection.contains(comp))
      throw IncompleteSelectionError("selection misses component '" + comp + "' under node '" + nodeId + "'");
  if (selection.size() != under.size())
    throw IncompleteSelectionError("selection covers components outside node '" + nodeId + "'");
  return excellence(model, selection);
}

namespace {

struct Sol {
  std::vector<int> das;  // DA indices in componentsUnder(node) order
  ExcellenceVector ev;
  std::vector<std::string> partIds;
  int layer = 1;
};

std::vector<int> distinctLayers(const std::vector<const ExcellenceVector*>& vectors) {
  // Peel over distinct vectors, then map back.
  std::vector<ExcellenceVector> distinct;
  std::vector<std::size_t> slot(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), *vectors[i]);
    if (it == distinct.end()) {
      distinct.push_back(*vectors[i]);
      it = distinct.end() - 1;
    }
    slot[i] = static_cast<std::size_t>(it - distinct.begin());
  }
  std::vector<int> layerOf(distinct.size(), 0);
  std::size_t left = distinct.size();
  for (int layer = 1; left > 0; ++layer) {
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (layerOf[i] != 0) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < distinct.size() && !dominated; ++j)
        dominated = layerOf[j] == 0 && dominates(distinct[j], distinct[i]);
      if (!dominated) current.push_back(i);
    }
    for (auto i : current) layerOf[i] = layer;
    left -= current.size();
  }
  std::vector<int> out(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) out[i] = layerOf[slot[i]];
  return out;
}

class Composer {
 public:
  Composer(const MorphModel& model, const ComposeOptions& options)
      : model_(model), options_(options), l_(model.compatScaleMax()), k_(model.priorityScaleMax()) {
    for (const auto& comp : model.components())
      for (const auto& alt : comp.alternatives) {
        index_.emplace(alt.id, static_cast<int>(ids_.size()));
        ids_.push_back(alt.id);
        priority_.push_back(alt.priority);
      }
    std::vector<const TreeNode*> stack{&model.root()};
    while (!stack.empty()) {
      const TreeNode* node = stack.back();
      stack.pop_back();
      for (const auto& nc : node->composites) {
        index_.emplace(nc.id, static_cast<int>(ids_.size()));
        ids_.push_back(nc.id);
        priority_.push_back(0);
      }
      for (const auto& child : node->children) stack.push_back(&child);
    }
    for (const auto& [key, value] : model.compatibility().entries())
      explicit_.emplace(pairKey(index_.at(key.first), index_.at(key.second)), value);
    for (const auto& [compId, daId] : options.fixed) {
      const auto& alt = model.alternative(daId);
      model.component(compId);
      if (alt.componentId != compId)
        throw UnknownIdError("'" + daId + "' is not an alternative of component '" + compId + "'");
    }
  }

  std::vector<Sol> solve(const TreeNode& node, bool flat) {
    if (node.isLeaf()) return leafSolutions(*node.component);

    std::vector<std::vector<Sol>> childSols;
    std::vector<const TreeNode*> childNodes;
    if (flat) {
      for (const auto& comp : model_.componentsUnder(node.id)) childSols.push_back(leafSolutions(comp));
    } else {
      for (const auto& child : node.children) {
        childSols.push_back(solve(child, false));
        childNodes.push_back(&child);
      }
    }
    const bool level = !flat && options_.mode == Mode::Level;

    struct Partial {
      Sol sol;
      std::vector<std::pair<std::vector<int>, int>> parts;  // (das, named id index or -1)
    };
    std::vector<Partial> partials(1);
    partials[0].sol.ev = {l_, std::vector<int>(k_, 0)};

    for (std::size_t c = 0; c < childSols.size(); ++c) {
      std::vector<Partial> next;
      for (const auto& partial : partials) {
        for (const auto& child : childSols[c]) {
          int w = partial.sol.ev.w;
          int named = -1;
          std::string partId;
          int partPriority = 0;
          if (level) {
            const TreeNode& childNode = *childNodes[c];
            if (childNode.isLeaf()) {
              named = child.das.front();
              partId = ids_[named];
              partPriority = priority_[named];
            } else {
              named = namedComposite(childNode, child.das);
              partId = named >= 0 ? ids_[named] : joinIds(child.das);
              partPriority = std::min(child.layer, k_);
            }
            for (const auto& [otherDas, otherNamed] : partial.parts) {
              w = std::min(w, partCompat(otherDas, otherNamed, child.das, named));
              if (w == 0) break;
            }
          } else {
            w = std::min(w, child.ev.w);
            for (int a : partial.sol.das) {
              if (w == 0) break;
              for (int b : child.das) {
                w = std::min(w, compat(a, b));
                if (w == 0) break;
              }
            }
          }
          if (w == 0) continue;

          if (++generated_ > options_.maxSolutions)
            throw ExplosionError("composition of node '" + node.id + "' exceeds " +
                                     std::to_string(options_.maxSolutions) + " candidates",
                                 options_.maxSolutions);
          Partial grown = partial;
          grown.sol.ev.w = w;
          grown.sol.das.insert(grown.sol.das.end(), child.das.begin(), child.das.end());
          if (level) {
            ++grown.sol.ev.n[partPriority - 1];
            grown.sol.partIds.push_back(partId);
            grown.parts.emplace_back(child.das, named);
          } else {
            for (int r = 0; r < k_; ++r) grown.sol.ev.n[r] += child.ev.n[r];
          }
          next.push_back(std::move(grown));
        }
      }
      partials = std::move(next);
      if (partials.empty()) break;
    }

    std::vector<Sol> out;
    out.reserve(partials.size());
    for (auto& p : partials) out.push_back(std::move(p.sol));

    std::vector<const ExcellenceVector*> vectors;
    for (const auto& s : out) vectors.push_back(&s.ev);
    auto layers = distinctLayers(vectors);
    std::vector<Sol> kept;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].layer = layers[i];
      if (!options_.paretoOnly || layers[i] == 1) kept.push_back(std::move(out[i]));
    }
    return kept;
  }

  CompositeSolution toSolution(const TreeNode& node, const Sol& sol, bool flat) const {
    CompositeSolution cs;
    cs.nodeId = node.id;
    for (int da : sol.das) cs.selection[model_.alternative(ids_[da]).componentId] = ids_[da];
    cs.excellence = sol.ev;
    cs.layer = sol.layer;
    if (!flat && options_.mode == Mode::Level && !node.isLeaf())
      for (std::size_t i = 0; i < node.children.size() && i < sol.partIds.size(); ++i)
        cs.parts[node.children[i].id] = sol.partIds[i];
    return cs;
  }

 private:
  static std::uint64_t pairKey(int a, int b) {
    if (b < a) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  int compat(int a, int b) const {
    auto it = explicit_.find(pairKey(a, b));
    return it == explicit_.end() ? model_.compatibility().defaultValue() : it->second;
  }

  int partCompat(const std::vector<int>& a, int namedA, const std::vector<int>& b, int namedB) const {
    if (namedA >= 0 && namedB >= 0)
      if (auto it = explicit_.find(pairKey(namedA, namedB)); it != explicit_.end()) return it->second;
    int w = l_;
    for (int x : a)
      for (int y : b) w = std::min(w, compat(x, y));
    return w;
  }

  int namedComposite(const TreeNode& node, const std::vector<int>& das) const {
    for (const auto& nc : node.composites) {
      bool same = nc.selection.size() == das.size();
      for (std::size_t i = 0; same && i < das.size(); ++i) {
        const auto& alt = model_.alternative(ids_[das[i]]);
        auto it = nc.selection.find(alt.componentId);
        same = it != nc.selection.end() && it->second == alt.id;
      }
      if (same) return index_.at(nc.id);
    }
    return -1;
  }

  std::string joinIds(const std::vector<int>& das) const {
    std::string out;
    for (int d : das) {
      if (!out.empty()) out += '*';
      out += ids_[d];
    }
    return out;
  }

  std::vector<Sol> leafSolutions(const std::string& compId) const {
    const auto& comp = model_.component(compId);
    auto pinned = options_.fixed.find(compId);
    std::vector<Sol> out;
    for (const auto& alt : comp.alternatives) {
      if (pinned != options_.fixed.end() && pinned->second != alt.id) continue;
      Sol s;
      s.das = {index_.at(alt.id)};
      s.ev = {l_, std::vector<int>(k_, 0)};
      s.ev.n[alt.priority - 1] = 1;
      s.partIds = {alt.id};
      s.layer = alt.priority;
      out.push_back(std::move(s));
    }
    return out;
  }

  const MorphModel& model_;
  const ComposeOptions& options_;
  int l_;
  int k_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> ids_;
  std::vector<int> priority_;
  std::unordered_map<std::uint64_t, int> explicit_;
  std::size_t generated_ = 0;
};

bool solutionBefore(const CompositeSolution& a, const CompositeSolution& b) {
  if (a.excellence != b.excellence) return rankedBefore(a.excellence, b.excellence);
  return a.selection < b.selection;
}

std::vector<CompositeSolution> run(const MorphModel& model, const std::string& nodeId,
                                   const ComposeOptions& options, bool flat) {
  const TreeNode& node = model.node(nodeId);
  Composer composer(model, options);
  auto sols = composer.solve(node, flat);
  std::vector<CompositeSolution> out;
  out.reserve(sols.size());
  for (const auto& s : sols) out.push_back(composer.toSolution(node, s, flat));
  std::stable_sort(out.begin(), out.end(), solutionBefore);
  return out;
}

}  // namespace

std::vector<CompositeSolution> composeNode(const MorphModel& model, const std::string& nodeId,
                                           const ComposeOptions& options) {
  return run(model, nodeId, options, false);
}

std::vector<CompositeSolution> composeFlat(const MorphModel& model, const std::string& nodeId,
                                           const ComposeOptions& options) {
  return run(model, nodeId, options, true);
}

std::vector<int> dominanceLayers(const std::vector<ExcellenceVector>& vectors) {
  std::vector<const ExcellenceVector*> ptrs;
  for (const auto& v : vectors) ptrs.push_back(&v);
  return distinctLayers(ptrs);
}

std::vector<CompositeSolution> paretoFilter(std::vector<CompositeSolution> candidates) {
  std::vector<ExcellenceVector> vectors;
  for (const auto& c : candidates) vectors.push_back(c.excellence);
  auto layers = dominanceLayers(vectors);
  std::vector<CompositeSolution> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (layers[i] == 1) out.push_back(std::move(candidates[i]));
  std::stable_sort(out.begin(), out.end(), solutionBefore);
  return out;
}

std::string formatVector(const ExcellenceVector& v) {
  std::string out = "(" + std::to_string(v.w) + ";";
  for (std::size_t i = 0; i < v.n.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v.n[i]);
  }
  return out + ")";
}

std::string formatSelection(const Selection& s, const std::vector<std::string>& order) {
  std::string out;
  for (const auto& comp : order) {
    auto it = s.find(comp);
    if (it == s.end()) continue;
    if (!out.empty()) out += "*";
    out += it->second;
  }
  return out;
}

}  // namespace morphshop::synthesis
