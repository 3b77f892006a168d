#include "morphshop/model.hpp"

#include <algorithm>
#include <set>

#include "morphshop/errors.hpp"

namespace morphshop {

struct MorphModel::Data {
  int priorityScaleMax = 3;
  TreeNode root;
  std::vector<Component> components;
  CompatibilityRelation compat;

  std::unordered_map<std::string, std::size_t> componentIndex;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> alternativeIndex;
  std::unordered_map<std::string, const TreeNode*> nodeIndex;
  std::unordered_map<std::string, const NamedComposite*> compositeIndex;
  std::unordered_map<std::string, std::string> compositeNode;
  std::unordered_map<std::string, std::vector<std::string>> leavesUnder;
};

CompatibilityRelation::Key CompatibilityRelation::key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

std::optional<int> CompatibilityRelation::set(std::string_view a, std::string_view b, int value) {
  auto [it, inserted] = entries_.try_emplace(key(a, b), value);
  if (inserted) return std::nullopt;
  int previous = it->second;
  it->second = value;
  return previous;
}

std::optional<int> CompatibilityRelation::find(std::string_view a, std::string_view b) const {
  auto it = entries_.find(key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct TreeIndexer {
  std::map<std::string, int> componentRefs;

  std::vector<std::string> index(const TreeNode& node, const std::string& path,
                                 std::unordered_map<std::string, const TreeNode*>& nodes,
                                 std::unordered_map<std::string, std::vector<std::string>>& leaves) {
    if (node.id.empty()) throw ValidationError("tree node without id", path + ".id");
    if (!nodes.emplace(node.id, &node).second)
      throw ValidationError("duplicate tree node id '" + node.id + "'", path + ".id");

    std::vector<std::string> under;
    if (node.isLeaf()) {
      if (!node.children.empty())
        throw ValidationError("node '" + node.id + "' has both children and a component", path);
      if (!node.composites.empty())
        throw ValidationError("leaf node '" + node.id + "' cannot declare composites", path + ".composites");
      under.push_back(*node.component);
      ++componentRefs[*node.component];
    } else {
      if (node.children.empty())
        throw ValidationError("node '" + node.id + "' has neither children nor a component", path);
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        auto sub = index(node.children[i], path + ".children[" + std::to_string(i) + "]", nodes, leaves);
        under.insert(under.end(), sub.begin(), sub.end());
      }
    }
    leaves.emplace(node.id, under);
    return under;
  }
};

void collectNodes(const TreeNode& node, const std::string& path,
                  std::vector<std::pair<const TreeNode*, std::string>>& out) {
  out.emplace_back(&node, path);
  for (std::size_t i = 0; i < node.children.size(); ++i)
    collectNodes(node.children[i], path + ".children[" + std::to_string(i) + "]", out);
}

}  // namespace

MorphModel MorphModel::create(ModelSpec spec) {
  auto data = std::make_shared<Data>();

  if (spec.priorityScaleMax < 1)
    throw ValidationError("priorityScaleMax must be >= 1", "priorityScaleMax");
  if (spec.compatScaleMax < 1)
    throw ValidationError("compatScaleMax must be >= 1", "compatScaleMax");
  const int defaultCompat = spec.defaultCompat.value_or(spec.compatScaleMax);
  if (defaultCompat < 0 || defaultCompat > spec.compatScaleMax)
    throw ValidationError("defaultCompat must lie in [0, compatScaleMax]", "defaultCompat");

  data->priorityScaleMax = spec.priorityScaleMax;
  data->compat = CompatibilityRelation(spec.compatScaleMax, defaultCompat);
  data->components = std::move(spec.components);
  data->root = std::move(spec.root);

  if (data->components.empty()) throw ValidationError("model has no components", "components");

  for (std::size_t c = 0; c < data->components.size(); ++c) {
    auto& comp = data->components[c];
    const std::string path = "components[" + std::to_string(c) + "]";
    if (comp.id.empty()) throw ValidationError("component without id", path + ".id");
    if (!data->componentIndex.emplace(comp.id, c).second)
      throw ValidationError("duplicate component id '" + comp.id + "'", path + ".id");
    if (comp.alternatives.empty())
      throw ValidationError("component '" + comp.id + "' has no alternatives", path + ".alternatives");
    for (std::size_t a = 0; a < comp.alternatives.size(); ++a) {
      auto& alt = comp.alternatives[a];
      const std::string apath = path + ".alternatives[" + std::to_string(a) + "]";
      if (alt.id.empty()) throw ValidationError("alternative without id", apath + ".id");
      if (!data->alternativeIndex.emplace(alt.id, std::pair{c, a}).second)
        throw ValidationError("duplicate alternative id '" + alt.id + "'", apath + ".id");
      if (alt.priority < 1 || alt.priority > spec.priorityScaleMax)
        throw ValidationError("priority of '" + alt.id + "' outside [1, " +
                                  std::to_string(spec.priorityScaleMax) + "]",
                              apath + ".priority");
      alt.componentId = comp.id;
    }
  }

  TreeIndexer indexer;
  indexer.index(data->root, "tree", data->nodeIndex, data->leavesUnder);
  for (const auto& [compId, refs] : indexer.componentRefs) {
    if (!data->componentIndex.contains(compId))
      throw ValidationError("tree leaf references unknown component '" + compId + "'", "tree");
    if (refs > 1)
      throw ValidationError("component '" + compId + "' is referenced by " + std::to_string(refs) + " leaves",
                            "tree");
  }
  for (const auto& comp : data->components)
    if (!indexer.componentRefs.contains(comp.id))
      throw ValidationError("component '" + comp.id + "' is not referenced by any tree leaf", "tree");

  // Named composites live in the same id namespace as design alternatives.
  std::vector<std::pair<const TreeNode*, std::string>> nodes;
  collectNodes(data->root, "tree", nodes);
  for (const auto& [node, path] : nodes) {
    const auto& under = data->leavesUnder.at(node->id);
    for (std::size_t i = 0; i < node->composites.size(); ++i) {
      const auto& nc = node->composites[i];
      const std::string cpath = path + ".composites[" + std::to_string(i) + "]";
      if (nc.id.empty()) throw ValidationError("composite without id", cpath + ".id");
      if (data->alternativeIndex.contains(nc.id) || !data->compositeIndex.emplace(nc.id, &nc).second)
        throw ValidationError("duplicate id '" + nc.id + "'", cpath + ".id");
      data->compositeNode.emplace(nc.id, node->id);
      std::set<std::string> expected(under.begin(), under.end());
      std::set<std::string> got;
      for (const auto& [compId, daId] : nc.selection) {
        auto it = data->alternativeIndex.find(daId);
        if (it == data->alternativeIndex.end() || data->components[it->second.first].id != compId)
          throw ValidationError("composite '" + nc.id + "' maps '" + compId + "' to unknown alternative '" +
                                    daId + "'",
                                cpath + ".selection." + compId);
        got.insert(compId);
      }
      if (got != expected)
        throw ValidationError("composite '" + nc.id + "' must select exactly the components under '" +
                                  node->id + "'",
                              cpath + ".selection");
    }
  }

  auto coverage = [&](const std::string& id) -> std::vector<std::string> {
    if (auto it = data->alternativeIndex.find(id); it != data->alternativeIndex.end())
      return {data->components[it->second.first].id};
    if (auto it = data->compositeNode.find(id); it != data->compositeNode.end())
      return data->leavesUnder.at(it->second);
    return {};
  };

  for (std::size_t i = 0; i < spec.compatibility.size(); ++i) {
    const auto& e = spec.compatibility[i];
    const std::string path = "compatibility[" + std::to_string(i) + "]";
    auto ca = coverage(e.a);
    if (ca.empty()) throw ValidationError("unknown id '" + e.a + "'", path + ".a");
    auto cb = coverage(e.b);
    if (cb.empty()) throw ValidationError("unknown id '" + e.b + "'", path + ".b");
    for (const auto& x : ca)
      if (std::find(cb.begin(), cb.end(), x) != cb.end())
        throw ValidationError("pair {" + e.a + "," + e.b + "} lies within component '" + x + "'", path);
    if (e.value < 0 || e.value > spec.compatScaleMax)
      throw ValidationError("compatibility value outside [0, " + std::to_string(spec.compatScaleMax) + "]",
                            path + ".value");
    if (data->compat.set(e.a, e.b, e.value))
      throw ValidationError("duplicate compatibility pair {" + e.a + "," + e.b + "}", path);
  }

  return MorphModel(std::move(data));
}

const TreeNode& MorphModel::root() const { return d_->root; }
const std::vector<Component>& MorphModel::components() const { return d_->components; }
const CompatibilityRelation& MorphModel::compatibility() const { return d_->compat; }
int MorphModel::priorityScaleMax() const { return d_->priorityScaleMax; }

const Component& MorphModel::component(std::string_view id) const {
  auto it = d_->componentIndex.find(std::string(id));
  if (it == d_->componentIndex.end()) throw UnknownIdError("unknown component '" + std::string(id) + "'");
  return d_->components[it->second];
}

const DesignAlternative& MorphModel::alternative(std::string_view id) const {
  auto it = d_->alternativeIndex.find(std::string(id));
  if (it == d_->alternativeIndex.end()) throw UnknownIdError("unknown alternative '" + std::string(id) + "'");
  return d_->components[it->second.first].alternatives[it->second.second];
}

const TreeNode& MorphModel::node(std::string_view id) const {
  auto it = d_->nodeIndex.find(std::string(id));
  if (it == d_->nodeIndex.end()) throw UnknownIdError("unknown node '" + std::string(id) + "'");
  return *it->second;
}

const NamedComposite* MorphModel::composite(std::string_view id) const {
  auto it = d_->compositeIndex.find(std::string(id));
  return it == d_->compositeIndex.end() ? nullptr : it->second;
}

const std::string& MorphModel::compositeNode(std::string_view compositeId) const {
  auto it = d_->compositeNode.find(std::string(compositeId));
  if (it == d_->compositeNode.end())
    throw UnknownIdError("unknown composite '" + std::string(compositeId) + "'");
  return it->second;
}

bool MorphModel::hasComponent(std::string_view id) const { return d_->componentIndex.contains(std::string(id)); }
bool MorphModel::hasAlternative(std::string_view id) const {
  return d_->alternativeIndex.contains(std::string(id));
}
bool MorphModel::hasNode(std::string_view id) const { return d_->nodeIndex.contains(std::string(id)); }

const std::vector<std::string>& MorphModel::componentsUnder(std::string_view nodeId) const {
  auto it = d_->leavesUnder.find(std::string(nodeId));
  if (it == d_->leavesUnder.end()) throw UnknownIdError("unknown node '" + std::string(nodeId) + "'");
  return it->second;
}

int MorphModel::compat(std::string_view a, std::string_view b) const {
  auto coverage = [this](std::string_view id) -> std::vector<std::string> {
    if (hasAlternative(id)) return {alternative(id).componentId};
    if (composite(id)) return componentsUnder(compositeNode(id));
    throw UnknownIdError("unknown id '" + std::string(id) + "'");
  };
  auto ca = coverage(a);
  auto cb = coverage(b);
  for (const auto& x : ca)
    if (std::find(cb.begin(), cb.end(), x) != cb.end())
      throw SameComponentError("'" + std::string(a) + "' and '" + std::string(b) + "' share component '" + x +
                               "'");
  return d_->compat.lookup(a, b);
}

ModelSpec MorphModel::toSpec() const {
  ModelSpec spec;
  spec.priorityScaleMax = d_->priorityScaleMax;
  spec.compatScaleMax = d_->compat.scaleMax();
  spec.defaultCompat = d_->compat.defaultValue();
  spec.root = d_->root;
  spec.components = d_->components;
  for (const auto& [key, value] : d_->compat.entries())
    spec.compatibility.push_back({key.first, key.second, value});
  return spec;
}

std::string_view toString(SelectionViolation::Kind kind) {
  switch (kind) {
    case SelectionViolation::Kind::MissingComponent: return "missing_component";
    case SelectionViolation::Kind::UnknownComponent: return "unknown_component";
    case SelectionViolation::Kind::UnknownAlternative: return "unknown_alternative";
    case SelectionViolation::Kind::WrongComponent: return "wrong_component";
    case SelectionViolation::Kind::ZeroCompat: return "zero_compat";
  }
  return "unknown";
}

namespace {

std::vector<SelectionViolation> checkSelection(const MorphModel& model, const Selection& selection,
                                               bool requireComplete) {
  using Kind = SelectionViolation::Kind;
  std::vector<SelectionViolation> out;
  if (requireComplete) {
    for (const auto& comp : model.components())
      if (!selection.contains(comp.id))
        out.push_back({Kind::MissingComponent, comp.id, {}, {}, "no alternative selected for '" + comp.id + "'"});
  }

  std::vector<std::string> resolved;
  for (const auto& [compId, daId] : selection) {
    if (!model.hasComponent(compId)) {
      out.push_back({Kind::UnknownComponent, compId, daId, {}, "unknown component '" + compId + "'"});
      continue;
    }
    if (!model.hasAlternative(daId)) {
      out.push_back({Kind::UnknownAlternative, compId, daId, {}, "unknown alternative '" + daId + "'"});
      continue;
    }
    if (model.alternative(daId).componentId != compId) {
      out.push_back({Kind::WrongComponent, compId, daId, {},
                     "'" + daId + "' is not an alternative of '" + compId + "'"});
      continue;
    }
    resolved.push_back(daId);
  }

  for (std::size_t i = 0; i < resolved.size(); ++i)
    for (std::size_t j = i + 1; j < resolved.size(); ++j)
      if (model.compatibility().lookup(resolved[i], resolved[j]) == 0)
        out.push_back({Kind::ZeroCompat,
                       model.alternative(resolved[i]).componentId,
                       {},
                       {resolved[i], resolved[j]},
                       "'" + resolved[i] + "' is incompatible with '" + resolved[j] + "'"});
  return out;
}

}  // namespace

std::vector<SelectionViolation> validateSelection(const MorphModel& model, const Selection& selection) {
  return checkSelection(model, selection, true);
}

std::vector<SelectionViolation> validatePartialSelection(const MorphModel& model, const Selection& selection) {
  return checkSelection(model, selection, false);
}

}  // namespace morphshop
