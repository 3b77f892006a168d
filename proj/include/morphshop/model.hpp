#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace morphshop {

// Component id -> design alternative id. Ordered so that iteration (and any
// serialization) is deterministic.
using Selection = std::map<std::string, std::string>;

struct DesignAlternative {
  std::string id;
  std::string label;
  int priority = 1;  // 1 = best
  std::string componentId;

  bool operator==(const DesignAlternative&) const = default;
};

struct Component {
  std::string id;
  std::string label;
  std::vector<DesignAlternative> alternatives;

  bool operator==(const Component&) const = default;
};

// A named composite DA declared on an internal node, e.g. M1 = U1*V1. Lets
// compatibility estimates be given between whole subsystems and other parts.
struct NamedComposite {
  std::string id;
  std::string label;
  Selection selection;

  bool operator==(const NamedComposite&) const = default;
};

struct TreeNode {
  std::string id;
  std::string label;
  std::vector<TreeNode> children;
  std::optional<std::string> component;  // set iff leaf
  std::vector<NamedComposite> composites;

  bool isLeaf() const { return component.has_value(); }
  bool operator==(const TreeNode&) const = default;
};

// Ordinal compatibility between parts of different components. Keys are
// stored with the lexicographically smaller id first, so lookup is symmetric.
class CompatibilityRelation {
 public:
  using Key = std::pair<std::string, std::string>;

  CompatibilityRelation() = default;
  CompatibilityRelation(int scaleMax, int defaultValue)
      : scaleMax_(scaleMax), defaultValue_(defaultValue) {}

  static Key key(std::string_view a, std::string_view b);

  // Returns the previous value when the pair was already present.
  std::optional<int> set(std::string_view a, std::string_view b, int value);
  std::optional<int> find(std::string_view a, std::string_view b) const;
  int lookup(std::string_view a, std::string_view b) const {
    return find(a, b).value_or(defaultValue_);
  }

  int scaleMax() const { return scaleMax_; }
  int defaultValue() const { return defaultValue_; }
  const std::map<Key, int>& entries() const { return entries_; }

  bool operator==(const CompatibilityRelation&) const = default;

 private:
  int scaleMax_ = 3;
  int defaultValue_ = 3;
  std::map<Key, int> entries_;
};

// Raw, unvalidated model content. MorphModel::create validates it.
struct ModelSpec {
  int priorityScaleMax = 3;
  int compatScaleMax = 3;
  std::optional<int> defaultCompat;  // defaults to compatScaleMax
  TreeNode root;
  std::vector<Component> components;
  struct CompatEntry {
    std::string a;
    std::string b;
    int value = 0;
  };
  std::vector<CompatEntry> compatibility;
};

// The validated, immutable morphological model. Safe to share across threads.
class MorphModel {
 public:
  // Throws ValidationError (with a document path) on any invariant violation.
  static MorphModel create(ModelSpec spec);

  const TreeNode& root() const;
  const std::vector<Component>& components() const;
  const CompatibilityRelation& compatibility() const;
  int priorityScaleMax() const;
  int compatScaleMax() const { return compatibility().scaleMax(); }

  const Component& component(std::string_view id) const;  // UnknownIdError
  const DesignAlternative& alternative(std::string_view id) const;  // UnknownIdError
  const TreeNode& node(std::string_view id) const;  // UnknownIdError
  const NamedComposite* composite(std::string_view id) const;

  bool hasComponent(std::string_view id) const;
  bool hasAlternative(std::string_view id) const;
  bool hasNode(std::string_view id) const;

  // Leaf component ids under a node in tree (left-to-right) order.
  const std::vector<std::string>& componentsUnder(std::string_view nodeId) const;

  // compat(a, b) for DA ids (or named composite ids) of disjoint components.
  // Throws UnknownIdError / SameComponentError.
  int compat(std::string_view a, std::string_view b) const;

  // Id of the node declaring a named composite.
  const std::string& compositeNode(std::string_view compositeId) const;

  // Converts back to the raw spec (used for saving).
  ModelSpec toSpec() const;

 private:
  struct Data;
  explicit MorphModel(std::shared_ptr<const Data> data) : d_(std::move(data)) {}

  std::shared_ptr<const Data> d_;
};

// One reason a selection is not a feasible complete composition.
struct SelectionViolation {
  enum class Kind { MissingComponent, UnknownComponent, UnknownAlternative, WrongComponent, ZeroCompat };
  Kind kind;
  std::string component;
  std::string alternative;
  std::pair<std::string, std::string> pair;  // set for ZeroCompat
  std::string message;

  bool operator==(const SelectionViolation&) const = default;
};

std::string_view toString(SelectionViolation::Kind kind);

// Empty iff the selection is complete, resolvable, and every cross pair has
// compat > 0. Never throws.
std::vector<SelectionViolation> validateSelection(const MorphModel& model, const Selection& selection);

// Same checks but only on the components present in `selection` (no
// MissingComponent records). Used for partial selections.
std::vector<SelectionViolation> validatePartialSelection(const MorphModel& model,
                                                         const Selection& selection);

}  // namespace morphshop
