#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "morphshop/model.hpp"

namespace morphshop::synthesis {

// N(S) = (w; n): w is the minimum pairwise compatibility inside S, n[r-1] the
// number of parts of priority r.
struct ExcellenceVector {
  int w = 0;
  std::vector<int> n;

  bool operator==(const ExcellenceVector&) const = default;
};

// True iff a.w >= b.w, every prefix sum of a.n is >= the matching prefix sum
// of b.n, and a != b. Throws ScaleMismatchError when the vectors do not
// describe the same number of parts on the same scale.
bool dominates(const ExcellenceVector& a, const ExcellenceVector& b);

// Deterministic "better first" order on vectors: w desc, then n
// lexicographically desc.
bool rankedBefore(const ExcellenceVector& a, const ExcellenceVector& b);

// Excellence over exactly the components present in `selection`.
// w = compatScaleMax when fewer than two components are selected.
// Throws UnknownIdError / IncompleteSelectionError (empty selection).
ExcellenceVector excellence(const MorphModel& model, const Selection& selection);

// Excellence of a selection that must cover exactly the leaves under nodeId.
ExcellenceVector excellence(const MorphModel& model, const Selection& selection, const std::string& nodeId);

enum class Mode {
  // n and w range over the leaf DAs under the node (flat semantics).
  Leaf,
  // Each child of the node is one part; w ranges over pairs of parts at this
  // node only and n counts parts. Composite parts rank by their dominance
  // layer at the child node.
  Level,
};

struct ComposeOptions {
  bool paretoOnly = true;
  std::size_t maxSolutions = 1'000'000;
  Mode mode = Mode::Leaf;
  // Components pinned to one alternative (restricts the search space).
  Selection fixed;
};

struct CompositeSolution {
  std::string nodeId;
  Selection selection;  // leaf component -> DA
  ExcellenceVector excellence;
  // Level mode only: child node id -> part id (DA id, named composite id, or
  // the '*'-joined DA ids of an unnamed composite).
  std::map<std::string, std::string> parts;
  // Priority of this solution when used as a part one level up.
  int layer = 1;

  bool operator==(const CompositeSolution&) const = default;
};

// Composes the node bottom-up. Leaves return all their DAs; internal nodes
// take the cross product of their children's results, drop w = 0
// combinations and, with paretoOnly, keep exactly the nondominated ones
// (ties included). Sorted by rankedBefore, then selection ids.
// Throws ExplosionError when more than maxSolutions candidates are generated.
std::vector<CompositeSolution> composeNode(const MorphModel& model, const std::string& nodeId,
                                           const ComposeOptions& options = {});

// Composes all leaf components under the node as if they were its direct
// children (leaf semantics, no intermediate pruning).
std::vector<CompositeSolution> composeFlat(const MorphModel& model, const std::string& nodeId,
                                           const ComposeOptions& options = {});

// Keeps the nondominated entries of `candidates` (ties kept), sorted.
std::vector<CompositeSolution> paretoFilter(std::vector<CompositeSolution> candidates);

// Dominance layer index (1-based) of every candidate, by repeated peeling.
std::vector<int> dominanceLayers(const std::vector<ExcellenceVector>& vectors);

std::string formatVector(const ExcellenceVector& v);  // "(3;2,1,0)"
std::string formatSelection(const Selection& s, const std::vector<std::string>& order);  // "A1*B1*C2"

}  // namespace morphshop::synthesis
