#pragma once

#include <string>
#include <vector>

#include "morphshop/model.hpp"

namespace morphshop::trajectory {

// Number of components whose DA differs. Throws ComponentMismatchError when
// the selections cover different component sets.
int delta(const Selection& a, const Selection& b);

// m - delta(a, b).
int xi(const Selection& a, const Selection& b, int m);

struct StageSolution {
  std::string id;
  Selection selection;
  int priority = 1;
};

struct Stage {
  std::string id;
  std::vector<StageSolution> solutions;
};

struct StageCatalog {
  std::vector<std::string> components;
  std::vector<Stage> stages;
};

struct Trajectory {
  std::vector<std::string> picks;  // solution id per stage
  int w = 0;
  std::vector<int> n;
  int totalXi = 0;

  bool operator==(const Trajectory&) const = default;
};

// Throws ValidationError (fewer than two stages, bad priority, duplicate ids),
// EmptyStageError, ComponentMismatchError.
void validate(const StageCatalog& catalog);

// Priority scale used for n: max(3, largest priority in the catalog).
int priorityScale(const StageCatalog& catalog);

// Evaluates one pick per stage (indices into each stage's solutions).
Trajectory evaluate(const StageCatalog& catalog, const std::vector<std::size_t>& picks);

// Pareto set over all trajectories with w > 0, ordered by w desc, n desc,
// totalXi desc, then picks lexicographically.
std::vector<Trajectory> synthesizeTrajectory(const StageCatalog& catalog, std::size_t maxCandidates = 1'000'000);

}  // namespace morphshop::trajectory
