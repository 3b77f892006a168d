#include "morphshop/trajectory.hpp"

#include <algorithm>
#include <set>

#include "morphshop/errors.hpp"
#include "morphshop/synthesis.hpp"

namespace morphshop::trajectory {

int delta(const Selection& a, const Selection& b) {
  if (a.size() != b.size())
    throw ComponentMismatchError("selections cover " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                                 " components");
  int d = 0;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first)
      throw ComponentMismatchError("component '" + ia->first + "' is not covered by both selections");
    if (ia->second != ib->second) ++d;
  }
  return d;
}

int xi(const Selection& a, const Selection& b, int m) { return m - delta(a, b); }

void validate(const StageCatalog& catalog) {
  if (catalog.stages.size() < 2) throw ValidationError("a trajectory needs at least two stages", "stages");
  std::set<std::string> comps(catalog.components.begin(), catalog.components.end());
  if (comps.size() != catalog.components.size()) throw ValidationError("duplicate component id", "components");
  std::set<std::string> stageIds;
  for (std::size_t s = 0; s < catalog.stages.size(); ++s) {
    const auto& stage = catalog.stages[s];
    const std::string path = "stages[" + std::to_string(s) + "]";
    if (!stageIds.insert(stage.id).second) throw ValidationError("duplicate stage id '" + stage.id + "'", path + ".id");
    if (stage.solutions.empty()) throw EmptyStageError("stage '" + stage.id + "' has no solutions", path + ".solutions");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < stage.solutions.size(); ++i) {
      const auto& sol = stage.solutions[i];
      const std::string spath = path + ".solutions[" + std::to_string(i) + "]";
      if (!ids.insert(sol.id).second) throw ValidationError("duplicate solution id '" + sol.id + "'", spath + ".id");
      if (sol.priority < 1) throw ValidationError("priority must be >= 1", spath + ".priority");
      bool same = sol.selection.size() == comps.size();
      for (const auto& [c, da] : sol.selection) same = same && comps.contains(c);
      if (!same)
        throw ComponentMismatchError("solution '" + sol.id + "' does not cover exactly the listed components",
                                     spath + ".selection");
    }
  }
}

int priorityScale(const StageCatalog& catalog) {
  int k = 3;
  for (const auto& stage : catalog.stages)
    for (const auto& sol : stage.solutions) k = std::max(k, sol.priority);
  return k;
}

Trajectory evaluate(const StageCatalog& catalog, const std::vector<std::size_t>& picks) {
  const int m = static_cast<int>(catalog.components.size());
  Trajectory t;
  t.n.assign(priorityScale(catalog), 0);
  t.w = m;
  for (std::size_t s = 0; s < catalog.stages.size(); ++s) {
    const auto& sol = catalog.stages[s].solutions.at(picks.at(s));
    t.picks.push_back(sol.id);
    ++t.n[sol.priority - 1];
    if (s > 0) {
      const int x = xi(catalog.stages[s - 1].solutions[picks[s - 1]].selection, sol.selection, m);
      t.w = std::min(t.w, x);
      t.totalXi += x;
    }
  }
  return t;
}

std::vector<Trajectory> synthesizeTrajectory(const StageCatalog& catalog, std::size_t maxCandidates) {
  validate(catalog);
  std::size_t total = 1;
  for (const auto& stage : catalog.stages) {
    if (total > maxCandidates / stage.solutions.size())
      throw ExplosionError("trajectory search space exceeds " + std::to_string(maxCandidates) + " candidates",
                           maxCandidates);
    total *= stage.solutions.size();
  }

  std::vector<Trajectory> all;
  std::vector<std::size_t> picks(catalog.stages.size(), 0);
  for (bool more = true; more;) {
    auto t = evaluate(catalog, picks);
    if (t.w > 0) all.push_back(std::move(t));
    more = false;
    for (std::size_t s = picks.size(); s-- > 0;) {
      if (++picks[s] < catalog.stages[s].solutions.size()) {
        more = true;
        break;
      }
      picks[s] = 0;
    }
  }
  std::vector<synthesis::ExcellenceVector> vectors;
  for (const auto& t : all) vectors.push_back({t.w, t.n});
  const auto layers = synthesis::dominanceLayers(vectors);
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (layers[i] == 1) out.push_back(std::move(all[i]));
  std::sort(out.begin(), out.end(), [](const Trajectory& a, const Trajectory& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.n != b.n) return a.n > b.n;
    if (a.totalXi != b.totalXi) return a.totalXi > b.totalXi;
    return a.picks < b.picks;
  });
  return out;
}

}  // namespace morphshop::trajectory
