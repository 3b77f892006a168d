#include <gtest/gtest.h>

#include "morphshop/errors.hpp"
#include "morphshop/trajectory.hpp"
#include "unit/test_support.hpp"

using namespace morphshop;
using namespace morphshop::trajectory;

namespace {

StageCatalog pc() { return io::parseStageCatalog(fixtureJson("pc-trajectory.json")); }

const Selection& sol(const StageCatalog& c, std::size_t stage, std::size_t i) {
  return c.stages[stage].solutions[i].selection;
}

}  // namespace

TEST(Trajectory, DeltaTable) {
  const auto c = pc();
  // Rows: stage-1 solutions and stage-2 solutions; columns: next stage.
  EXPECT_EQ(delta(sol(c, 0, 0), sol(c, 1, 0)), 8);
  EXPECT_EQ(delta(sol(c, 0, 0), sol(c, 1, 1)), 7);
  EXPECT_EQ(delta(sol(c, 0, 1), sol(c, 1, 0)), 7);
  EXPECT_EQ(delta(sol(c, 0, 1), sol(c, 1, 1)), 6);
  EXPECT_EQ(delta(sol(c, 1, 0), sol(c, 2, 0)), 3);
  EXPECT_EQ(delta(sol(c, 1, 0), sol(c, 2, 1)), 3);
  EXPECT_EQ(delta(sol(c, 1, 1), sol(c, 2, 0)), 4);
  EXPECT_EQ(delta(sol(c, 1, 1), sol(c, 2, 1)), 4);
  EXPECT_EQ(delta(sol(c, 0, 0), sol(c, 0, 0)), 0);
}

TEST(Trajectory, XiTable) {
  const auto c = pc();
  EXPECT_EQ(xi(sol(c, 0, 0), sol(c, 1, 0), 8), 0);
  EXPECT_EQ(xi(sol(c, 0, 0), sol(c, 1, 1), 8), 1);
  EXPECT_EQ(xi(sol(c, 0, 1), sol(c, 1, 0), 8), 1);
  EXPECT_EQ(xi(sol(c, 0, 1), sol(c, 1, 1), 8), 2);
  EXPECT_EQ(xi(sol(c, 1, 0), sol(c, 2, 0), 8), 5);
  EXPECT_EQ(xi(sol(c, 1, 0), sol(c, 2, 1), 8), 5);
  EXPECT_EQ(xi(sol(c, 1, 1), sol(c, 2, 0), 8), 4);
  EXPECT_EQ(xi(sol(c, 2, 0), sol(c, 2, 0), 8), 8);
}

TEST(Trajectory, BestTrajectory) {
  const auto result = synthesizeTrajectory(pc());
  ASSERT_FALSE(result.empty());
  EXPECT_EQ(result.front().picks, (std::vector<std::string>{"S2", "S2_2", "S3_1"}));
  EXPECT_EQ(result.front().w, 2);
  EXPECT_EQ(result.front().n, (std::vector<int>{3, 0, 0}));
  EXPECT_EQ(result.front().totalXi, 6);
}

TEST(Trajectory, SinglePair) {
  StageCatalog c{{"a", "b"},
                 {{"t1", {{"x", {{"a", "a1"}, {"b", "b1"}}, 1}}}, {"t2", {{"y", {{"a", "a1"}, {"b", "b2"}}, 1}}}}};
  const auto r = synthesizeTrajectory(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].w, 1);
}

TEST(Trajectory, SymmetricInstanceOrdersLexicographically) {
  StageCatalog c{{"a"},
                 {{"t1", {{"p", {{"a", "a1"}}, 1}, {"q", {{"a", "a1"}}, 1}}},
                  {"t2", {{"r", {{"a", "a1"}}, 1}, {"s", {{"a", "a1"}}, 1}}}}};
  const auto r = synthesizeTrajectory(c);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].picks, (std::vector<std::string>{"p", "r"}));
  EXPECT_EQ(r[3].picks, (std::vector<std::string>{"q", "s"}));
}

TEST(Trajectory, Errors) {
  auto c = pc();
  EXPECT_THROW(delta(sol(c, 0, 0), {{"B", "B1"}}), ComponentMismatchError);
  auto one = c;
  one.stages.resize(1);
  EXPECT_THROW(synthesizeTrajectory(one), ValidationError);
  auto empty = c;
  empty.stages[1].solutions.clear();
  EXPECT_THROW(synthesizeTrajectory(empty), EmptyStageError);
  auto mismatch = c;
  mismatch.stages[2].solutions[0].selection.erase("G");
  EXPECT_THROW(synthesizeTrajectory(mismatch), ComponentMismatchError);
}
