#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "sublap/laplacian.h"
#include "sublap/quadratic_flow.h"

namespace sublap {
namespace {

TEST(QuadraticFlow, DirectedPath) {
  const SubmodularTransformation f(3, {EdgeFunction::directed(0, 1), EdgeFunction::directed(1, 2)});
  const auto r = quadratic_flow_dual(f, Vector{1, 0, -1});
  EXPECT_NEAR(r.flow.edge_totals[0], 1.0, 1e-9);
  EXPECT_NEAR(r.flow.edge_totals[1], 1.0, 1e-9);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
  EXPECT_LE(r.boundary_residual, 1e-9);
}

TEST(QuadraticFlow, ZeroBoundary) {
  const SubmodularTransformation f(3, {EdgeFunction::hyper({0, 1, 2})});
  const auto r = quadratic_flow_dual(f, Vector{0, 0, 0});
  EXPECT_NEAR(r.objective, 0.0, 1e-12);
  EXPECT_NEAR(r.flow.edge_totals[0], 0.0, 1e-12);
}

TEST(QuadraticFlow, ParallelArcs) {
  const SubmodularTransformation f(2, {EdgeFunction::directed(0, 1), EdgeFunction::directed(0, 1)});
  const auto r = quadratic_flow_dual(f, Vector{1, -1});
  EXPECT_NEAR(r.flow.edge_totals[0], 0.5, 1e-9);
  EXPECT_NEAR(r.flow.edge_totals[1], 0.5, 1e-9);
  EXPECT_NEAR(r.objective, 0.25, 1e-9);
}

TEST(QuadraticFlow, Infeasible) {
  const SubmodularTransformation f(2, {EdgeFunction::directed(0, 1)});
  EXPECT_THROW(quadratic_flow_dual(f, Vector{-1, 1}), InfeasibleError);
  EXPECT_FALSE(feasible_flow(f, Vector{-1, 1}).has_value());
  EXPECT_TRUE(feasible_flow(f, Vector{1, -1}).has_value());
}

class RandomFlow : public ::testing::TestWithParam<int> {};

TEST_P(RandomFlow, StrongDuality) {
  oracle::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const int n = oracle::uniform_int(rng, 3, 8);
  const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, 2, 10), 0xF, 4);
  const Vector b = sublap::apply(f, oracle::random_vector(rng, n));
  const auto r = quadratic_flow_dual(f, b);
  const Solution s = solve_system(f, b);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, -s.objective, 1e-5 * (1 + std::abs(s.objective)));
  EXPECT_LE(r.boundary_residual, 1e-6);
  for (const FlowTerm& t : r.flow.terms) EXPECT_GE(t.value, 0.0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomFlow, ::testing::Range(1, 21));

}  // namespace
}  // namespace sublap
