#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "sublap/min_norm_point.h"
#include "sublap/sfm.h"

namespace sublap {
namespace {

TEST(Sfm, SingleArc) {
  const SubmodularTransformation f(2, {EdgeFunction::directed(0, 1)});
  for (SfmBackend be : {SfmBackend::kMinCut, SfmBackend::kMinNormPoint}) {
    SfmOptions opt;
    opt.backend = be;
    const auto r = sfm(f, {}, {}, {}, opt);
    EXPECT_NEAR(r.value, 0.0, 1e-12);
    EXPECT_TRUE(r.minimal.empty());
    EXPECT_EQ(r.maximal, VertexSet::full(2));
  }
}

TEST(Sfm, WithModular) {
  const SubmodularTransformation f(2, {EdgeFunction::directed(0, 1)});
  const Vector b{1, -1};
  const Vector modular{-1, 1};  // -b
  VertexSet arg;
  const double expect = oracle::min_over_subsets(f, Vector{1.0}, modular, &arg);
  const auto r = sfm(f, {}, modular);
  EXPECT_NEAR(r.value, expect, 1e-12);
}

TEST(Sfm, MustInclude) {
  const SubmodularTransformation f(2, {EdgeFunction::directed(0, 1)});
  SfmRestriction res{VertexSet(2, {1}), VertexSet(2)};
  const auto r = sfm(f, {}, {}, res);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_EQ(r.minimal, VertexSet(2, {1}));
  EXPECT_EQ(r.maximal, VertexSet::full(2));
  res.must_include = VertexSet(2, {0});
  const auto r2 = sfm(f, {}, {}, res);
  EXPECT_EQ(r2.minimal, VertexSet::full(2));
}

TEST(MinNormPoint, Simplex) {
  // Base polytope of the hyperedge cut shifted: min-norm point of conv{e_u - e_v}.
  const EdgeFunction h = EdgeFunction::hyper({0, 1, 2});
  LinearOracle lmo = [&](std::span<const double> c) {
    Vector neg(c.begin(), c.end());
    for (double& v : neg) v = -v;
    return lovasz_subgradient(h, neg).w;
  };
  const auto r = min_norm_point(lmo, Vector{1, -1, 0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(norm2_squared(r.x), 0.0, 1e-12);
}

class RandomSfm : public ::testing::TestWithParam<int> {};

TEST_P(RandomSfm, MatchesEnumeration) {
  oracle::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const int n = oracle::uniform_int(rng, 2, 10);
  const unsigned kinds = GetParam() % 2 == 0 ? 0x7u : 0xFu;
  const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, 1, 2 * n), kinds, 5);
  Vector coef(f.edges().size());
  for (double& c : coef) c = oracle::uniform(rng, 0, 1) < 0.2 ? 0.0 : oracle::uniform(rng, 0, 2);
  Vector modular = oracle::random_vector(rng, n, -2, 2);
  // Integral data makes ties (and distinct minimal/maximal minimizers) common.
  if (GetParam() % 3 == 0) {
    for (double& c : coef) c = std::round(c);
    for (double& m : modular) m = std::round(m);
  }
  SfmRestriction res;
  if (GetParam() % 4 == 1 && n >= 3) {
    res.must_include = VertexSet(n, {0});
    res.must_exclude = VertexSet(n, {n - 1});
  }
  // Exhaustive over sets respecting the restriction.
  double best = 1e300;
  std::vector<VertexSet> argmins;
  for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
    const VertexSet s = VertexSet::from_mask(n, mask);
    if (res.must_include.universe() && !res.must_include.is_subset_of(s)) continue;
    if (res.must_exclude.universe() && !s.intersected(res.must_exclude).empty()) continue;
    const double v = sfm_objective(f, coef, modular, s);
    if (v < best - 1e-9) {
      best = v;
      argmins = {s};
    } else if (v <= best + 1e-9) {
      argmins.push_back(s);
    }
  }
  VertexSet lo = argmins[0], hi = argmins[0];
  for (const auto& s : argmins) {
    lo = lo.intersected(s);
    hi = hi.united(s);
  }
  std::vector<SfmBackend> backends{SfmBackend::kMinNormPoint};
  if (f.is_cut_only()) backends.push_back(SfmBackend::kMinCut);
  for (SfmBackend be : backends) {
    SfmOptions opt;
    opt.backend = be;
    const auto r = sfm(f, coef, modular, res, opt);
    EXPECT_NEAR(r.value, best, 1e-8) << static_cast<int>(be);
    EXPECT_EQ(r.minimal, lo) << static_cast<int>(be);
    EXPECT_EQ(r.maximal, hi) << static_cast<int>(be);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomSfm, ::testing::Range(1, 81));

}  // namespace
}  // namespace sublap
