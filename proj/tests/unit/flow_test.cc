#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.h"
#include "sublap/flow.h"
#include "sublap/lattice.h"
#include "sublap/parametric.h"

namespace sublap {
namespace {

TEST(MaxFlow, Examples) {
  {
    FlowNetwork net(3, 0, 2);
    net.add_arc(0, 1, 3);
    net.add_arc(1, 2, 1);
    const auto r = max_flow_min_cut(net);
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_EQ(r.min_source_side, (std::vector<bool>{true, true, false}));
  }
  {
    FlowNetwork net(2, 0, 1);
    net.add_arc(0, 1, 0);
    const auto r = max_flow_min_cut(net);
    EXPECT_DOUBLE_EQ(r.value, 0.0);
    EXPECT_EQ(r.min_source_side, (std::vector<bool>{true, false}));
  }
  {
    FlowNetwork net(4, 0, 3);
    net.add_arc(0, 1, 2);
    net.add_arc(0, 2, 2);
    net.add_arc(1, 3, 1);
    net.add_arc(2, 3, 1);
    EXPECT_DOUBLE_EQ(max_flow_min_cut(net).value, 2.0);
  }
  {
    FlowNetwork net(3, 0, 2);
    net.add_arc(0, 1, kInfiniteCapacity);
    net.add_arc(1, 2, kInfiniteCapacity);
    EXPECT_TRUE(max_flow_min_cut(net).unbounded);
  }
}

class RandomNetworks : public ::testing::TestWithParam<int> {};

TEST_P(RandomNetworks, MatchesCutEnumeration) {
  oracle::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const int inner = oracle::uniform_int(rng, 1, 10);
  const int n = inner + 2;
  FlowNetwork net(n, 0, n - 1);
  const int m = oracle::uniform_int(rng, 1, 4 * n);
  for (int i = 0; i < m; ++i) {
    const int a = oracle::uniform_int(rng, 0, n - 1);
    const int b = oracle::uniform_int(rng, 0, n - 1);
    if (a == b) continue;
    const double cap = oracle::uniform(rng, 0, 1) < 0.1 ? kInfiniteCapacity : std::round(oracle::uniform(rng, 0, 10) * 4) / 4;
    net.add_arc(a, b, cap);
  }
  double best = kInfiniteCapacity;
  std::vector<std::vector<bool>> argmins;
  for (std::uint64_t mask = 0; mask < (1u << inner); ++mask) {
    std::vector<bool> side(static_cast<std::size_t>(n), false);
    side[0] = true;
    for (int i = 0; i < inner; ++i) side[static_cast<std::size_t>(i + 1)] = mask >> i & 1u;
    const double c = cut_capacity(net, side);
    if (c < best - 1e-9) {
      best = c;
      argmins = {side};
    } else if (std::abs(c - best) <= 1e-9) {
      argmins.push_back(side);
    }
  }
  const auto r = max_flow_min_cut(net);
  if (std::isinf(best)) {
    EXPECT_TRUE(r.unbounded);
    return;
  }
  ASSERT_FALSE(r.unbounded);
  EXPECT_NEAR(r.value, best, 1e-9);
  EXPECT_NEAR(cut_capacity(net, r.min_source_side), best, 1e-9);
  EXPECT_NEAR(cut_capacity(net, r.max_source_side), best, 1e-9);
  // Minimal and maximal among all minimum cuts.
  for (const auto& s : argmins) {
    for (int v = 0; v < n; ++v) {
      if (r.min_source_side[static_cast<std::size_t>(v)]) { EXPECT_TRUE(s[static_cast<std::size_t>(v)]); }
      if (s[static_cast<std::size_t>(v)]) { EXPECT_TRUE(r.max_source_side[static_cast<std::size_t>(v)]); }
    }
  }
  // Flow feasibility.
  std::vector<double> excess(static_cast<std::size_t>(n), 0.0);
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    const Arc& arc = net.arcs()[a];
    EXPECT_GE(r.flow[a], -1e-12);
    EXPECT_LE(r.flow[a], arc.capacity + 1e-9);
    excess[static_cast<std::size_t>(arc.to)] += r.flow[a];
    excess[static_cast<std::size_t>(arc.from)] -= r.flow[a];
  }
  for (int v = 1; v < n - 1; ++v) EXPECT_NEAR(excess[static_cast<std::size_t>(v)], 0.0, 1e-9);
  EXPECT_NEAR(excess[static_cast<std::size_t>(n - 1)], best, 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNetworks, ::testing::Range(1, 61));

// Minimal minimizer over lattice members of sum_{i in S} (alpha - b(i)).
VertexSet lattice_argmin(const std::vector<VertexSet>& members, const Vector& b, double alpha) {
  double best = 1e300;
  VertexSet arg;
  for (const VertexSet& s : members) {
    double v = 0.0;
    for (int i : s.members()) v += alpha - b[static_cast<std::size_t>(i)];
    if (v < best - 1e-12 || (std::abs(v - best) <= 1e-12 && s.is_subset_of(arg))) {
      best = v;
      arg = s;
    }
  }
  return arg;
}

ParametricCapacity from_lattice(const DistributiveLattice& l, const Vector& b) {
  ParametricCapacity pc;
  pc.nodes = l.class_count();
  pc.b.assign(static_cast<std::size_t>(pc.nodes), 0.0);
  pc.slope.assign(static_cast<std::size_t>(pc.nodes), 0.0);
  for (int c = 0; c < pc.nodes; ++c) {
    for (int v : l.classes()[static_cast<std::size_t>(c)]) {
      pc.b[static_cast<std::size_t>(c)] += b[static_cast<std::size_t>(v)];
      pc.slope[static_cast<std::size_t>(c)] += 1.0;
    }
  }
  for (const auto& [i, j] : l.hasse_arcs()) pc.interior.push_back(Arc{j, i, kInfiniteCapacity});
  return pc;
}

VertexSet chain_at(const DistributiveLattice& l, const ParametricCut& cut, double alpha) {
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(cut.breakpoints.begin(), cut.breakpoints.end(), alpha) - cut.breakpoints.begin());
  VertexSet s(l.n());
  for (int c = 0; c < l.class_count(); ++c) {
    if (!cut.minimizers[idx][static_cast<std::size_t>(c)]) continue;
    for (int v : l.classes()[static_cast<std::size_t>(c)]) s.insert(v);
  }
  return s;
}

TEST(Parametric, SingleNode) {
  ParametricCapacity pc;
  pc.nodes = 1;
  pc.b = {2.0};
  const auto cut = parametric_min_cut(pc, -10, 10);
  ASSERT_EQ(cut.breakpoints.size(), 1u);
  EXPECT_NEAR(cut.breakpoints[0], 2.0, 1e-12);
  EXPECT_EQ(cut.minimizers[0], std::vector<bool>{true});
  EXPECT_EQ(cut.minimizers[1], std::vector<bool>{false});
}

TEST(Parametric, NonpositiveB) {
  ParametricCapacity pc;
  pc.nodes = 3;
  pc.b = {0.0, -1.0, -2.0};
  const auto cut = parametric_min_cut(pc, 0.0, 5.0);
  for (double a : {0.1, 1.0, 4.9}) {
    const auto s = parametric_minimizer(pc, a);
    EXPECT_EQ(std::count(s.begin(), s.end(), true), 0);
  }
  EXPECT_EQ(std::count(cut.minimizers.back().begin(), cut.minimizers.back().end(), true), 0);
}

TEST(Parametric, FiveMemberLattice) {
  // Classes {0,1}, {2}, {3}; {3} precedes the other two.
  const DistributiveLattice l(4, {{0, 1}, {2}, {3}}, {{2, 0}, {2, 1}});
  const auto members = oracle::lattice_members(l);
  ASSERT_EQ(members.size(), 5u);
  const Vector b{1, 1, 3, 2};
  const auto cut = parametric_min_cut(from_lattice(l, b), -2.0, 5.0);
  for (std::size_t i = 1; i < cut.minimizers.size(); ++i) {
    for (std::size_t c = 0; c < cut.minimizers[i].size(); ++c) {
      if (cut.minimizers[i][c]) { EXPECT_TRUE(cut.minimizers[i - 1][c]); }
    }
  }
  for (int k = 0; k <= 700; ++k) {
    const double alpha = -2.0 + 0.01 * k + 0.00037;
    EXPECT_EQ(chain_at(l, cut, alpha), lattice_argmin(members, b, alpha)) << alpha;
  }
}

class RandomParametric : public ::testing::TestWithParam<int> {};

TEST_P(RandomParametric, MatchesLatticeEnumeration) {
  oracle::Rng rng(static_cast<std::uint64_t>(1000 + GetParam()));
  const int n = oracle::uniform_int(rng, 1, 12);
  const DistributiveLattice l = oracle::random_lattice(rng, n);
  const auto members = oracle::lattice_members(l);
  const Vector b = oracle::random_vector(rng, n, -3, 3);
  const auto cut = parametric_min_cut(from_lattice(l, b), -4.0, 4.0);
  for (int k = 0; k < 100; ++k) {
    const double alpha = oracle::uniform(rng, -4.0, 4.0);
    EXPECT_EQ(chain_at(l, cut, alpha), lattice_argmin(members, b, alpha)) << alpha;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomParametric, ::testing::Range(1, 41));

}  // namespace
}  // namespace sublap
