#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "descent.h"
#include "sublap/min_norm_point.h"

namespace sublap::detail {

void tie_rank(const EdgeFunction& fe, std::span<const double> x, std::span<const double> g,
              double tau, std::vector<int>& rank) {
  std::vector<int> order = fe.support();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (x[ua] != x[ub]) return x[ua] > x[ub];
    return a < b;
  });
  // Split into groups of consecutive near-equal values, then order each
  // group by g ascending.
  std::size_t start = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    const bool split = i == order.size() ||
                       x[static_cast<std::size_t>(order[i - 1])] -
                               x[static_cast<std::size_t>(order[i])] > tau;
    if (!split) continue;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(i), [&](int a, int b) {
                       return g[static_cast<std::size_t>(a)] < g[static_cast<std::size_t>(b)];
                     });
    start = i;
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }
}

Vector min_norm_subgradient(const DescentProblem& p, std::span<const double> x, double tau) {
  const int n = p.f.n();
  std::vector<int> free_idx;
  for (int v = 0; v < n; ++v) {
    if (p.is_free(v)) free_idx.push_back(v);
  }
  Vector out(static_cast<std::size_t>(n), 0.0);
  if (free_idx.empty()) return out;
  Vector phi = p.f.lovasz(x);
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  Vector full(static_cast<std::size_t>(n));
  Vector gfull(static_cast<std::size_t>(n), 0.0);
  LinearOracle lmo = [&](std::span<const double> g) {
    std::fill(gfull.begin(), gfull.end(), 0.0);
    for (std::size_t i = 0; i < free_idx.size(); ++i) gfull[static_cast<std::size_t>(free_idx[i])] = g[i];
    std::fill(full.begin(), full.end(), 0.0);
    for (std::size_t e = 0; e < p.f.edges().size(); ++e) {
      if (phi[e] <= 0.0) continue;
      const EdgeFunction& fe = p.f.edges()[e];
      tie_rank(fe, x, gfull, tau, rank);
      fe.add_greedy(rank, phi[e], full);
    }
    Vector y(free_idx.size());
    for (std::size_t i = 0; i < free_idx.size(); ++i) {
      const auto v = static_cast<std::size_t>(free_idx[i]);
      y[i] = full[v] - p.b[v];
    }
    return y;
  };
  MinNormOptions mo;
  mo.tolerance = 1e-14;
  mo.max_iterations = 200;
  const Vector zero(free_idx.size(), 0.0);
  const MinNormResult r = min_norm_point(lmo, lmo(zero), mo);
  for (std::size_t i = 0; i < free_idx.size(); ++i) out[static_cast<std::size_t>(free_idx[i])] = r.x[i];
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

bool newton_candidate(const DescentProblem& p, std::span<const double> x, double tau,
                      Vector& out) {
  const int n = p.f.n();
  const auto nn = static_cast<std::size_t>(n);
  UnionFind uf(n);
  for (const auto& fe : p.f.edges()) {
    if (fe.weight() == 0.0) continue;
    std::vector<int> order = fe.support();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return x[static_cast<std::size_t>(a)] > x[static_cast<std::size_t>(b)];
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (x[static_cast<std::size_t>(order[i - 1])] - x[static_cast<std::size_t>(order[i])] <= tau) {
        uf.unite(order[i - 1], order[i]);
      }
    }
  }
  // A component holding a fixed coordinate is pinned to that value.
  std::vector<int> pin(nn, -1);
  for (int v = 0; v < n; ++v) {
    if (!p.is_free(v)) {
      const auto r = static_cast<std::size_t>(uf.find(v));
      if (pin[r] == -1) pin[r] = v;
    }
  }
  std::vector<int> var_of(nn, -1);
  std::vector<int> var_count;
  Vector z0;
  int k = 0;
  for (int v = 0; v < n; ++v) {
    const auto r = static_cast<std::size_t>(uf.find(v));
    if (!p.is_free(v) || pin[r] != -1) continue;
    if (var_of[r] == -1) {
      var_of[r] = k++;
      z0.push_back(0.0);
      var_count.push_back(0);
    }
    z0[static_cast<std::size_t>(var_of[r])] += x[static_cast<std::size_t>(v)];
    ++var_count[static_cast<std::size_t>(var_of[r])];
  }
  for (int i = 0; i < k; ++i) z0[static_cast<std::size_t>(i)] /= var_count[static_cast<std::size_t>(i)];

  Vector xhat(nn);
  for (int v = 0; v < n; ++v) {
    const auto r = static_cast<std::size_t>(uf.find(v));
    const auto vv = static_cast<std::size_t>(v);
    if (!p.is_free(v)) {
      xhat[vv] = x[vv];
    } else if (pin[r] != -1) {
      xhat[vv] = x[static_cast<std::size_t>(pin[r])];
    } else {
      xhat[vv] = z0[static_cast<std::size_t>(var_of[r])];
    }
  }
  out = xhat;
  if (k == 0) return true;

  const auto m = static_cast<Eigen::Index>(p.f.edges().size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, k);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
  const std::vector<int> rank = rank_descending(xhat);
  Vector w(nn);
  for (Eigen::Index e = 0; e < m; ++e) {
    const EdgeFunction& fe = p.f.edges()[static_cast<std::size_t>(e)];
    if (fe.weight() == 0.0) continue;
    for (int v : fe.support()) w[static_cast<std::size_t>(v)] = 0.0;
    fe.add_greedy(rank, 1.0, w);
    for (int v : fe.support()) {
      const auto vv = static_cast<std::size_t>(v);
      const int var = var_of[static_cast<std::size_t>(uf.find(v))];
      if (p.is_free(v) && var != -1) {
        a(e, var) += w[vv];
      } else {
        r(e) += w[vv] * xhat[vv];
      }
    }
  }
  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(z0.data(), k);
  Eigen::VectorXd bz = Eigen::VectorXd::Zero(k);
  for (int v = 0; v < n; ++v) {
    const int var = var_of[static_cast<std::size_t>(uf.find(v))];
    if (p.is_free(v) && var != -1) bz(var) += p.b[static_cast<std::size_t>(v)];
  }
  const Eigen::VectorXd grad = a.transpose() * (a * z + r) - bz;
  const Eigen::MatrixXd h = a.transpose() * a;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
  cod.setThreshold(1e-12);
  const Eigen::VectorXd delta = -cod.solve(grad);
  if (!delta.allFinite()) return false;
  for (int v = 0; v < n; ++v) {
    const int var = var_of[static_cast<std::size_t>(uf.find(v))];
    if (p.is_free(v) && var != -1) out[static_cast<std::size_t>(v)] += delta(var);
  }
  return true;
}

DescentResult descend(const DescentProblem& p, Vector x0, long max_iterations, int cadence,
                      const ConvergenceCheck& converged) {
  const auto nn = x0.size();
  DescentResult res;
  res.x = std::move(x0);
  res.value = objective(p, res.x);
  if (converged(res.x, res.value)) {
    res.converged = true;
    return res;
  }
  static constexpr double kLadder[] = {0.0, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2};
  // Shifting a component without fixed vertices leaves every f_e unchanged
  // and moves J by b(C), which is zero up to rounding. Directions are kept
  // orthogonal to those shifts so roundoff cannot look like descent.
  const int n = p.f.n();
  UnionFind uf(n);
  for (const auto& fe : p.f.edges()) {
    for (int v : fe.support()) uf.unite(fe.support()[0], v);
  }
  std::vector<int> comp(nn, -1);
  std::vector<double> comp_size(nn, 0.0);
  for (int v = 0; v < n; ++v) {
    if (!p.is_free(v)) comp_size[static_cast<std::size_t>(uf.find(v))] = -1.0;
  }
  for (int v = 0; v < n; ++v) {
    const auto r = static_cast<std::size_t>(uf.find(v));
    if (comp_size[r] < 0.0) continue;
    comp[static_cast<std::size_t>(v)] = static_cast<int>(r);
    comp_size[r] += 1.0;
  }
  Vector comp_sum(nn);
  auto project = [&](Vector& dir) {
    std::fill(comp_sum.begin(), comp_sum.end(), 0.0);
    for (std::size_t v = 0; v < nn; ++v) {
      if (comp[v] >= 0) comp_sum[static_cast<std::size_t>(comp[v])] += dir[v];
    }
    for (std::size_t v = 0; v < nn; ++v) {
      if (comp[v] >= 0) {
        const auto r = static_cast<std::size_t>(comp[v]);
        dir[v] -= comp_sum[r] / comp_size[r];
      }
    }
  };
  Vector d(nn), trial(nn), cand;
  int stalls = 0;
  for (res.iterations = 1; res.iterations <= max_iterations; ++res.iterations) {
    const double scale = 1.0 + norm_inf(res.x);
    double best_value = res.value;
    Vector best_x;
    auto consider = [&](Vector& dir) {
      project(dir);
      if (norm_inf(dir) == 0.0) return;
      const LineSearchResult ls = exact_line_search(p, res.x, dir);
      if (ls.unbounded) return;
      if (ls.value < best_value) {
        for (std::size_t v = 0; v < nn; ++v) trial[v] = res.x[v] + ls.t * dir[v];
        best_value = ls.value;
        best_x = trial;
      }
    };
    for (double rel : kLadder) {
      if (!newton_candidate(p, res.x, rel * scale, cand)) continue;
      for (std::size_t v = 0; v < nn; ++v) d[v] = cand[v] - res.x[v];
      consider(d);
    }
    const Vector g = min_norm_subgradient(p, res.x, 1e-9 * scale);
    for (std::size_t v = 0; v < nn; ++v) d[v] = -g[v];
    consider(d);

    const bool stalled = best_x.empty() ||
                         res.value - best_value <= 1e-15 * (1.0 + std::abs(res.value));
    if (!best_x.empty()) {
      res.x = std::move(best_x);
      res.value = best_value;
    }
    if (stalled || res.iterations % cadence == 0) {
      if (converged(res.x, res.value)) {
        res.converged = true;
        return res;
      }
    }
    stalls = stalled ? stalls + 1 : 0;
    if (stalls >= 3) break;
  }
  res.iterations = std::min(res.iterations, max_iterations);
  return res;
}

}  // namespace sublap::detail
