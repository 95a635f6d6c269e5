#include "sublap/analysis.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace sublap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_vertex(const SubmodularTransformation& f, int v) {
  if (v < 0 || v >= f.n()) throw ValidationError("vertex " + std::to_string(v) + " out of range");
}

Vector unit_pair(int n, int s, int t) {
  Vector b(static_cast<std::size_t>(n), 0.0);
  b[static_cast<std::size_t>(s)] = 1.0;
  b[static_cast<std::size_t>(t)] = -1.0;
  return b;
}

int worker_count(int threads, int jobs) {
  int w = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(w, 1, std::max(jobs, 1));
}

// Runs job(i) for i in [0, jobs) on `threads` workers.
template <typename Job>
void parallel_for(int jobs, int threads, const Job& job) {
  const int workers = worker_count(threads, jobs);
  if (workers == 1) {
    for (int i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < jobs && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ResistanceValue resistance_from(const SubmodularTransformation& f, int u, int v,
                                const SolverConfig& cfg) {
  const Vector b = unit_pair(f.n(), u, v);
  ResistanceValue r;
  const Solution sol = solve_system(f, b, cfg);
  if (sol.status == SolveStatus::kInfeasible) {
    r.value = kInf;
    r.infinite = true;
    r.witness_x = sol.x;
    r.witness_phi = sol.phi;
    r.energy = kInf;
    return r;
  }
  r.witness_x = sol.x;
  r.witness_phi = sol.phi;
  r.value = dot(b, sol.x);
  r.energy = norm2_squared(sol.phi);
  r.degraded = sol.status != SolveStatus::kOptimal ||
               std::abs(r.value - r.energy) > 1e-5 * (1.0 + std::abs(r.value));
  return r;
}

std::vector<double> currents(const SubmodularTransformation& f, std::span<const double> x) {
  std::vector<double> tau(static_cast<std::size_t>(f.n()), 0.0);
  for (const EdgeFunction& e : f.edges()) {
    const double c = e.weight() * e.lovasz(x);
    for (int v : e.support()) tau[static_cast<std::size_t>(v)] += c;
  }
  return tau;
}

std::vector<int> rank_scores(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace

ResistanceValue effective_resistance(const SubmodularTransformation& f, int u, int v,
                                     const SolverConfig& cfg) {
  check_vertex(f, u);
  check_vertex(f, v);
  if (u == v) throw ValidationError("resistance needs two distinct vertices");
  return resistance_from(f, u, v, cfg);
}

TriangleCheck triangle_check(const SubmodularTransformation& f, int u, int v, int w,
                             const SolverConfig& cfg) {
  if (u == v || v == w || u == w) throw ValidationError("triangle check needs distinct vertices");
  TriangleCheck t;
  const double ruv = effective_resistance(f, u, v, cfg).value;
  const double rvw = effective_resistance(f, v, w, cfg).value;
  t.rhs = effective_resistance(f, u, w, cfg).value;
  t.lhs = ruv + rvw;
  t.holds = std::isinf(t.lhs) || t.lhs >= t.rhs - 1e-6 * (1.0 + t.rhs);
  return t;
}

std::vector<double> all_pairs_resistance(const SubmodularTransformation& f,
                                         const SolverConfig& cfg, int threads) {
  const int n = f.n();
  std::vector<double> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  parallel_for(n, threads, [&](int u) {
    SolverConfig local = cfg;
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const ResistanceValue r = resistance_from(f, u, v, local);
      out[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] = r.value;
      if (!r.infinite) local.initial = r.witness_x;
    }
  });
  return out;
}

double closeness_centrality(const SubmodularTransformation& f, int v, const SolverConfig& cfg) {
  check_vertex(f, v);
  double total = 0.0;
  for (int u = 0; u < f.n(); ++u) {
    if (u == v) continue;
    const ResistanceValue r = resistance_from(f, u, v, cfg);
    if (r.infinite) return 0.0;
    total += r.value;
  }
  return total > 0.0 ? f.n() / total : 0.0;
}

double betweenness_centrality(const SubmodularTransformation& f, int v, const SolverConfig& cfg) {
  check_vertex(f, v);
  if (!f.is_graph()) throw ValidationError("betweenness needs a graph (undirected/directed edges)");
  const int n = f.n();
  if (n < 3) return 0.0;
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t || s == v || t == v) continue;
      const Solution sol = solve_system(f, unit_pair(n, s, t), cfg);
      if (sol.status == SolveStatus::kInfeasible) continue;
      total += currents(f, sol.x)[static_cast<std::size_t>(v)];
    }
  }
  return total / ((n - 1.0) * (n - 2.0));
}

std::string to_string(CentralityMeasure measure) {
  return measure == CentralityMeasure::kCloseness ? "closeness" : "betweenness";
}

CentralityReport centrality(const SubmodularTransformation& f, CentralityMeasure measure,
                            const SolverConfig& cfg, int threads) {
  const int n = f.n();
  const auto nn = static_cast<std::size_t>(n);
  CentralityReport rep;
  rep.measure = measure;
  rep.scores.assign(nn, 0.0);
  if (measure == CentralityMeasure::kCloseness) {
    const std::vector<double> r = all_pairs_resistance(f, cfg, threads);
    for (int v = 0; v < n; ++v) {
      double total = 0.0;
      for (int u = 0; u < n; ++u) {
        if (u != v) total += r[static_cast<std::size_t>(u) * nn + static_cast<std::size_t>(v)];
      }
      rep.scores[static_cast<std::size_t>(v)] = std::isinf(total) || total <= 0.0 ? 0.0 : n / total;
    }
  } else {
    if (!f.is_graph()) throw ValidationError("betweenness needs a graph (undirected/directed edges)");
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        if (s != t) rep.pairs.push_back(PairCurrent{s, t, {}, true});
      }
    }
    parallel_for(static_cast<int>(rep.pairs.size()), threads, [&](int i) {
      PairCurrent& pc = rep.pairs[static_cast<std::size_t>(i)];
      const Solution sol = solve_system(f, unit_pair(n, pc.s, pc.t), cfg);
      pc.feasible = sol.status != SolveStatus::kInfeasible;
      pc.tau = pc.feasible ? currents(f, sol.x) : std::vector<double>(nn, 0.0);
    });
    if (n >= 3) {
      for (const PairCurrent& pc : rep.pairs) {
        for (int v = 0; v < n; ++v) {
          if (v != pc.s && v != pc.t) rep.scores[static_cast<std::size_t>(v)] += pc.tau[static_cast<std::size_t>(v)];
        }
      }
      for (double& s : rep.scores) s /= (n - 1.0) * (n - 2.0);
    }
  }
  rep.ranking = rank_scores(rep.scores);
  return rep;
}

}  // namespace sublap
