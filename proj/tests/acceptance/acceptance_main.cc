// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "corpus.h"
#include "oracles.h"
#include "sublap/analysis.h"
#include "sublap/laplacian.h"
#include "sublap/lattice.h"
#include "sublap/quadratic_flow.h"
#include "sublap/regression.h"
#include "sublap/semisup.h"

namespace fs = std::filesystem;
using namespace sublap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with the first few messages.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) first_ += (first_.empty() ? "" : "; ") + what;
  }
  long failures() const { return failures_; }
  Outcome outcome(std::string summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks, " << failures_ << " failures";
    if (!first_.empty()) s << " [" << first_ << "]";
    return {failures_ == 0, s.str()};
  }

 private:
  long checks_ = 0;
  long failures_ = 0;
  std::string first_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vector unit_pair(int n, int u, int v) {
  Vector b(static_cast<std::size_t>(n), 0.0);
  b[static_cast<std::size_t>(u)] += 1.0;
  b[static_cast<std::size_t>(v)] -= 1.0;
  return b;
}

// 1. Undirected graphs against the pseudo-inverse.
Outcome undirected_equivalence() {
  oracle::Rng rng(101);
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = oracle::uniform_int(rng, 2, 20);
    const auto f = oracle::random_connected_graph(rng, n, oracle::uniform_int(rng, 0, 2 * n), true);
    const Vector b = oracle::centered(oracle::random_vector(rng, n));
    const Solution s = solve_system(f, b);
    const Vector want = oracle::pinv_solve(f, b);
    const double d = max_abs_diff(oracle::centered(s.x), oracle::centered(want));
    worst = std::max(worst, d);
    t.check(s.status == SolveStatus::kOptimal && d <= 1e-5,
            "instance " + std::to_string(i) + " dx=" + fmt(d));
  }
  return t.outcome("max |dx| " + fmt(worst));
}

// 2. Certified duality gap and exhaustive separation.
Outcome strong_duality() {
  oracle::Rng rng(202);
  Tally t;
  double worst_gap = 0.0, worst_sep = 0.0;
  const unsigned kinds[] = {2u, 4u, 8u, 2u | 4u | 8u};
  for (int i = 0; i < 50; ++i) {
    const int n = oracle::uniform_int(rng, 3, 10);
    const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, n, 2 * n), kinds[i % 4], 4);
    const Vector b = sublap::apply(f, oracle::random_vector(rng, n));
    const Solution s = solve_system(f, b);
    const double j = objective(f, b, s.x);
    const Certificate c = certify(f, b, s.x, 1e-6);
    const Vector phi = f.lovasz(s.x);
    Vector minus_b(b.size());
    for (std::size_t v = 0; v < b.size(); ++v) minus_b[v] = -b[v];
    const double sep = oracle::min_over_subsets(f, phi, minus_b);
    worst_gap = std::max(worst_gap, c.gap / (1.0 + std::abs(j)));
    worst_sep = std::min(worst_sep, sep);
    t.check(s.status == SolveStatus::kOptimal, "instance " + std::to_string(i) + " not optimal");
    t.check(c.gap <= 1e-6 * (1.0 + std::abs(j)), "instance " + std::to_string(i) + " gap " + fmt(c.gap));
    t.check(sep >= -1e-6 * (1.0 + norm1(b)), "instance " + std::to_string(i) + " separation " + fmt(sep));
  }
  return t.outcome("max relative gap " + fmt(worst_gap) + ", min separation " + fmt(worst_sep));
}

// 3. Feasibility against 2^n enumeration.
Outcome feasibility() {
  oracle::Rng rng(303);
  Tally t;
  int infeasible = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = oracle::uniform_int(rng, 2, 12);
    const unsigned kinds = static_cast<unsigned>(oracle::uniform_int(rng, 1, 15));
    const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, 0, n + 2), kinds, 4);
    const std::string tag = "instance " + std::to_string(i);
    // Lattice part with arbitrary b.
    const Vector b = oracle::random_vector(rng, n);
    const auto rep = check_feasible(f, b);
    const double want = oracle::lattice_max(f, b);
    t.check((rep.lattice_max > 1e-9) == (want > 1e-9) && std::abs(rep.lattice_max - want) <= 1e-9,
            tag + " lattice max " + fmt(rep.lattice_max) + " vs " + fmt(want));
    // Full verdict with b(V) = 0.
    const Vector c = oracle::centered(b);
    const auto full = check_feasible(f, c);
    const bool expect = oracle::lattice_max(f, c) <= 1e-9;
    t.check(full.feasible == expect, tag + " verdict");
    if (!full.feasible) {
      ++infeasible;
      const bool cert_ok = full.certificate && full.certificate->sum(c) > 1e-9 &&
                           norm_inf(f.evaluate(*full.certificate)) == 0.0;
      t.check(cert_ok, tag + " certificate");
    }
  }
  return t.outcome(std::to_string(infeasible) + "/200 balanced instances infeasible");
}

struct RegressionRun {
  DistributiveLattice lattice;
  Vector b;
  RegressionResult exact;
};

std::vector<RegressionRun> regression_instances() {
  oracle::Rng rng(404);
  std::vector<RegressionRun> runs;
  for (int i = 0; i < 100; ++i) {
    const int n = oracle::uniform_int(rng, 1, 12);
    auto l = oracle::random_lattice(rng, n, 4096);
    Vector b = oracle::random_vector(rng, n, -2.0, 2.0);
    auto exact = regress_combinatorial(l, b, RegressionMode::kPolyhedron);
    runs.push_back({std::move(l), std::move(b), std::move(exact)});
  }
  return runs;
}

// 4. Combinatorial regression against the brute-force QP.
Outcome regression_exactness(const std::vector<RegressionRun>& runs) {
  Tally t;
  int clamp_active = 0, in_box = 0;
  double worst = 0.0;
  t.check(runs.size() == 100, "only " + std::to_string(runs.size()) + " instances built");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const std::string tag = "instance " + std::to_string(i);
    const auto brute = brute_force_regress(r.lattice, r.b, RegressionMode::kPolyhedron);
    const double d = max_abs_diff(r.exact.p, brute.p);
    worst = std::max(worst, d);
    t.check(d <= 1e-6, tag + " polyhedron dp=" + fmt(d));
    // b + p satisfies every member inequality.
    double viol = 0.0;
    Vector bp(r.b.size());
    for (std::size_t v = 0; v < bp.size(); ++v) bp[v] = r.b[v] + r.exact.p[v];
    for (const auto& s : oracle::lattice_members(r.lattice)) viol = std::max(viol, s.sum(bp));
    t.check(viol <= 1e-9, tag + " member violation " + fmt(viol));

    const auto base = regress_combinatorial(r.lattice, r.b, RegressionMode::kBase);
    const auto base_brute = brute_force_regress(r.lattice, r.b, RegressionMode::kBase);
    const double db = max_abs_diff(base.p, base_brute.p);
    worst = std::max(worst, db);
    t.check(db <= 1e-6, tag + " base dp=" + fmt(db));
    // The clamp z >= 0 only matters where the unclamped solution has p > 0.
    if (std::any_of(base.p.begin(), base.p.end(), [](double p) { return p > 1e-12; })) ++clamp_active;
    const double beta = std::max(*std::max_element(r.b.begin(), r.b.end()), 0.0);
    if (std::all_of(r.exact.p.begin(), r.exact.p.end(),
                    [&](double p) { return p <= 1e-12 && p >= -beta - 1e-12; })) ++in_box;
  }
  return t.outcome("max |dp| " + fmt(worst) + "; clamp changes the solution on " +
                   std::to_string(clamp_active) +
                   "/100 (both modes match the oracle); p* in [-beta, 0]^V on " +
                   std::to_string(in_box) + "/100");
}

// 5. Frank-Wolfe rate and summable gaps.
Outcome frank_wolfe_rate(const std::vector<RegressionRun>& runs) {
  Tally t;
  constexpr int kMax = 2000;
  int tested = 0;
  for (std::size_t i = 0; i < runs.size(); i += 5) {
    const auto& r = runs[i];
    const std::string tag = "instance " + std::to_string(i);
    const auto fw = regress_frank_wolfe(r.lattice, r.b, kMax);
    ++tested;
    const double best = norm2_squared(r.exact.p);
    const double scale = 4.0 * static_cast<double>(r.b.size()) * norm2_squared(r.b);
    long bound_fail = 0;
    double lhs = 0.0, curvature = 0.0;
    bool summable = true;
    const double f0 = fw.trace.front().objective;
    for (std::size_t k = 0; k < fw.trace.size(); ++k) {
      const auto& step = fw.trace[k];
      if (step.objective - best > scale / static_cast<double>(k + 1) + 1e-12) ++bound_fail;
      if (k + 1 == fw.trace.size()) break;
      if (step.gap < -1e-9) summable = false;
      lhs += step.step * step.gap;
      curvature += step.step * step.step * step.sq_dist;
      if (lhs > f0 - best + curvature + 1e-9 * (1.0 + f0)) summable = false;
    }
    t.check(bound_fail == 0, tag + " bound violated at " + std::to_string(bound_fail) + " iterates");
    t.check(summable, tag + " gap sequence not summable");
  }
  return t.outcome(std::to_string(tested) + " instances x " + std::to_string(kMax) + " iterations");
}

// 6. Nested minimizers across breakpoints, each checked against enumeration.
Outcome parametric_nesting(const std::vector<RegressionRun>& runs) {
  Tally t;
  long pairs = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const std::string tag = "instance " + std::to_string(i);
    const auto& chain = r.exact.chain;
    for (std::size_t a = 0; a < chain.size(); ++a) {
      for (std::size_t c = a + 1; c < chain.size(); ++c) {
        ++pairs;
        t.check(chain[c].is_subset_of(chain[a]), tag + " chain " + std::to_string(c) + " not in " + std::to_string(a));
      }
    }
    if (chain.size() != r.exact.breakpoints.size() + 1) {
      t.check(false, tag + " chain/breakpoint count");
      continue;
    }
    const auto members = oracle::lattice_members(r.lattice);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const auto& bp = r.exact.breakpoints;
      const double lo = k == 0 ? (bp.empty() ? 0.0 : bp.front() - 1.0) : bp[k - 1];
      const double hi = k == bp.size() ? (bp.empty() ? 0.0 : bp.back() + 1.0) : bp[k];
      const double alpha = 0.5 * (lo + hi);
      auto value = [&](const VertexSet& s) { return -s.sum(r.b) + alpha * s.size(); };
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : members) best = std::min(best, value(s));
      t.check(value(chain[k]) <= best + 1e-9, tag + " piece " + std::to_string(k) + " not a minimizer");
    }
  }
  return t.outcome(std::to_string(pairs) + " ordered chain pairs");
}

struct ResistanceSample {
  double reported_gap = 0.0;
  double value = 0.0;
};

// 7 and 8 share their resistance computations.
std::pair<Outcome, Outcome> triangle_and_identity() {
  oracle::Rng rng(707);
  Tally tri, ident;
  long finite = 0, infinite = 0;
  double worst_identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = oracle::uniform_int(rng, 3, 8);
    const unsigned kinds = static_cast<unsigned>(oracle::uniform_int(rng, 1, 15));
    const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, n - 1, 2 * n), kinds, 3);
    std::map<std::pair<int, int>, ResistanceValue> cache;
    auto r = [&](int u, int v) -> const ResistanceValue& {
      auto it = cache.find({u, v});
      if (it != cache.end()) return it->second;
      ResistanceValue rv = effective_resistance(f, u, v);
      const std::string tag = "instance " + std::to_string(i) + " R(" + std::to_string(u) + "," + std::to_string(v) + ")";
      const bool want_inf = u != v && oracle::lattice_max(f, unit_pair(n, u, v)) > 1e-12;
      tri.check(rv.infinite == want_inf && rv.infinite == std::isinf(rv.value), tag + " infinite bookkeeping");
      if (!rv.infinite) {
        ++finite;
        tri.check(!rv.degraded, tag + " degraded");
        const Vector b = unit_pair(n, u, v);
        const double lhs = dot(b, rv.witness_x);
        const double energy = norm2_squared(rv.witness_phi);
        const double d = std::abs(lhs - energy);
        worst_identity = std::max(worst_identity, d / (1.0 + rv.value));
        ident.check(d <= 1e-5 * (1.0 + rv.value), tag + " identity " + fmt(d));
      } else {
        ++infinite;
      }
      return cache.emplace(std::pair{u, v}, std::move(rv)).first->second;
    };
    for (int k = 0; k < 20; ++k) {
      std::vector<int> pick(static_cast<std::size_t>(n));
      std::iota(pick.begin(), pick.end(), 0);
      std::shuffle(pick.begin(), pick.end(), rng);
      const int u = pick[0], v = pick[1], w = pick[2];
      const double uv = r(u, v).value, vw = r(v, w).value, uw = r(u, w).value;
      const bool ok = std::isinf(uw) ? (std::isinf(uv) || std::isinf(vw))
                                     : uv + vw >= uw - 1e-6 * (1.0 + uw);
      tri.check(ok, "instance " + std::to_string(i) + " triple (" + std::to_string(u) + "," +
                        std::to_string(v) + "," + std::to_string(w) + ")");
    }
  }
  return {tri.outcome(std::to_string(finite) + " finite and " + std::to_string(infinite) +
                      " infinite resistances"),
          ident.outcome("max relative deviation " + fmt(worst_identity))};
}

bool fixed_exact(const LabeledSolution& s, const LabeledProblem& lp) {
  for (int v : lp.fixed.members()) {
    if (s.solution.x[static_cast<std::size_t>(v)] != lp.x_tilde[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

// 9. Labeled problems against harmonic extension and a 1-D oracle.
Outcome semisupervised() {
  oracle::Rng rng(909);
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const int n = oracle::uniform_int(rng, 3, 15);
    const auto f = oracle::random_connected_graph(rng, n, oracle::uniform_int(rng, 0, n), true);
    LabeledProblem lp{VertexSet(n), oracle::random_vector(rng, n), oracle::random_vector(rng, n)};
    const int k = oracle::uniform_int(rng, 1, n - 1);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int j = 0; j < k; ++j) lp.fixed.insert(perm[static_cast<std::size_t>(j)]);
    for (int v = 0; v < n; ++v) {
      if (lp.fixed.contains(v)) lp.b_tilde[static_cast<std::size_t>(v)] = 0.0;
      else lp.x_tilde[static_cast<std::size_t>(v)] = 0.0;
    }
    const auto s = solve_labeled(f, lp);
    const Vector want = oracle::harmonic_extension(f, lp.fixed, lp.x_tilde, lp.b_tilde);
    const double d = max_abs_diff(s.solution.x, want);
    worst = std::max(worst, d);
    const std::string tag = "graph " + std::to_string(i);
    t.check(s.solution.status == SolveStatus::kOptimal && d <= 1e-5, tag + " dx=" + fmt(d));
    t.check(fixed_exact(s, lp), tag + " labels on T changed");
  }
  int chains = 0, unbounded = 0;
  double worst_chain = 0.0;
  for (int i = 0; i < 30; ++i) {
    const int n = oracle::uniform_int(rng, 3, 8);
    std::vector<EdgeFunction> edges;
    for (int v = 0; v + 1 < n; ++v) {
      const double w = oracle::uniform(rng, 0.5, 2.0);
      if (oracle::uniform_int(rng, 0, 1) == 0) edges.push_back(EdgeFunction::directed(v, v + 1, w));
      else edges.push_back(EdgeFunction::directed(v + 1, v, w));
    }
    const SubmodularTransformation f(n, edges);
    const int free_v = oracle::uniform_int(rng, 1, n - 2);
    LabeledProblem lp{VertexSet::full(n), oracle::random_vector(rng, n), Vector(static_cast<std::size_t>(n), 0.0)};
    lp.fixed.erase(free_v);
    lp.x_tilde[static_cast<std::size_t>(free_v)] = 0.0;
    const double bk = oracle::uniform(rng, -1.0, 1.0);
    lp.b_tilde[static_cast<std::size_t>(free_v)] = bk;
    auto j = [&](double x) {
      Vector y = lp.x_tilde;
      y[static_cast<std::size_t>(free_v)] = x;
      return objective(f, lp.b_tilde, y);
    };
    // J is bounded above +inf iff an arc leaves free_v, below iff one enters.
    bool up = false, down = false;
    for (const auto& e : edges) {
      if (e.support()[0] == free_v) up = true;
      if (e.support()[1] == free_v) down = true;
    }
    const bool bounded = (up || bk <= 0.0) && (down || bk >= 0.0);
    const auto s = solve_labeled(f, lp);
    const std::string tag = "chain " + std::to_string(i);
    if (!bounded) {
      ++unbounded;
      t.check(s.solution.status == SolveStatus::kInfeasible, tag + " should be unbounded");
      continue;
    }
    ++chains;
    const double t0 = oracle::minimize_1d(j, -10.0, 10.0);
    const double jd = std::abs(j(s.solution.x[static_cast<std::size_t>(free_v)]) - j(t0));
    worst_chain = std::max(worst_chain, jd);
    t.check(s.solution.status == SolveStatus::kOptimal && jd <= 1e-6, tag + " dJ=" + fmt(jd));
    // The minimizer is unique unless J is flat near t0.
    const bool strict = j(t0 - 1e-3) > j(t0) + 1e-10 && j(t0 + 1e-3) > j(t0) + 1e-10;
    if (strict) {
      const double dx = std::abs(s.solution.x[static_cast<std::size_t>(free_v)] - t0);
      t.check(dx <= 1e-6, tag + " dx=" + fmt(dx));
    }
    t.check(fixed_exact(s, lp), tag + " labels on T changed");
  }
  return t.outcome("max |dx| " + fmt(worst) + " on graphs; " + std::to_string(chains) +
                   " bounded chains (max dJ " + fmt(worst_chain) + "), " + std::to_string(unbounded) +
                   " unbounded chains reported infeasible");
}

// 10. Flow dual objective against -J(x*).
Outcome flow_dual() {
  oracle::Rng rng(1010);
  Tally t;
  double worst = 0.0, worst_res = 0.0;
  for (int i = 0; i < 30; ++i) {
    const int n = oracle::uniform_int(rng, 3, 8);
    const auto f = oracle::random_mixed(rng, n, oracle::uniform_int(rng, n - 1, 2 * n), 15u, 3);
    const Vector b = sublap::apply(f, oracle::random_vector(rng, n));
    const auto dual = quadratic_flow_dual(f, b);
    const Solution s = solve_system(f, b);
    const double j = objective(f, b, s.x);
    const double d = std::abs(dual.objective + j);
    worst = std::max(worst, d);
    worst_res = std::max(worst_res, dual.boundary_residual);
    const std::string tag = "instance " + std::to_string(i);
    t.check(d <= 1e-5, tag + " objective " + fmt(dual.objective) + " vs " + fmt(-j));
    t.check(dual.boundary_residual <= 1e-6, tag + " residual " + fmt(dual.boundary_residual));
  }
  return t.outcome("max |obj + J| " + fmt(worst) + ", max residual " + fmt(worst_res));
}

// 11. The scripted corpus twice, byte for byte.
Outcome cli_determinism() {
  const fs::path fixtures = SUBLAP_FIXTURE_DIR;
  const fs::path scratch = fs::temp_directory_path() / "sublap_acceptance_corpus";
  const auto cases = testing::load_corpus(fixtures, scratch);
  Tally t;
  std::vector<std::string> subcommands;
  for (const auto& c : cases) {
    const auto a = testing::run_case(c, scratch);
    const auto b = testing::run_case(c, scratch);
    t.check(a.exit_code == c.expected_exit, c.line + " exit " + std::to_string(a.exit_code));
    t.check(a.exit_code == b.exit_code && a.out == b.out && a.err == b.err && a.files == b.files,
            c.line + " differs between runs");
    if (!c.args.empty() &&
        std::find(subcommands.begin(), subcommands.end(), c.args[0]) == subcommands.end()) {
      subcommands.push_back(c.args[0]);
    }
  }
  fs::remove_all(scratch);
  std::size_t problems = 0;
  for (const auto& e : fs::directory_iterator(fixtures)) problems += e.path().extension() == ".json";
  t.check(problems == 12, "expected 12 fixture problems, found " + std::to_string(problems));
  t.check(subcommands.size() == 7, "corpus covers " + std::to_string(subcommands.size()) + " subcommands");
  return t.outcome(std::to_string(cases.size()) + " commands over " + std::to_string(problems) + " fixtures");
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "undirected systems match the pseudo-inverse", undirected_equivalence);
  report(2, "strong duality with exhaustive separation", strong_duality);
  report(3, "feasibility matches enumeration", feasibility);

  std::vector<RegressionRun> runs;
  try {
    runs = regression_instances();
  } catch (const std::exception& e) {
    std::printf("regression instances failed: %s\n", e.what());
  }
  report(4, "combinatorial regression matches the QP oracle", [&] { return regression_exactness(runs); });
  report(5, "Frank-Wolfe rate and summable gaps", [&] { return frank_wolfe_rate(runs); });
  report(6, "parametric minimizers are nested", [&] { return parametric_nesting(runs); });

  std::pair<Outcome, Outcome> ri;
  try {
    ri = triangle_and_identity();
  } catch (const std::exception& e) {
    ri.first = ri.second = {false, std::string("exception: ") + e.what()};
  }
  report(7, "resistance triangle inequality", [&] { return ri.first; });
  report(8, "resistance energy identity", [&] { return ri.second; });
  report(9, "semi-supervised solutions match oracles", semisupervised);
  report(10, "flow dual matches the primal optimum", flow_dual);
  report(11, "CLI corpus is deterministic", cli_determinism);

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
