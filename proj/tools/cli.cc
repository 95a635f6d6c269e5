#include "cli.h"

#include <algorithm>
#include <charconv>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sublap/analysis.h"
#include "sublap/io.h"
#include "sublap/laplacian.h"
#include "sublap/lattice.h"
#include "sublap/regression.h"
#include "sublap/semisup.h"

namespace sublap::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool quiet = false;

  std::string input;
  std::string output;
  std::string csv;
  double tolerance = 1e-8;
  std::optional<long> max_iter;

  std::string method = "exact";
  std::optional<std::string> mode;
  int iters = 1000;

  std::string source;
  std::string target;
  bool all_pairs = false;
  std::string measure;
  bool dump = false;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
  const Options& opt;

  void emit(const std::string& doc) const {
    if (opt.output.empty()) out << doc;
    else write_file(opt.output, doc);
  }
  void emit_csv(const std::string& csv) const {
    if (!opt.csv.empty()) write_file(opt.csv, csv);
  }
  void note(const std::string& msg) const {
    if (!opt.quiet) err << msg << '\n';
  }
};

SolverConfig solver_config(const Options& opt) {
  SolverConfig cfg;
  cfg.tolerance = opt.tolerance;
  cfg.max_iterations = opt.max_iter;
  cfg.seed = opt.seed;
  return cfg;
}

const Vector& require_b(const ProblemDocument& doc) {
  if (!doc.b) throw ValidationError("problem has no \"b\" vector");
  return *doc.b;
}

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return kOk;
    case SolveStatus::kInfeasible: return kInfeasible;
    case SolveStatus::kIterationLimit: return kIterationLimit;
  }
  return kInternal;
}

int resolve_vertex(const SubmodularTransformation& f, const std::string& s) {
  const auto& names = f.ground().labels;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == s) return static_cast<int>(i);
  }
  int v = -1;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 0 || v >= f.n()) {
    throw ValidationError("unknown vertex \"" + s + "\"");
  }
  return v;
}

std::string summary(const Solution& s) {
  return "status " + to_string(s.status) + ", iterations " + std::to_string(s.iterations);
}

int cmd_solve(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const SolverConfig cfg = solver_config(io.opt);
  const Solution sol = solve_system(doc.f, require_b(doc), cfg);
  io.emit(serialize(SolutionDocument{sol, SolverMeta{cfg.tolerance, "descent"}}));
  io.note(summary(sol));
  return exit_for(sol.status);
}

int cmd_check(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const FeasibilityReport rep = check_feasible(doc.f, require_b(doc));
  Json j;
  j["feasible"] = rep.feasible;
  j["balanced"] = rep.balanced;
  j["lattice_max"] = rep.lattice_max;
  j["certificate"] = rep.certificate ? Json(rep.certificate->members()) : Json(nullptr);
  io.emit(j.dump(2) + "\n");
  io.note(rep.feasible ? "feasible" : "infeasible");
  return rep.feasible ? kOk : kInfeasible;
}

int cmd_regress(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const Vector& b = require_b(doc);
  const DistributiveLattice ker = kernel(doc.f);
  const bool fw = io.opt.method == "fw";
  const std::string mode_name = io.opt.mode.value_or(fw ? "polyhedron" : "base");
  const RegressionMode mode =
      mode_name == "base" ? RegressionMode::kBase : RegressionMode::kPolyhedron;
  if (fw && mode == RegressionMode::kBase) {
    throw ValidationError("--method fw supports --mode polyhedron only");
  }
  RegressionResult reg;
  if (fw) reg = regress_frank_wolfe(ker, b, io.opt.iters);
  else if (io.opt.method == "oracle") reg = brute_force_regress(ker, b, mode);
  else reg = regress_combinatorial(ker, b, mode);

  const SolverConfig cfg = solver_config(io.opt);
  const Solution sol = solve_system(doc.f, reg.b_prime, cfg);
  Json j;
  j["regression"] = Json::parse(serialize(reg));
  j["solution"] = Json::parse(serialize(SolutionDocument{sol, SolverMeta{cfg.tolerance, "descent"}}));
  io.emit(j.dump(2) + "\n");
  io.note("||p||^2 = " + std::to_string(norm2_squared(reg.p)) + ", " + summary(sol));
  return exit_for(sol.status);
}

int cmd_semisup(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const LabeledProblem lp = labeled_problem(doc);
  const SolverConfig cfg = solver_config(io.opt);
  const LabeledSolution ls = solve_labeled(doc.f, lp, cfg);
  VertexSet unlabeled(doc.f.n());
  for (int v = 0; v < doc.f.n(); ++v) {
    if (!lp.fixed.contains(v)) unlabeled.insert(v);
  }
  const std::vector<int> labels = predict_labels(ls.solution.x, unlabeled);
  Json j;
  j["solution"] = Json::parse(serialize(SolutionDocument{ls.solution, SolverMeta{cfg.tolerance, "labeled-descent"}}));
  j["boundary"] = ls.boundary;
  j["boundary_unique"] = ls.boundary_unique;
  Json lab = Json::array();
  for (int v : unlabeled.members()) lab.push_back(Json{{"vertex", v}, {"label", labels[static_cast<std::size_t>(v)]}});
  j["labels"] = std::move(lab);
  io.emit(j.dump(2) + "\n");
  io.emit_csv(labels_csv(doc.f, ls.solution.x, unlabeled, labels));
  io.note(summary(ls.solution));
  return exit_for(ls.solution.status);
}

int cmd_resistance(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const SolverConfig cfg = solver_config(io.opt);
  if (io.opt.all_pairs) {
    const std::vector<double> m = all_pairs_resistance(doc.f, cfg, io.opt.threads);
    const std::string csv = resistance_csv(doc.f, m);
    io.emit(csv);
    io.emit_csv(csv);
    return kOk;
  }
  if (io.opt.source.empty() || io.opt.target.empty()) {
    throw ValidationError("resistance needs --source and --target, or --all-pairs");
  }
  const int u = resolve_vertex(doc.f, io.opt.source);
  const int v = resolve_vertex(doc.f, io.opt.target);
  const ResistanceValue r = effective_resistance(doc.f, u, v, cfg);
  io.emit(serialize(ResistanceDocument{u, v, r}));
  io.note(r.infinite ? "R = inf" : "R = " + std::to_string(r.value));
  return r.degraded ? kIterationLimit : kOk;
}

int cmd_centrality(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const CentralityMeasure m =
      io.opt.measure == "betweenness" ? CentralityMeasure::kBetweenness : CentralityMeasure::kCloseness;
  const CentralityReport rep = centrality(doc.f, m, solver_config(io.opt), io.opt.threads);
  io.emit(serialize(rep));
  io.emit_csv(centrality_csv(doc.f, rep));
  return kOk;
}

int cmd_lattice(const Io& io) {
  const ProblemDocument doc = read_problem(io.opt.input);
  const DistributiveLattice ker = kernel(doc.f);
  if (io.opt.dump) {
    io.emit(serialize(ker));
  } else {
    const auto count = count_members(ker, 1u << 20);
    Json j;
    j["classes"] = ker.class_count();
    j["hasse_arcs"] = ker.hasse_arcs().size();
    j["members"] = count ? Json(*count) : Json(nullptr);
    io.emit(j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Solver for submodular Laplacian systems", "sublap"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", opt.seed, "Seed for randomized initial points");
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", opt.quiet, "No summary on stderr");

  auto input = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "Problem JSON")->required();
    sub->add_option("--output", opt.output, "Write the result here instead of stdout");
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tolerance, "Duality gap / residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", opt.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  };

  std::map<CLI::App*, int (*)(const Io&)> handlers;
  CLI::App* solve = app.add_subcommand("solve", "Solve L_F(x) containing b");
  input(solve);
  solver(solve);
  handlers[solve] = cmd_solve;

  CLI::App* check = app.add_subcommand("check", "Feasibility verdict and violating set");
  input(check);
  handlers[check] = cmd_check;

  CLI::App* regress = app.add_subcommand("regress", "Closest solvable boundary, then solve it");
  input(regress);
  solver(regress);
  regress->add_option("--method", opt.method, "fw, exact or oracle")
      ->check(CLI::IsMember({"fw", "exact", "oracle"}));
  regress->add_option("--mode", opt.mode, "base or polyhedron")
      ->check(CLI::IsMember({"base", "polyhedron"}));
  regress->add_option("--iters", opt.iters, "Frank-Wolfe iterations")->check(CLI::NonNegativeNumber);
  handlers[regress] = cmd_regress;

  CLI::App* semisup = app.add_subcommand("semisup", "Label-constrained solve and prediction");
  input(semisup);
  solver(semisup);
  semisup->add_option("--csv", opt.csv, "Write predicted labels as CSV");
  handlers[semisup] = cmd_semisup;

  CLI::App* resistance = app.add_subcommand("resistance", "Effective resistance");
  input(resistance);
  solver(resistance);
  auto* src = resistance->add_option("--source", opt.source, "Vertex index or name");
  auto* dst = resistance->add_option("--target", opt.target, "Vertex index or name");
  auto* all = resistance->add_flag("--all-pairs", opt.all_pairs, "n x n CSV of all resistances");
  src->needs(dst);
  dst->needs(src);
  all->excludes(src)->excludes(dst);
  resistance->final_callback([&opt] {
    if (!opt.all_pairs && opt.source.empty()) {
      throw CLI::RequiredError("--source and --target, or --all-pairs,");
    }
  });
  resistance->add_option("--csv", opt.csv, "Also write the CSV here");
  handlers[resistance] = cmd_resistance;

  CLI::App* centrality = app.add_subcommand("centrality", "Current-flow centrality");
  input(centrality);
  solver(centrality);
  centrality->add_option("--measure", opt.measure, "closeness or betweenness")
      ->required()
      ->check(CLI::IsMember({"closeness", "betweenness"}));
  centrality->add_option("--csv", opt.csv, "Also write vertex,score CSV here");
  handlers[centrality] = cmd_centrality;

  CLI::App* lattice = app.add_subcommand("lattice", "Birkhoff representation of ker(F)");
  input(lattice);
  lattice->add_flag("--dump", opt.dump, "Print classes and Hasse arcs");
  handlers[lattice] = cmd_lattice;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const Io io{out, err, opt};
  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(io);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace sublap::cli
