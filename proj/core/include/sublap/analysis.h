#ifndef SUBLAP_ANALYSIS_H_
#define SUBLAP_ANALYSIS_H_

#include <string>
#include <vector>

#include "sublap/common.h"
#include "sublap/laplacian.h"
#include "sublap/submodular.h"

namespace sublap {

struct ResistanceValue {
  double value = 0.0;  // +inf when the system for e_u - e_v is infeasible
  bool infinite = false;
  // Solver hit its iteration limit, or <b, x> and ||phi||^2 disagree.
  bool degraded = false;
  Vector witness_x;
  Vector witness_phi;
  double energy = 0.0;  // ||phi||^2
};

ResistanceValue effective_resistance(const SubmodularTransformation& f, int u, int v,
                                     const SolverConfig& cfg = {});

struct TriangleCheck {
  double lhs = 0.0;  // R(u,v) + R(v,w)
  double rhs = 0.0;  // R(u,w)
  bool holds = true;
};

TriangleCheck triangle_check(const SubmodularTransformation& f, int u, int v, int w,
                             const SolverConfig& cfg = {});

// Row-major n x n matrix, zero diagonal. Rows are solved concurrently on
// up to `threads` workers (0 = hardware concurrency); within a row, solves
// are warm-started from the previous finite one.
std::vector<double> all_pairs_resistance(const SubmodularTransformation& f,
                                         const SolverConfig& cfg = {}, int threads = 1);

// n / sum_{u != v} R(u, v); 0 if any term is infinite.
double closeness_centrality(const SubmodularTransformation& f, int v,
                            const SolverConfig& cfg = {});

// Graph edges only. Current through edge e is weight_e * f_e(x); pairs with
// infeasible systems contribute 0.
double betweenness_centrality(const SubmodularTransformation& f, int v,
                              const SolverConfig& cfg = {});

enum class CentralityMeasure { kCloseness, kBetweenness };

std::string to_string(CentralityMeasure measure);

struct PairCurrent {
  int s = 0;
  int t = 0;
  std::vector<double> tau;  // tau_st(v) for every v
  bool feasible = true;
};

struct CentralityReport {
  CentralityMeasure measure = CentralityMeasure::kCloseness;
  std::vector<double> scores;  // indexed by vertex
  std::vector<int> ranking;    // by score descending, then vertex index
  std::vector<PairCurrent> pairs;  // betweenness only, ordered (s, t)
};

CentralityReport centrality(const SubmodularTransformation& f, CentralityMeasure measure,
                            const SolverConfig& cfg = {}, int threads = 1);

}  // namespace sublap

#endif  // SUBLAP_ANALYSIS_H_
