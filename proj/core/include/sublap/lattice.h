#ifndef SUBLAP_LATTICE_H_
#define SUBLAP_LATTICE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sublap/common.h"
#include "sublap/submodular.h"

namespace sublap {

// Birkhoff representation: a poset on equivalence classes of V whose lower
// ideals (together with the forced classes) are the lattice members.
class DistributiveLattice {
 public:
  // `relations` holds pairs (i, j) meaning class i precedes class j: every
  // member containing class j contains class i. Any relation set is accepted;
  // it is closed transitively and reduced to Hasse arcs.
  DistributiveLattice(int n, std::vector<std::vector<int>> classes,
                      const std::vector<std::pair<int, int>>& relations,
                      std::vector<int> forced_in = {},
                      std::vector<int> forced_out = {});

  int n() const { return n_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  const std::vector<std::pair<int, int>>& hasse_arcs() const { return hasse_; }
  const std::vector<int>& forced_in() const { return forced_in_; }
  const std::vector<int>& forced_out() const { return forced_out_; }
  int class_of(int v) const { return class_of_[static_cast<std::size_t>(v)]; }
  // below(j)[i] is true iff class i precedes class j (reflexive).
  const std::vector<bool>& below(int j) const { return below_[static_cast<std::size_t>(j)]; }
  // Classes in a linear extension of the order (predecessors first).
  const std::vector<int>& topological_order() const { return topo_; }

  bool is_forced_in(int c) const { return status_[static_cast<std::size_t>(c)] == 1; }
  bool is_forced_out(int c) const { return status_[static_cast<std::size_t>(c)] == -1; }

 private:
  int n_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<std::vector<bool>> below_;
  std::vector<std::pair<int, int>> hasse_;
  std::vector<int> forced_in_;
  std::vector<int> forced_out_;
  std::vector<int> status_;  // 1 forced in, -1 forced out, 0 free
  std::vector<int> topo_;
};

// Birkhoff representation of ker(F) = {S : F_e(S) = 0 for all e}.
DistributiveLattice kernel(const SubmodularTransformation& f);

bool is_member(const DistributiveLattice& lattice, const VertexSet& s);

// All members sorted by size, then lexicographically by sorted members.
std::vector<VertexSet> enumerate(const DistributiveLattice& lattice,
                                 std::size_t limit = 4096);

// Number of members, or nullopt when it exceeds `limit`.
std::optional<std::size_t> count_members(const DistributiveLattice& lattice,
                                         std::size_t limit);

struct IdealValue {
  double value = 0.0;
  VertexSet ideal;  // inclusion-minimal maximizer
};

// max over members S (optionally containing `include`, avoiding `exclude`)
// of sum_{v in S} weights(v). Throws InfeasibleError if no member satisfies
// the extra constraints.
IdealValue max_weight_ideal(const DistributiveLattice& lattice,
                            std::span<const double> weights,
                            const VertexSet* include = nullptr,
                            const VertexSet* exclude = nullptr);

// Box for the linear minimization oracle. Empty `lower` means -b; empty
// `upper` means unbounded above.
struct LmoRegion {
  Vector lower;
  Vector upper;
};

// A vertex minimizing <c, x> over
//   {x : x(S) <= -b(S) for every member S, lower <= x <= upper}.
// Throws InfeasibleError if the region is empty or the minimum is unbounded.
Vector greedy_lmo(const DistributiveLattice& lattice, std::span<const double> b,
                  std::span<const double> c, const LmoRegion& region = {});

}  // namespace sublap

#endif  // SUBLAP_LATTICE_H_
