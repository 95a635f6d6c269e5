#ifndef SUBLAP_SUBMODULAR_H_
#define SUBLAP_SUBMODULAR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sublap/common.h"

namespace sublap {

inline constexpr int kDefaultArityBound = 12;

enum class EdgeKind { kUndirected, kDirected, kHyper, kTable };

std::string to_string(EdgeKind kind);

// One coordinate F_e of a submodular transformation. Cut kinds use closed
// forms; Table holds an explicit normalized submodular function on its
// support, indexed by bitmask over support positions.
class EdgeFunction {
 public:
  static EdgeFunction undirected(int u, int v, double weight = 1.0);
  // Cut iff tail is in S and head is not.
  static EdgeFunction directed(int tail, int head, double weight = 1.0);
  static EdgeFunction hyper(std::vector<int> vertices, double weight = 1.0);
  // Validates normalization, nonnegativity and submodularity exhaustively.
  static EdgeFunction table(std::vector<int> support, std::vector<double> values,
                            double weight = 1.0,
                            int arity_bound = kDefaultArityBound);

  EdgeKind kind() const { return kind_; }
  const std::vector<int>& support() const { return support_; }
  int arity() const { return static_cast<int>(support_.size()); }
  double weight() const { return weight_; }
  // Table values (unweighted); empty for cut kinds.
  const std::vector<double>& values() const { return values_; }

  bool is_cut() const { return kind_ != EdgeKind::kTable; }

  // F_e restricted to support positions: bit i of `local` means support()[i].
  double evaluate_local(std::uint32_t local) const;
  double evaluate(const VertexSet& s) const;
  double lovasz(std::span<const double> x) const;

  // out += scale * (greedy vector of the order given by `rank`), where
  // lower rank comes first. `rank` is indexed by vertex.
  void add_greedy(std::span<const int> rank, double scale,
                  std::span<double> out) const;

 private:
  EdgeFunction() = default;

  EdgeKind kind_ = EdgeKind::kUndirected;
  std::vector<int> support_;
  std::vector<double> values_;
  double weight_ = 1.0;
};

struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // empty or size n, unique
};

// F : 2^V -> R_+^E given as an ordered list of edge functions.
class SubmodularTransformation {
 public:
  SubmodularTransformation(GroundSet ground, std::vector<EdgeFunction> edges);
  SubmodularTransformation(int n, std::vector<EdgeFunction> edges)
      : SubmodularTransformation(GroundSet{n, {}}, std::move(edges)) {}

  int n() const { return ground_.n; }
  const GroundSet& ground() const { return ground_; }
  const std::vector<EdgeFunction>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Only undirected/directed cut edges.
  bool is_graph() const;
  // No Table edges.
  bool is_cut_only() const;
  int max_arity() const;

  // (F_e(S))_e
  Vector evaluate(const VertexSet& s) const;
  // (f_e(x))_e
  Vector lovasz(std::span<const double> x) const;

  // Same functions with vertex v renamed to perm[v].
  SubmodularTransformation relabeled(std::span<const int> perm) const;

 private:
  GroundSet ground_;
  std::vector<EdgeFunction> edges_;
};

// w_e in B(F_e) as a dense vector over V.
struct BaseVector {
  Vector w;
  int edge = -1;
  std::vector<int> order;  // generating permutation of the support
};

double evaluate(const EdgeFunction& fe, const VertexSet& s);
double lovasz_eval(const EdgeFunction& fe, std::span<const double> x);

// Greedy vector for x descending, ties by ascending vertex index.
BaseVector lovasz_subgradient(const EdgeFunction& fe, std::span<const double> x,
                              int edge_index = -1);

// Deduplicated greedy vectors over all orderings of the support.
std::vector<BaseVector> base_extreme_points(
    const EdgeFunction& fe, int n, int edge_index = -1,
    int arity_bound = kDefaultArityBound);

// rank[v] = position of v when sorting by x descending, ties by index.
std::vector<int> rank_descending(std::span<const double> x);
// Same, ties broken by d descending, then by index. Used for one-sided
// directional derivatives along d.
std::vector<int> rank_descending(std::span<const double> x,
                                 std::span<const double> d);
// rank[v] from an explicit order (order[i] is the i-th vertex).
std::vector<int> rank_from_order(std::span<const int> order);

// f'(x; d) = max over the face of B(F_e) at x of <w, d>.
double lovasz_directional(const EdgeFunction& fe, std::span<const double> x,
                          std::span<const double> d);

}  // namespace sublap

#endif  // SUBLAP_SUBMODULAR_H_
