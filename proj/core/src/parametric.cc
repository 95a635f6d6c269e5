#include "sublap/parametric.h"

#include <algorithm>
#include <cmath>

namespace sublap {
namespace {

double slope_at(const ParametricCapacity& pc, int u) {
  return pc.slope.empty() ? 1.0 : pc.slope[static_cast<std::size_t>(u)];
}

void validate(const ParametricCapacity& pc) {
  if (pc.nodes < 0 || static_cast<int>(pc.b.size()) != pc.nodes) {
    throw ValidationError("parametric network: b must have one entry per node");
  }
  if (!pc.slope.empty()) {
    if (static_cast<int>(pc.slope.size()) != pc.nodes) {
      throw ValidationError("parametric network: slope size mismatch");
    }
    for (double s : pc.slope) {
      if (!(s > 0.0)) throw ValidationError("parametric network: slopes must be positive");
    }
  }
  for (const Arc& a : pc.interior) {
    if (a.from < 0 || a.to < 0 || a.from >= pc.nodes || a.to >= pc.nodes) {
      throw ValidationError("parametric network: interior arc out of range");
    }
  }
}

double line_tolerance(const ParametricCapacity& pc, double alpha) {
  double scale = 1.0;
  for (int u = 0; u < pc.nodes; ++u) {
    scale += std::abs(pc.b[static_cast<std::size_t>(u)]) + std::abs(alpha) * slope_at(pc, u);
  }
  return 1e-10 * scale;
}

struct Side {
  double b_sum = 0.0;
  double slope_sum = 0.0;
};

Side totals(const ParametricCapacity& pc, const std::vector<bool>& side) {
  Side s;
  for (int u = 0; u < pc.nodes; ++u) {
    if (side[static_cast<std::size_t>(u)]) {
      s.b_sum += pc.b[static_cast<std::size_t>(u)];
      s.slope_sum += slope_at(pc, u);
    }
  }
  return s;
}

void solve_interval(const ParametricCapacity& pc, double alpha_l, const std::vector<bool>& left,
                    double alpha_r, const std::vector<bool>& right,
                    std::vector<std::pair<double, std::vector<bool>>>& out) {
  if (left == right) return;
  const Side sl = totals(pc, left), sr = totals(pc, right);
  const double alpha = (sl.b_sum - sr.b_sum) / (sl.slope_sum - sr.slope_sum);
  const double a = std::clamp(alpha, alpha_l, alpha_r);
  // Nodes in `right` stay in, nodes outside `left` stay out (nesting).
  std::vector<bool> out_mask(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) out_mask[i] = !left[i];
  const std::vector<bool> mid = parametric_minimizer(pc, a, &right, &out_mask);
  const double line = parametric_value(pc, a, left);
  const double best = parametric_value(pc, a, mid);
  if (best >= line - line_tolerance(pc, a) || mid == left || mid == right) {
    out.emplace_back(a, right);
    return;
  }
  solve_interval(pc, alpha_l, left, a, mid, out);
  solve_interval(pc, a, mid, alpha_r, right, out);
}

}  // namespace

double parametric_value(const ParametricCapacity& pc, double alpha, const std::vector<bool>& side) {
  double total = 0.0;
  for (int u = 0; u < pc.nodes; ++u) {
    if (side[static_cast<std::size_t>(u)]) {
      total += alpha * slope_at(pc, u) - pc.b[static_cast<std::size_t>(u)];
    }
  }
  for (const Arc& a : pc.interior) {
    if (side[static_cast<std::size_t>(a.from)] && !side[static_cast<std::size_t>(a.to)]) {
      total += a.capacity;
    }
  }
  return total;
}

std::vector<bool> parametric_minimizer(const ParametricCapacity& pc, double alpha,
                                       const std::vector<bool>* must_in,
                                       const std::vector<bool>* must_out) {
  validate(pc);
  const int s = pc.nodes, t = pc.nodes + 1;
  FlowNetwork net(pc.nodes + 2, s, t);
  for (int u = 0; u < pc.nodes; ++u) {
    const auto uu = static_cast<std::size_t>(u);
    const double y = pc.b[uu] - alpha * slope_at(pc, u);
    if (y > 0.0) net.add_arc(s, u, y);
    if (y < 0.0) net.add_arc(u, t, -y);
    if (must_in && (*must_in)[uu]) net.add_arc(s, u, kInfiniteCapacity);
    if (must_out && (*must_out)[uu]) net.add_arc(u, t, kInfiniteCapacity);
  }
  for (const Arc& a : pc.interior) net.add_arc(a.from, a.to, a.capacity);
  const MaxFlowResult mf = max_flow_min_cut(net);
  if (mf.unbounded) throw InfeasibleError("parametric cut: contraction is infeasible");
  return std::vector<bool>(mf.min_source_side.begin(), mf.min_source_side.begin() + pc.nodes);
}

ParametricCut parametric_min_cut(const ParametricCapacity& pc, double alpha_lo, double alpha_hi) {
  validate(pc);
  if (!(alpha_lo <= alpha_hi)) throw ValidationError("parametric cut: empty parameter range");
  const std::vector<bool> left = parametric_minimizer(pc, alpha_lo);
  const std::vector<bool> right = parametric_minimizer(pc, alpha_hi);
  std::vector<std::pair<double, std::vector<bool>>> found;
  solve_interval(pc, alpha_lo, left, alpha_hi, right, found);
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return std::count(x.second.begin(), x.second.end(), true) >
           std::count(y.second.begin(), y.second.end(), true);
  });
  ParametricCut out;
  out.minimizers.push_back(left);
  for (auto& [alpha, set] : found) {
    out.breakpoints.push_back(alpha);
    out.minimizers.push_back(std::move(set));
  }
  return out;
}

}  // namespace sublap
