#include <algorithm>
#include <cmath>

#include "descent.h"

namespace sublap::detail {

double objective(const DescentProblem& p, std::span<const double> x) {
  double energy = 0.0;
  for (const auto& fe : p.f.edges()) {
    const double v = fe.lovasz(x);
    energy += v * v;
  }
  double lin = 0.0;
  for (int v = 0; v < p.f.n(); ++v) {
    if (p.is_free(v)) lin += p.b[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)];
  }
  return 0.5 * energy - lin;
}

namespace {

struct Piece {
  double p = 0.0;  // derivative at the reference point m
  double c = 0.0;  // curvature
  double m = 0.0;
};

Piece piece_at(const DescentProblem& p, std::span<const double> x, std::span<const double> d,
               double lin, double m, Vector& scratch) {
  for (std::size_t v = 0; v < x.size(); ++v) scratch[v] = x[v] + m * d[v];
  Piece out;
  out.m = m;
  for (const auto& fe : p.f.edges()) {
    if (fe.weight() == 0.0) continue;
    const double val = fe.lovasz(scratch);
    const double slope = lovasz_directional(fe, scratch, d);
    out.p += val * slope;
    out.c += slope * slope;
  }
  out.p -= lin;
  return out;
}

}  // namespace

LineSearchResult exact_line_search(const DescentProblem& p, std::span<const double> x,
                                   std::span<const double> d) {
  std::vector<double> ts;
  for (const auto& fe : p.f.edges()) {
    if (fe.weight() == 0.0) continue;
    const auto& sup = fe.support();
    for (std::size_t i = 0; i < sup.size(); ++i) {
      for (std::size_t j = i + 1; j < sup.size(); ++j) {
        const auto u = static_cast<std::size_t>(sup[i]);
        const auto v = static_cast<std::size_t>(sup[j]);
        const double dd = d[u] - d[v];
        if (dd == 0.0) continue;
        const double t = (x[v] - x[u]) / dd;
        if (t > 0.0 && std::isfinite(t)) ts.push_back(t);
      }
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  double lin = 0.0;
  for (int v = 0; v < p.f.n(); ++v) {
    if (p.is_free(v)) lin += p.b[static_cast<std::size_t>(v)] * d[static_cast<std::size_t>(v)];
  }
  Vector scratch(x.size());
  // Interval i spans [lo(i), hi(i)] with lo(0) = 0 and hi(last) = infinity.
  const std::size_t count = ts.size() + 1;
  auto lo = [&](std::size_t i) { return i == 0 ? 0.0 : ts[i - 1]; };
  auto hi = [&](std::size_t i) {
    return i < ts.size() ? ts[i] : std::numeric_limits<double>::infinity();
  };
  auto piece = [&](std::size_t i) {
    const double a = lo(i);
    const double m = i < ts.size() ? 0.5 * (a + hi(i)) : a + std::max(1.0, a);
    return piece_at(p, x, d, lin, m, scratch);
  };
  auto end_derivative = [&](std::size_t i, const Piece& pc) {
    if (i + 1 == count) {
      return pc.c > 0.0 ? std::numeric_limits<double>::infinity() : pc.p;
    }
    return pc.p + (hi(i) - pc.m) * pc.c;
  };

  LineSearchResult out;
  std::size_t left = 0, right = count - 1;
  const Piece last = piece(right);
  if (end_derivative(right, last) < 0.0) {
    out.unbounded = true;
    out.t = lo(right) + 1e6 * (1.0 + lo(right));
  } else {
    while (left < right) {
      const std::size_t mid = (left + right) / 2;
      if (end_derivative(mid, piece(mid)) >= 0.0) {
        right = mid;
      } else {
        left = mid + 1;
      }
    }
    const Piece pc = piece(left);
    double t = lo(left);
    if (pc.c > 0.0) t = std::clamp(pc.m - pc.p / pc.c, lo(left), hi(left));
    out.t = t;
  }
  for (std::size_t v = 0; v < x.size(); ++v) scratch[v] = x[v] + out.t * d[v];
  out.value = objective(p, scratch);
  return out;
}

}  // namespace sublap::detail
