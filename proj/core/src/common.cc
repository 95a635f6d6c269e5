#include "sublap/common.h"

#include <algorithm>
#include <cmath>

namespace sublap {

VertexSet::VertexSet(int n, std::initializer_list<int> members) : VertexSet(n) {
  for (int v : members) {
    if (v < 0 || v >= n) throw ValidationError("vertex index out of range");
    insert(v);
  }
}

VertexSet VertexSet::from_members(int n, std::span<const int> members) {
  VertexSet s(n);
  for (int v : members) {
    if (v < 0 || v >= n) throw ValidationError("vertex index out of range");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::from_mask(int n, std::uint64_t mask) {
  VertexSet s(n);
  for (int v = 0; v < n && v < 64; ++v) {
    if ((mask >> v) & 1U) s.insert(v);
  }
  return s;
}

VertexSet VertexSet::full(int n) {
  VertexSet s(n);
  std::fill(s.bits_.begin(), s.bits_.end(), true);
  return s;
}

int VertexSet::size() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (int v = 0; v < universe(); ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

std::uint64_t VertexSet::mask() const {
  std::uint64_t m = 0;
  for (int v = 0; v < universe() && v < 64; ++v) {
    if (contains(v)) m |= std::uint64_t{1} << v;
  }
  return m;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (int v = 0; v < universe(); ++v) {
    if (contains(v) && !other.contains(v)) return false;
  }
  return true;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out = *this;
  for (int v = 0; v < universe(); ++v) {
    if (other.contains(v)) out.insert(v);
  }
  return out;
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
  VertexSet out(universe());
  for (int v = 0; v < universe(); ++v) {
    if (contains(v) && other.contains(v)) out.insert(v);
  }
  return out;
}

double VertexSet::sum(std::span<const double> x) const {
  double s = 0.0;
  for (int v = 0; v < universe(); ++v) {
    if (contains(v)) s += x[static_cast<std::size_t>(v)];
  }
  return s;
}

std::string to_string(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.members()) {
    if (!first) out += ", ";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2_squared(std::span<const double> a) { return dot(a, a); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double norm1(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m += std::abs(v);
  return m;
}

}  // namespace sublap
