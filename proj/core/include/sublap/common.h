#ifndef SUBLAP_COMMON_H_
#define SUBLAP_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublap {

using Vector = std::vector<double>;

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, violated function invariants, size mismatch.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration or exhaustive routine would exceed its configured limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// A problem that has no solution (e.g. no feasible flow for a boundary).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Subset of the ground set {0, ..., n-1}.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int n) : bits_(static_cast<std::size_t>(n), false) {}
  VertexSet(int n, std::initializer_list<int> members);

  static VertexSet from_members(int n, std::span<const int> members);
  static VertexSet from_mask(int n, std::uint64_t mask);
  static VertexSet full(int n);

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(int v) const { return bits_[static_cast<std::size_t>(v)]; }
  void insert(int v) { bits_[static_cast<std::size_t>(v)] = true; }
  void erase(int v) { bits_[static_cast<std::size_t>(v)] = false; }
  int size() const;
  bool empty() const { return size() == 0; }

  std::vector<int> members() const;
  std::uint64_t mask() const;  // requires universe() <= 64

  bool is_subset_of(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;
  VertexSet intersected(const VertexSet& other) const;

  // x(S) for a vector over the ground set.
  double sum(std::span<const double> x) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<bool> bits_;
};

// "{0, 3, 4}"
std::string to_string(const VertexSet& s);

double dot(std::span<const double> a, std::span<const double> b);
double norm2_squared(std::span<const double> a);
double norm_inf(std::span<const double> a);
double norm1(std::span<const double> a);

}  // namespace sublap

#endif  // SUBLAP_COMMON_H_
