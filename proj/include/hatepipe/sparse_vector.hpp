#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hatepipe {

// Sorted (index, weight) pairs with strictly increasing indices below
// dimension() and no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}

  // Sorts, sums duplicate indices and drops zeros. Throws std::out_of_range
  // for an index >= dimension.
  static SparseVector from_entries(std::vector<Entry> entries, std::size_t dimension);
  static SparseVector from_dense(std::span<const double> values);

  std::size_t dimension() const { return dimension_; }
  std::size_t nonzeros() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  double get(std::size_t index) const;
  double dot(std::span<const double> dense) const;
  double squared_norm() const;
  std::vector<double> to_dense() const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
  std::size_t dimension_ = 0;
};

}  // namespace hatepipe
