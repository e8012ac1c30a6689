#include "hatepipe/sparse_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace hatepipe {

SparseVector SparseVector::from_entries(std::vector<Entry> entries, std::size_t dimension) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector out(dimension);
  out.entries_.reserve(entries.size());
  for (const auto& [index, weight] : entries) {
    if (index >= dimension) throw std::out_of_range("sparse index beyond dimension");
    if (!out.entries_.empty() && out.entries_.back().first == index) {
      out.entries_.back().second += weight;
    } else {
      out.entries_.emplace_back(index, weight);
    }
  }
  std::erase_if(out.entries_, [](const Entry& e) { return e.second == 0.0; });
  return out;
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  SparseVector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) out.entries_.emplace_back(static_cast<std::uint32_t>(i), values[i]);
  }
  return out;
}

double SparseVector::get(std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  return (it != entries_.end() && it->first == index) ? it->second : 0.0;
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& [index, weight] : entries_) sum += weight * dense[index];
  return sum;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.second * e.second;
  return sum;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (const auto& [index, weight] : entries_) out[index] = weight;
  return out;
}

}  // namespace hatepipe
