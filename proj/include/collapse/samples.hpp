#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace collapse {

/// Fixed-dimension points stored row-major.
class SampleSet {
 public:
  explicit SampleSet(std::size_t dim);
  SampleSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const noexcept { return coords_; }

  void push_back(std::span<const double> point);
  void append(const SampleSet& other);
  /// Rows [first, last).
  SampleSet slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

}  // namespace collapse
