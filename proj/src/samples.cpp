#include "collapse/samples.hpp"

#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

SampleSet::SampleSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(Errc::invalid_argument, "sample dimension must be >= 1");
}

SampleSet::SampleSet(std::size_t dim, std::vector<double> coords) : SampleSet(dim) {
  if (coords.size() % dim != 0) {
    std::ostringstream os;
    os << coords.size() << " coordinates do not form rows of dimension " << dim;
    throw Error(Errc::dimension_mismatch, os.str());
  }
  coords_ = std::move(coords);
}

void SampleSet::push_back(std::span<const double> point) {
  if (point.size() != dim_) {
    std::ostringstream os;
    os << "point of dimension " << point.size() << " added to a set of dimension " << dim_;
    throw Error(Errc::dimension_mismatch, os.str());
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

void SampleSet::append(const SampleSet& other) {
  if (other.dim_ != dim_) throw Error(Errc::dimension_mismatch, "appending samples of a different dimension");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
}

SampleSet SampleSet::slice(std::size_t first, std::size_t last) const {
  if (first > last || last > size()) throw Error(Errc::invalid_argument, "sample slice out of range");
  return SampleSet(dim_, std::vector<double>(coords_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                                             coords_.begin() + static_cast<std::ptrdiff_t>(last * dim_)));
}

}  // namespace collapse
