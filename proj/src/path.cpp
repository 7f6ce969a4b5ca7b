#include "cstar/path.hpp"

#include <cmath>
#include <stdexcept>

namespace cstar {

bool points_agree(const ParamPoint& a, const ParamPoint& b, double tol) {
  return std::abs(a.B1 - b.B1) <= tol && std::abs(a.B2 - b.B2) <= tol && std::abs(a.B3 - b.B3) <= tol &&
         std::abs(a.alpha - b.alpha) <= tol;
}

ParamPath::ParamPath(std::vector<double> times, std::vector<ParamPoint> points, std::string descriptor)
    : times_(std::move(times)), points_(std::move(points)), descriptor_(std::move(descriptor)) {
  if (times_.size() != points_.size()) throw std::invalid_argument("ParamPath: times/points size mismatch");
  if (points_.size() < 2) throw std::invalid_argument("ParamPath: need at least 2 samples");
  for (std::size_t k = 1; k < times_.size(); ++k)
    if (!(times_[k] > times_[k - 1])) throw std::invalid_argument("ParamPath: times must be strictly increasing");
  for (const auto& p : points_) validate(p);
  closed_ = points_agree(points_.front(), points_.back());
}

ParamPath ParamPath::prefix(std::size_t last) const {
  if (last < 1 || last >= size()) throw std::out_of_range("ParamPath::prefix: index out of range");
  return ParamPath({times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(last) + 1},
                   {points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(last) + 1}, descriptor_);
}

}  // namespace cstar
