#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cstar/model.hpp"

namespace cstar {

inline constexpr double kClosureTol = 1e-12;

/// Time-parametrized sequence of control points t -> x(t).
class ParamPath {
 public:
  ParamPath() = default;
  /// Validates: at least 2 samples, strictly increasing times, every point
  /// valid. `closed` is derived from endpoint agreement.
  ParamPath(std::vector<double> times, std::vector<ParamPoint> points, std::string descriptor = {});

  std::size_t size() const { return points_.size(); }
  std::size_t segments() const { return points_.size() - 1; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<ParamPoint>& points() const { return points_; }
  const ParamPoint& point(std::size_t k) const { return points_[k]; }
  double time(std::size_t k) const { return times_[k]; }
  const ParamPoint& front() const { return points_.front(); }
  const ParamPoint& back() const { return points_.back(); }
  bool closed() const { return closed_; }
  const std::string& descriptor() const { return descriptor_; }

  /// First k+1 samples (k >= 1).
  ParamPath prefix(std::size_t last) const;

 private:
  std::vector<double> times_;
  std::vector<ParamPoint> points_;
  bool closed_ = false;
  std::string descriptor_;
};

bool points_agree(const ParamPoint& a, const ParamPoint& b, double tol = kClosureTol);

}  // namespace cstar
