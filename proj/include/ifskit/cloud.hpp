#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "ifskit/geometry.hpp"

namespace ifskit {

enum class Provenance { deterministic, chaos, external };

// A finite point set approximating a compact subset of R^d. Points are kept
// lexicographically sorted with exact duplicates removed, which makes
// iteration order, CSV output and witness tie-breaking deterministic.
//
// `resolution` is the guaranteed Hausdorff distance to the set being
// approximated: 0 means exact, +inf means "a sample, no covering guarantee"
// (chaos game output).
class PointCloud {
 public:
  PointCloud(int dim, std::vector<std::array<double, 2>> points, double resolution,
             Provenance provenance);

  static PointCloud from_points(const std::vector<Point>& points, double resolution,
                                Provenance provenance);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::array<double, 2>>& raw() const { return points_; }
  Point point(std::size_t i) const { return Point::of(dim_, points_[i]); }

  double resolution() const { return resolution_; }
  Provenance provenance() const { return provenance_; }

  std::array<double, 2> bbox_min() const { return bbox_min_; }
  std::array<double, 2> bbox_max() const { return bbox_max_; }
  // Diagonal of the bounding box (exact diameter in 1-D, an upper bound
  // within sqrt(2) in 2-D).
  double bbox_diagonal() const;

  friend bool operator==(const PointCloud& a, const PointCloud& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  int dim_;
  std::vector<std::array<double, 2>> points_;
  double resolution_;
  Provenance provenance_;
  std::array<double, 2> bbox_min_{0.0, 0.0};
  std::array<double, 2> bbox_max_{0.0, 0.0};
};

inline constexpr double kUnknownResolution = std::numeric_limits<double>::infinity();

}  // namespace ifskit
