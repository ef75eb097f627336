#include "ifskit/cloud.hpp"

#include <algorithm>
#include <cmath>

#include "ifskit/errors.hpp"

namespace ifskit {

PointCloud::PointCloud(int dim, std::vector<std::array<double, 2>> points, double resolution,
                       Provenance provenance)
    : dim_(dim), points_(std::move(points)), resolution_(resolution), provenance_(provenance) {
  if (dim_ != 1 && dim_ != 2) throw InputError("cloud dimension must be 1 or 2");
  if (points_.empty()) throw InputError("cloud must be nonempty");
  if (std::isnan(resolution_) || resolution_ < 0.0)
    throw InputError("cloud resolution must be >= 0");
  for (auto& p : points_) {
    if (dim_ == 1) p[1] = 0.0;
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw InputError("cloud points must be finite");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  bbox_min_ = bbox_max_ = points_.front();
  for (const auto& p : points_) {
    bbox_min_[0] = std::min(bbox_min_[0], p[0]);
    bbox_min_[1] = std::min(bbox_min_[1], p[1]);
    bbox_max_[0] = std::max(bbox_max_[0], p[0]);
    bbox_max_[1] = std::max(bbox_max_[1], p[1]);
  }
}

PointCloud PointCloud::from_points(const std::vector<Point>& points, double resolution,
                                   Provenance provenance) {
  if (points.empty()) throw InputError("cloud must be nonempty");
  const int dim = points.front().dim();
  std::vector<std::array<double, 2>> raw;
  raw.reserve(points.size());
  for (const auto& p : points) {
    if (p.dim() != dim) throw InputError("cloud points must share one dimension");
    raw.push_back(p.coords());
  }
  return PointCloud(dim, std::move(raw), resolution, provenance);
}

double PointCloud::bbox_diagonal() const {
  const double dx = bbox_max_[0] - bbox_min_[0];
  const double dy = bbox_max_[1] - bbox_min_[1];
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace ifskit
