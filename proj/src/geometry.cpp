#include "ifskit/geometry.hpp"

#include <algorithm>
#include <random>

namespace ifskit {

AffineMap::AffineMap(int dim, const std::array<std::array<double, 2>, 2>& linear,
                     Point translation)
    : dim_(dim), linear_(linear), translation_(translation) {
  if (dim != 1 && dim != 2) throw InputError("affine map dimension must be 1 or 2");
  if (translation.dim() != dim) throw InputError("affine map translation dimension mismatch");
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (!std::isfinite(linear_[r][c])) throw InputError("affine map entries must be finite");
  if (dim == 1) {
    linear_[0][1] = linear_[1][0] = 0.0;
    linear_[1][1] = 0.0;
  }
}

SimilarityMap::SimilarityMap(int dim, double scale, double rotation, bool reflect,
                             Point translation)
    : dim_(dim), scale_(scale), rotation_(rotation), reflect_(reflect),
      translation_(translation) {
  if (dim != 1 && dim != 2) throw InputError("similarity dimension must be 1 or 2");
  if (translation.dim() != dim) throw InputError("similarity translation dimension mismatch");
  if (!std::isfinite(scale) || scale <= 0.0 || scale >= 1.0)
    throw DomainError("similarity scale must lie in (0,1)");
  if (dim == 1 && rotation != 0.0) throw InputError("1-D similarity has no rotation");
  if (!std::isfinite(rotation)) throw InputError("rotation must be finite");
}

AffineMap SimilarityMap::to_affine() const {
  std::array<std::array<double, 2>, 2> m{{{0.0, 0.0}, {0.0, 0.0}}};
  if (dim_ == 1) {
    m[0][0] = reflect_ ? -scale_ : scale_;
  } else {
    const double c = std::cos(rotation_);
    const double s = std::sin(rotation_);
    const double fy = reflect_ ? -1.0 : 1.0;
    m[0][0] = scale_ * c;
    m[0][1] = scale_ * (-s) * fy;
    m[1][0] = scale_ * s;
    m[1][1] = scale_ * c * fy;
  }
  return AffineMap(dim_, m, translation_);
}

Point apply(const AffineMap& map, const Point& x) {
  if (map.dim() != x.dim()) throw InputError("apply: dimension mismatch");
  const auto& m = map.linear();
  const auto& t = map.translation();
  if (map.dim() == 1) return Point::d1(m[0][0] * x.x() + t.x());
  return Point::d2(m[0][0] * x.x() + m[0][1] * x.y() + t.x(),
                   m[1][0] * x.x() + m[1][1] * x.y() + t.y());
}

std::array<double, 2> apply_raw(const SimilarityMap& map, const std::array<double, 2>& x) {
  const auto& t = map.translation();
  if (map.dim() == 1) {
    const double s = map.reflect() ? -map.scale() : map.scale();
    return {s * x[0] + t.x(), 0.0};
  }
  const double c = std::cos(map.rotation());
  const double s = std::sin(map.rotation());
  const double yy = map.reflect() ? -x[1] : x[1];
  return {map.scale() * (c * x[0] - s * yy) + t.x(),
          map.scale() * (s * x[0] + c * yy) + t.y()};
}

Point apply(const SimilarityMap& map, const Point& x) {
  if (map.dim() != x.dim()) throw InputError("apply: dimension mismatch");
  return Point::of(map.dim(), apply_raw(map, x.coords()));
}

Point fixed_point(const AffineMap& map) {
  if (contraction_ratio(map) >= 1.0)
    throw DomainError("fixed_point: map is not a contraction");
  const auto& m = map.linear();
  const auto& t = map.translation();
  if (map.dim() == 1) return Point::d1(t.x() / (1.0 - m[0][0]));
  // Solve (I - L) x = t by Cramer's rule; the contraction bound keeps the
  // determinant away from zero.
  const double a = 1.0 - m[0][0], b = -m[0][1];
  const double c = -m[1][0], d = 1.0 - m[1][1];
  const double det = a * d - b * c;
  return Point::d2((t.x() * d - b * t.y()) / det, (a * t.y() - t.x() * c) / det);
}

Point fixed_point(const SimilarityMap& map) { return fixed_point(map.to_affine()); }

double contraction_ratio(const AffineMap& map) {
  const auto& m = map.linear();
  if (map.dim() == 1) return std::abs(m[0][0]);
  // Largest singular value of a 2x2 matrix in closed form: sigma_max^2 is the
  // larger eigenvalue of L^T L.
  const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  const double e = 0.5 * (a * a + b * b + c * c + d * d);
  const double det = a * d - b * c;
  const double disc = std::max(e * e - det * det, 0.0);
  return std::sqrt(e + std::sqrt(disc));
}

SimilarityCheck verify_similarity(const AffineMap& map, int samples, double tol) {
  if (samples < 2) throw InputError("verify_similarity: samples must be >= 2");
  if (!(tol > 0.0)) throw InputError("verify_similarity: tol must be positive");
  const double r = contraction_ratio(map);
  std::mt19937_64 gen(0x1f5a3u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&] {
    return map.dim() == 1 ? Point::d1(unit(gen)) : Point::d2(unit(gen), unit(gen));
  };
  double ratio_sum = 0.0;
  int kept = 0;
  bool ok = true;
  for (int i = 0; i < samples; ++i) {
    const Point x = draw();
    const Point y = draw();
    const double dxy = dist(x, y);
    if (dxy == 0.0) continue;
    const double dfxy = dist(apply(map, x), apply(map, y));
    ratio_sum += dfxy / dxy;
    ++kept;
    if (std::abs(dfxy - r * dxy) > tol * dxy) ok = false;
  }
  return {ok, kept > 0 ? ratio_sum / kept : r};
}

Ball map_ball(const SimilarityMap& map, const Ball& ball) {
  if (!(ball.radius > 0.0)) throw InputError("map_ball: radius must be positive");
  return {apply(map, ball.center), map.scale() * ball.radius};
}

Ball map_ball(const AffineMap& map, const Ball& ball) {
  if (!(ball.radius > 0.0)) throw InputError("map_ball: radius must be positive");
  const auto check = verify_similarity(map, 64, 1e-9);
  if (!check.ok) throw DomainError("map_ball: map is not a similarity; ball image is not a ball");
  return {apply(map, ball.center), contraction_ratio(map) * ball.radius};
}

}  // namespace ifskit
