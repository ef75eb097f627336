#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "ifskit/errors.hpp"

namespace ifskit {

// A point of R^d with d in {1, 2}. Coordinates must be finite. The second
// coordinate of a 1-D point is pinned to 0 so that exact comparisons and
// lexicographic ordering work uniformly on the backing array.
class Point {
 public:
  Point() = default;

  static Point d1(double x) { return Point(1, {x, 0.0}); }
  static Point d2(double x, double y) { return Point(2, {x, y}); }
  static Point of(int dim, const std::array<double, 2>& c) { return Point(dim, c); }

  int dim() const { return dim_; }
  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::array<double, 2>& coords() const { return c_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }
  // Lexicographic; used for deterministic witness tie-breaking.
  friend bool operator<(const Point& a, const Point& b) { return a.c_ < b.c_; }

 private:
  Point(int dim, const std::array<double, 2>& c) : dim_(dim), c_(c) {
    if (dim < 1 || dim > 2) throw InputError("point dimension must be 1 or 2");
    for (int i = 0; i < dim; ++i)
      if (!std::isfinite(c_[static_cast<std::size_t>(i)]))
        throw InputError("point coordinates must be finite");
    if (dim == 1) c_[1] = 0.0;
  }

  int dim_ = 1;
  std::array<double, 2> c_{0.0, 0.0};
};

// Squared Euclidean distance. Every distance comparison in the library goes
// through this one expression so that the brute-force and accelerated
// Hausdorff paths are bit-identical.
inline double dist_sq(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

inline double dist_sq(const Point& a, const Point& b) { return dist_sq(a.coords(), b.coords()); }

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist_sq(a, b)); }

struct Ball {
  Point center;
  double radius = 0.0;
};

// An affine map x -> linear*x + translation. The linear part is a d x d
// matrix stored in a fixed 2x2 array (only [0][0] is used for d = 1).
// No contraction requirement at construction; maps used inside an IFS are
// checked by fixed_point/instantiate.
class AffineMap {
 public:
  AffineMap(int dim, const std::array<std::array<double, 2>, 2>& linear, Point translation);

  int dim() const { return dim_; }
  const std::array<std::array<double, 2>, 2>& linear() const { return linear_; }
  const Point& translation() const { return translation_; }

 private:
  int dim_;
  std::array<std::array<double, 2>, 2> linear_;
  Point translation_;
};

// A contractive similarity in decomposed form. The linear part is
// scale * R(rotation) * F where F flips the y axis when reflect is set
// (in 1-D, reflect negates x and rotation must be 0). Enforces
// 0 < scale < 1.
class SimilarityMap {
 public:
  SimilarityMap(int dim, double scale, double rotation, bool reflect, Point translation);

  static SimilarityMap line(double scale, double translation, bool reflect = false) {
    return SimilarityMap(1, scale, 0.0, reflect, Point::d1(translation));
  }
  static SimilarityMap plane(double scale, double rotation, double tx, double ty,
                             bool reflect = false) {
    return SimilarityMap(2, scale, rotation, reflect, Point::d2(tx, ty));
  }

  int dim() const { return dim_; }
  double scale() const { return scale_; }
  double rotation() const { return rotation_; }
  bool reflect() const { return reflect_; }
  const Point& translation() const { return translation_; }

  AffineMap to_affine() const;

  friend bool operator==(const SimilarityMap& a, const SimilarityMap& b) {
    return a.dim_ == b.dim_ && a.scale_ == b.scale_ && a.rotation_ == b.rotation_ &&
           a.reflect_ == b.reflect_ && a.translation_ == b.translation_;
  }

 private:
  int dim_;
  double scale_;
  double rotation_;
  bool reflect_;
  Point translation_;
};

Point apply(const AffineMap& map, const Point& x);
Point apply(const SimilarityMap& map, const Point& x);

// In-place application on a raw coordinate pair; hot path for set iteration.
std::array<double, 2> apply_raw(const SimilarityMap& map, const std::array<double, 2>& x);

// Unique fixed point of a contractive affine map, solved in closed form from
// (I - linear) x = translation. DomainError if the map is not a contraction.
Point fixed_point(const AffineMap& map);
Point fixed_point(const SimilarityMap& map);

// Operator norm of the linear part (largest singular value, closed form for
// 2x2). For a SimilarityMap this is exactly the scale field.
double contraction_ratio(const AffineMap& map);
inline double contraction_ratio(const SimilarityMap& map) { return map.scale(); }

struct SimilarityCheck {
  bool ok = false;
  double mean_ratio = 0.0;
};

// Empirical similarity test on deterministic pseudo-random point pairs:
// true iff |dist(f x, f y) - r dist(x, y)| <= tol * dist(x, y) for every
// pair, where r is the operator norm of the linear part. Also reports the
// mean measured ratio.
SimilarityCheck verify_similarity(const AffineMap& map, int samples, double tol);

// Exact image of a ball under a similarity: (f(center), scale * radius).
Ball map_ball(const SimilarityMap& map, const Ball& ball);
// Affine overload verifies the similarity property first; DomainError if the
// map is not a similarity.
Ball map_ball(const AffineMap& map, const Ball& ball);

}  // namespace ifskit
