#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ifskit/cloud.hpp"
#include "ifskit/family.hpp"

namespace ifskit {

struct MoranSolution {
  double s = 0.0;        // the dimension value
  double residual = 0.0; // moran_sum(r, s) - 1
  std::vector<double> sensitivity;  // ds/dr_i
};

// g(r, s) = sum_i r_i^s. InputError on empty r, DomainError when some ratio
// leaves (0,1).
double moran_sum(const std::vector<double>& ratios, double s);

// Unique root of moran_sum(r, s) = 1: 60 bisection steps on the bracket
// [0, log n / log(1/r_max)] followed by up to 8 Newton polish steps (steps
// leaving the bracket are rejected). g is strictly decreasing in s, so the
// root is unique; n = 1 yields s = 0 exactly.
MoranSolution moran_dimension(const std::vector<double>& ratios, double tol = 1e-12);

// Implicit-function derivative ds/dr_i = -(s r_i^{s-1}) / (sum_k log(r_k)
// r_k^s). DomainError when s is not a Moran root of r (checked to 1e-9).
std::vector<double> moran_sensitivity(const std::vector<double>& ratios, double s);

// Open-set-condition witnesses. A similarity maps a ball to a ball exactly;
// rotation-free similarities also map axis-aligned boxes to axis-aligned
// boxes exactly, which is what makes three-map systems like the Sierpinski
// gasket certifiable (no ball can witness three ratio-1/2 maps).
struct BallWitness {
  Point center;
  double radius = 0.0;
};
struct BoxWitness {
  Point lo;
  Point hi;
};
using OscWitness = std::variant<BallWitness, BoxWitness>;

struct OscPairCheck {
  std::size_t i = 0, j = 0;
  bool disjoint = false;
  double margin = 0.0;  // >= 0 iff disjoint; distance beyond touching
};

struct OscReport {
  bool verified = false;            // witness proves the OSC
  std::vector<bool> contained;      // f_i(U) inside U, per map
  std::vector<double> containment_margin;
  std::vector<OscPairCheck> pairs;  // pairwise disjointness of the images
};

// Exact arithmetic check of f_i(U) subset of U and pairwise disjointness of
// the open images. A passing witness proves the OSC; a failing one proves
// nothing (the condition is existential). DomainError for box witnesses on
// maps with a rotation.
OscReport osc_check(const IFSInstance& ifs, const OscWitness& witness);

// Deterministic candidate search: balls around the fixed-point midpoints and
// centroid with a geometric radius ladder, then (for rotation-free systems)
// inflated fixed-point bounding boxes. Returns the first witness that
// verifies, or nothing. Absence of a witness is not a disproof.
std::optional<OscWitness> osc_search(const IFSInstance& ifs, int candidates = 64);

struct BoxCountReport {
  std::vector<double> scales;
  std::vector<std::size_t> counts;  // occupied cells N(delta), grid anchored at bbox min
  double slope = 0.0;               // OLS slope of log N against log(1/delta)
  double r_squared = 1.0;           // < 0.99 indicates a poor fit
};

// Box-counting dimension estimate. Scales must be strictly decreasing and
// all larger than twice the cloud resolution, so that counting the cloud
// counts the set it approximates.
BoxCountReport box_counting(const PointCloud& cloud, const std::vector<double>& scales);

// Geometric scale ladder delta_0 * ratio^k with delta_0 = diameter * ratio,
// truncated to scales above 2 * resolution; at most max_scales entries.
std::vector<double> default_scale_ladder(const PointCloud& cloud, double ratio,
                                         int max_scales = 8);

}  // namespace ifskit
