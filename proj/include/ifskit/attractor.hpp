#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ifskit/cloud.hpp"
#include "ifskit/family.hpp"

namespace ifskit {

inline constexpr std::size_t kDefaultPointBudget = 10'000'000;

struct IterationReport {
  int iterations = 0;
  double final_step_distance = 0.0;  // h(C_{n-1}, C_n)
  double guaranteed_error = 0.0;     // certified h(cloud, A); <= requested eps
  std::size_t points_kept = 0;
  std::vector<double> step_distances;  // full h(C_{k-1}, C_k) sequence
  double snap_grid = 0.0;              // 0 while iteration stayed exact
};

// One application of the set operator F(C) = union of f_i(C). A positive
// `grid` snaps the image to a cubic lattice of that spacing before
// deduplication; the output resolution is r_max * resolution(C) +
// grid * sqrt(d) / 2.
PointCloud iterate_once(const IFSInstance& ifs, const PointCloud& cloud, double grid);

// eps-accurate attractor cloud by fixed-point iteration of F seeded with the
// maps' fixed points (which lie on the attractor, so endpoint values are
// exact). Stops at the first n with r_max^n / (1 - r_max) * h(C0, C1) <=
// eps / 2. Iterates exactly while the cloud fits the point budget; grid
// snapping engages as a fallback with the remaining eps / 2 as snap budget.
// ResourceError when even the snapped iteration would exceed the budget,
// reporting the achievable eps.
std::pair<PointCloud, IterationReport> attractor(const IFSInstance& ifs, double eps,
                                                 std::size_t point_budget = kDefaultPointBudget);

// Stochastic sampler: starting from the fixed point of the first map, apply
// uniformly random maps, discard the first `burn_in` points and keep `count`.
// Deterministic for a fixed seed. The output is a sample of the attractor,
// not a covering, so its resolution is reported as +inf.
PointCloud chaos_game(const IFSInstance& ifs, std::size_t count, std::size_t burn_in,
                      std::uint64_t seed);

// h(F(C), C): how far C is from being invariant. For an attractor(ifs, eps)
// cloud this is at most (1 + r_max) * eps.
double self_similarity_residual(const IFSInstance& ifs, const PointCloud& cloud);

}  // namespace ifskit
