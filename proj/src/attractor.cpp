#include "ifskit/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ifskit/errors.hpp"
#include "ifskit/metric.hpp"

namespace ifskit {

namespace {

double snap_coord(double x, double grid) { return std::round(x / grid) * grid; }

std::vector<std::array<double, 2>> image_points(const IFSInstance& ifs,
                                                const std::vector<std::array<double, 2>>& pts,
                                                double grid) {
  std::vector<std::array<double, 2>> out;
  out.reserve(pts.size() * ifs.maps.size());
  for (const auto& m : ifs.maps) {
    for (const auto& p : pts) {
      auto q = apply_raw(m, p);
      if (grid > 0.0) {
        q[0] = snap_coord(q[0], grid);
        if (ifs.dim == 2) q[1] = snap_coord(q[1], grid);
      }
      out.push_back(q);
    }
  }
  return out;
}

std::vector<std::array<double, 2>> map_fixed_points(const IFSInstance& ifs) {
  std::vector<std::array<double, 2>> fps;
  fps.reserve(ifs.maps.size());
  for (const auto& m : ifs.maps) fps.push_back(fixed_point(m).coords());
  return fps;
}

}  // namespace

PointCloud iterate_once(const IFSInstance& ifs, const PointCloud& cloud, double grid) {
  if (cloud.dim() != ifs.dim) throw InputError("iterate_once: dimension mismatch");
  if (!(grid >= 0.0)) throw InputError("iterate_once: grid must be >= 0");
  if (ifs.maps.empty()) throw InputError("iterate_once: empty map list");
  const double r = ifs.max_ratio();
  const double snap_err = grid * std::sqrt(static_cast<double>(ifs.dim)) / 2.0;
  return PointCloud(ifs.dim, image_points(ifs, cloud.raw(), grid),
                    r * cloud.resolution() + snap_err, Provenance::deterministic);
}

std::pair<PointCloud, IterationReport> attractor(const IFSInstance& ifs, double eps,
                                                 std::size_t point_budget) {
  if (!(eps > 0.0)) throw InputError("attractor: eps must be positive");
  if (ifs.maps.empty()) throw InputError("attractor: empty map list");
  const double r = ifs.max_ratio();
  const double sqrt_d = std::sqrt(static_cast<double>(ifs.dim));

  // Seed with every map's fixed point: each lies on the attractor, so the
  // seeds (re-unioned after every step) stay exact in the output.
  const auto fps = map_fixed_points(ifs);
  PointCloud current(ifs.dim, fps, 0.0, Provenance::deterministic);

  auto step = [&](const PointCloud& c, double grid) {
    auto pts = image_points(ifs, c.raw(), grid);
    pts.insert(pts.end(), fps.begin(), fps.end());
    return PointCloud(ifs.dim, std::move(pts), 0.0, Provenance::deterministic);
  };

  PointCloud next = step(current, 0.0);
  const double h0 = hausdorff_accelerated(current, next).distance;

  IterationReport report;
  report.iterations = 1;
  report.step_distances.push_back(h0);
  report.final_step_distance = h0;

  double grid = 0.0;
  double snap_accum = 0.0;
  // A-priori Banach bound after n steps: r^n / (1 - r) * h(C0, C1).
  double bound = r / (1.0 - r) * h0;
  current = std::move(next);

  while (bound > eps / 2.0 && report.final_step_distance > 0.0) {
    // Budget probe: the raw image has |maps| * |C| points before dedup.
    if (grid == 0.0 && current.size() > point_budget / ifs.maps.size()) {
      grid = std::min(eps / 4.0, eps * (1.0 - r) / (2.0 * sqrt_d));
    }
    PointCloud candidate = step(current, grid);
    if (candidate.size() > point_budget) {
      if (grid == 0.0) {
        grid = std::min(eps / 4.0, eps * (1.0 - r) / (2.0 * sqrt_d));
        candidate = step(current, grid);
      }
      if (candidate.size() > point_budget) {
        const double achievable = 2.0 * (bound + snap_accum);
        std::ostringstream msg;
        msg << "attractor: point budget " << point_budget << " exceeded at iteration "
            << report.iterations + 1 << "; achievable eps with this budget is about "
            << achievable;
        throw ResourceError(msg.str());
      }
    }
    if (grid > 0.0) snap_accum = r * snap_accum + grid * sqrt_d / 2.0;
    const double h = hausdorff_accelerated(current, candidate).distance;
    current = std::move(candidate);
    ++report.iterations;
    report.step_distances.push_back(h);
    report.final_step_distance = h;
    bound *= r;
  }

  if (report.final_step_distance == 0.0) bound = 0.0;
  report.guaranteed_error = bound + snap_accum;
  report.snap_grid = grid;
  report.points_kept = current.size();

  PointCloud cloud(ifs.dim, current.raw(), report.guaranteed_error, Provenance::deterministic);
  return {std::move(cloud), std::move(report)};
}

PointCloud chaos_game(const IFSInstance& ifs, std::size_t count, std::size_t burn_in,
                      std::uint64_t seed) {
  if (count < 1) throw InputError("chaos_game: count must be >= 1");
  if (ifs.maps.empty()) throw InputError("chaos_game: empty map list");
  std::mt19937_64 gen(seed);
  const std::size_t n = ifs.maps.size();
  std::array<double, 2> x = fixed_point(ifs.maps[0]).coords();
  std::vector<std::array<double, 2>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < burn_in + count; ++i) {
    if (i >= burn_in) pts.push_back(x);
    // gen() % n instead of uniform_int_distribution: the latter is
    // implementation-defined, and sampling density is irrelevant here.
    x = apply_raw(ifs.maps[gen() % n], x);
  }
  return PointCloud(ifs.dim, std::move(pts), kUnknownResolution, Provenance::chaos);
}

double self_similarity_residual(const IFSInstance& ifs, const PointCloud& cloud) {
  const PointCloud image = iterate_once(ifs, cloud, 0.0);
  return hausdorff_accelerated(image, cloud).distance;
}

}  // namespace ifskit
