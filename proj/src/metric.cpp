#include "ifskit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ifskit/errors.hpp"

namespace ifskit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const PointCloud& a, const PointCloud& b) {
  if (a.dim() != b.dim()) throw InputError("hausdorff: clouds must share one dimension");
}

// Accumulator for max-over-a of min-over-b. Processing points of A in their
// sorted (lexicographic) order makes the "keep the first" tie rule equal to
// "keep the lexicographically smallest witness".
struct DirectedAccum {
  double max_sq = -1.0;
  std::size_t witness = 0;

  void offer(double min_sq, std::size_t index) {
    if (min_sq > max_sq) {
      max_sq = min_sq;
      witness = index;
    }
  }
};

DirectedResult brute_directed(const PointCloud& a, const PointCloud& b) {
  const auto& pa = a.raw();
  const auto& pb = b.raw();
  DirectedAccum acc;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const auto& q = pa[i];
    double best = kInf;
    for (const auto& p : pb) best = std::min(best, dist_sq(q, p));
    acc.offer(best, i);
  }
  return {std::sqrt(acc.max_sq), a.point(acc.witness)};
}

// Uniform bucket grid over one cloud, CSR layout. Cell size is a hint; it is
// coarsened when the raw grid would be disproportionate to the point count.
struct BucketGrid {
  const std::vector<std::array<double, 2>>* pts = nullptr;
  int dim = 1;
  double cell = 1.0;
  double slack = 0.0;  // absorbs floor/rounding drift so box bounds stay true lower bounds
  std::array<double, 2> lo{0.0, 0.0};
  std::int64_t nx = 1, ny = 1;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> order;

  BucketGrid(const PointCloud& cloud, double cell_hint) {
    pts = &cloud.raw();
    dim = cloud.dim();
    lo = cloud.bbox_min();
    const auto hi = cloud.bbox_max();
    const double ex = hi[0] - lo[0];
    const double ey = hi[1] - lo[1];
    cell = cell_hint;
    if (!(cell > 0.0)) cell = 1.0;
    const std::int64_t cap = 8 * static_cast<std::int64_t>(pts->size()) + 1024;
    for (;;) {
      nx = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ex / cell)));
      ny = dim == 2 ? std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ey / cell)))
                    : 1;
      if (nx > 0 && ny > 0 && nx * ny <= cap) break;
      cell *= 2.0;
    }
    slack = cell * 0x1p-30;

    const std::size_t ncells = static_cast<std::size_t>(nx * ny);
    offsets.assign(ncells + 1, 0);
    std::vector<std::uint32_t> cells(pts->size());
    for (std::size_t i = 0; i < pts->size(); ++i) {
      cells[i] = static_cast<std::uint32_t>(flat_index((*pts)[i]));
      ++offsets[cells[i] + 1];
    }
    for (std::size_t c = 1; c <= ncells; ++c) offsets[c] += offsets[c - 1];
    order.resize(pts->size());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < pts->size(); ++i) order[cursor[cells[i]]++] = static_cast<std::uint32_t>(i);
  }

  std::int64_t clamp_ix(double x) const {
    const auto i = static_cast<std::int64_t>(std::floor((x - lo[0]) / cell));
    return std::clamp<std::int64_t>(i, 0, nx - 1);
  }
  std::int64_t clamp_iy(double y) const {
    if (dim == 1) return 0;
    const auto i = static_cast<std::int64_t>(std::floor((y - lo[1]) / cell));
    return std::clamp<std::int64_t>(i, 0, ny - 1);
  }
  std::int64_t flat_index(const std::array<double, 2>& p) const {
    return clamp_iy(p[1]) * nx + clamp_ix(p[0]);
  }

  // Lower bound on the squared distance from q to any point bucketed in cell
  // (ix, iy); slack keeps it a true bound despite floating drift.
  double cell_bound_sq(const std::array<double, 2>& q, std::int64_t ix, std::int64_t iy) const {
    const double x0 = lo[0] + static_cast<double>(ix) * cell - slack;
    const double x1 = lo[0] + static_cast<double>(ix + 1) * cell + slack;
    double dx = 0.0;
    if (q[0] < x0) dx = x0 - q[0];
    else if (q[0] > x1) dx = q[0] - x1;
    double dy = 0.0;
    if (dim == 2) {
      const double y0 = lo[1] + static_cast<double>(iy) * cell - slack;
      const double y1 = lo[1] + static_cast<double>(iy + 1) * cell + slack;
      if (q[1] < y0) dy = y0 - q[1];
      else if (q[1] > y1) dy = q[1] - y1;
    }
    return dx * dx + dy * dy;
  }
};

// Exact min over the grid, with optional early exit once some candidate is
// strictly below `abandon_sq` (such a query can affect neither the directed
// max nor the witness). Returns -1 when abandoned.
double grid_min_sq(const BucketGrid& g, const std::array<double, 2>& q, double abandon_sq) {
  const std::int64_t cx = g.clamp_ix(q[0]);
  const std::int64_t cy = g.clamp_iy(q[1]);
  const auto& pts = *g.pts;
  double best = kInf;
  const std::int64_t kmax = std::max(g.nx, g.ny);

  auto scan_cell = [&](std::int64_t ix, std::int64_t iy) -> bool {
    if (ix < 0 || ix >= g.nx || iy < 0 || iy >= g.ny) return false;
    if (g.cell_bound_sq(q, ix, iy) >= best) return false;
    const std::size_t c = static_cast<std::size_t>(iy * g.nx + ix);
    for (std::uint32_t k = g.offsets[c]; k < g.offsets[c + 1]; ++k) {
      const double d2 = dist_sq(q, pts[g.order[k]]);
      if (d2 < abandon_sq) return true;
      best = std::min(best, d2);
    }
    return false;
  };

  for (std::int64_t k = 0; k <= kmax; ++k) {
    if (k > 0) {
      const double lb = std::max(0.0, static_cast<double>(k - 1) * g.cell - g.slack);
      if (lb * lb >= best) break;
    }
    if (k == 0) {
      if (scan_cell(cx, cy)) return -1.0;
    } else {
      for (std::int64_t ix = cx - k; ix <= cx + k; ++ix) {
        if (scan_cell(ix, cy - k)) return -1.0;
        if (g.dim == 2 && scan_cell(ix, cy + k)) return -1.0;
      }
      if (g.dim == 2) {
        for (std::int64_t iy = cy - k + 1; iy <= cy + k - 1; ++iy) {
          if (scan_cell(cx - k, iy)) return -1.0;
          if (scan_cell(cx + k, iy)) return -1.0;
        }
      } else {
        if (scan_cell(cx - k, 0)) return -1.0;
        if (scan_cell(cx + k, 0)) return -1.0;
      }
    }
  }
  return best;
}

DirectedResult grid_directed(const PointCloud& a, const BucketGrid& grid_b) {
  const auto& pa = a.raw();
  DirectedAccum acc;
  double cmax_sq = -1.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double min_sq = grid_min_sq(grid_b, pa[i], cmax_sq);
    if (min_sq < 0.0) continue;  // abandoned: provably below the running max
    acc.offer(min_sq, i);
    cmax_sq = acc.max_sq;
  }
  return {std::sqrt(acc.max_sq), a.point(acc.witness)};
}

double auto_cell(const PointCloud& a, const PointCloud& b) {
  const auto amin = a.bbox_min(), amax = a.bbox_max();
  const auto bmin = b.bbox_min(), bmax = b.bbox_max();
  const double dx = std::max(amax[0], bmax[0]) - std::min(amin[0], bmin[0]);
  const double dy = std::max(amax[1], bmax[1]) - std::min(amin[1], bmin[1]);
  const double diag = std::sqrt(dx * dx + dy * dy);
  if (!(diag > 0.0)) return 1.0;
  const double n = static_cast<double>(a.size() + b.size());
  const double k = std::ceil(a.dim() == 1 ? n : std::sqrt(n));
  return diag / std::max(8.0, k);
}

HausdorffResult combine(const DirectedResult& ab, const DirectedResult& ba) {
  return {std::max(ab.distance, ba.distance), ab.witness, ba.witness, ab.distance, ba.distance};
}

}  // namespace

DirectedResult directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  check_pair(a, b);
  return brute_directed(a, b);
}

HausdorffResult hausdorff(const PointCloud& a, const PointCloud& b) {
  check_pair(a, b);
  return combine(brute_directed(a, b), brute_directed(b, a));
}

HausdorffResult hausdorff_accelerated(const PointCloud& a, const PointCloud& b, double cell) {
  check_pair(a, b);
  const double c = cell > 0.0 ? cell : auto_cell(a, b);
  const BucketGrid grid_b(b, c);
  const BucketGrid grid_a(a, c);
  return combine(grid_directed(a, grid_b), grid_directed(b, grid_a));
}

}  // namespace ifskit
