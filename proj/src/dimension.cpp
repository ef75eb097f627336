#include "ifskit/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "ifskit/errors.hpp"

namespace ifskit {

namespace {

void check_ratios(const std::vector<double>& r) {
  if (r.empty()) throw InputError("ratio vector must be nonempty");
  for (double v : r)
    if (!(v > 0.0 && v < 1.0)) {
      std::ostringstream msg;
      msg << "ratio " << v << " outside (0,1)";
      throw DomainError(msg.str());
    }
}

double moran_dsum(const std::vector<double>& r, double s) {
  double d = 0.0;
  for (double v : r) d += std::log(v) * std::pow(v, s);
  return d;
}

}  // namespace

double moran_sum(const std::vector<double>& ratios, double s) {
  check_ratios(ratios);
  if (!(s >= 0.0)) throw InputError("moran_sum: s must be >= 0");
  double g = 0.0;
  for (double v : ratios) g += std::pow(v, s);
  return g;
}

MoranSolution moran_dimension(const std::vector<double>& ratios, double tol) {
  check_ratios(ratios);
  if (!(tol > 0.0)) throw InputError("moran_dimension: tol must be positive");
  MoranSolution sol;
  if (ratios.size() == 1) {
    sol.s = 0.0;
    sol.residual = 0.0;
    sol.sensitivity = {0.0};
    return sol;
  }
  const double rmax = *std::max_element(ratios.begin(), ratios.end());
  const double n = static_cast<double>(ratios.size());
  // g(r, 0) = n > 1 and g(r, log n / log(1/rmax)) <= n * rmax^shi = 1, so the
  // root is bracketed; g is strictly decreasing in s.
  double lo = 0.0;
  double hi = std::log(n) / std::log(1.0 / rmax);
  auto f = [&](double s) { return moran_sum(ratios, s) - 1.0; };
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0) lo = mid;
    else hi = mid;
  }
  double s = 0.5 * (lo + hi);
  double res = f(s);
  for (int i = 0; i < 8 && std::abs(res) > tol; ++i) {
    const double d = moran_dsum(ratios, s);
    const double next = s - res / d;
    if (!(next >= lo && next <= hi)) break;  // keep the guaranteed bracket
    s = next;
    res = f(s);
  }
  sol.s = s;
  sol.residual = res;
  sol.sensitivity = moran_sensitivity(ratios, s);
  return sol;
}

std::vector<double> moran_sensitivity(const std::vector<double>& ratios, double s) {
  check_ratios(ratios);
  if (ratios.size() == 1) {
    if (std::abs(s) > 1e-9) throw DomainError("moran_sensitivity: s is not the Moran root");
    return {0.0};
  }
  const double g = moran_sum(ratios, s);
  if (std::abs(g - 1.0) > 1e-9)
    throw DomainError("moran_sensitivity: s is not a Moran root of the given ratios");
  const double denom = moran_dsum(ratios, s);  // strictly negative
  std::vector<double> out;
  out.reserve(ratios.size());
  for (double v : ratios) out.push_back(-(s * std::pow(v, s - 1.0)) / denom);
  return out;
}

namespace {

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Image of an axis-aligned open box under a rotation-free similarity,
// computed per axis from the endpoint images.
Interval map_interval(double a, double t, const Interval& iv) {
  const double e1 = a * iv.lo + t;
  const double e2 = a * iv.hi + t;
  return {std::min(e1, e2), std::max(e1, e2)};
}

bool is_axis_aligned(const SimilarityMap& m) { return m.rotation() == 0.0; }

OscReport check_ball(const IFSInstance& ifs, const BallWitness& w) {
  if (w.center.dim() != ifs.dim) throw InputError("osc_check: witness dimension mismatch");
  if (!(w.radius > 0.0)) throw InputError("osc_check: witness radius must be positive");
  OscReport rep;
  std::vector<Ball> images;
  images.reserve(ifs.maps.size());
  for (const auto& m : ifs.maps) images.push_back(map_ball(m, Ball{w.center, w.radius}));
  rep.verified = true;
  for (const auto& b : images) {
    // ball(c_i, rho_i) inside ball(c, R) iff dist(c_i, c) + rho_i <= R
    const double margin = w.radius - (dist(b.center, w.center) + b.radius);
    rep.contained.push_back(margin >= 0.0);
    rep.containment_margin.push_back(margin);
    if (margin < 0.0) rep.verified = false;
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      // open balls disjoint iff dist(c_i, c_j) >= rho_i + rho_j
      const double margin =
          dist(images[i].center, images[j].center) - (images[i].radius + images[j].radius);
      rep.pairs.push_back({i, j, margin >= 0.0, margin});
      if (margin < 0.0) rep.verified = false;
    }
  return rep;
}

OscReport check_box(const IFSInstance& ifs, const BoxWitness& w) {
  if (w.lo.dim() != ifs.dim || w.hi.dim() != ifs.dim)
    throw InputError("osc_check: witness dimension mismatch");
  for (int k = 0; k < ifs.dim; ++k)
    if (!(w.lo[k] < w.hi[k])) throw InputError("osc_check: box witness must be nonempty");
  for (const auto& m : ifs.maps)
    if (!is_axis_aligned(m))
      throw DomainError(
          "osc_check: box witnesses require rotation-free maps (box images stay boxes)");

  OscReport rep;
  const int d = ifs.dim;
  struct BoxImage {
    std::array<Interval, 2> axis;
  };
  std::vector<BoxImage> images;
  for (const auto& m : ifs.maps) {
    BoxImage img;
    // Rotation-free linear part is diagonal: diag(s, s) or diag(s, -s) with
    // reflection (y flip); 1-D reflection negates x.
    const double sx = (d == 1 && m.reflect()) ? -m.scale() : m.scale();
    const double sy = m.reflect() ? -m.scale() : m.scale();
    img.axis[0] = map_interval(sx, m.translation().x(), {w.lo[0], w.hi[0]});
    if (d == 2) img.axis[1] = map_interval(sy, m.translation().y(), {w.lo[1], w.hi[1]});
    images.push_back(img);
  }
  rep.verified = true;
  for (const auto& img : images) {
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < d; ++k) {
      margin = std::min(margin, img.axis[k].lo - w.lo[k]);
      margin = std::min(margin, w.hi[k] - img.axis[k].hi);
    }
    rep.contained.push_back(margin >= 0.0);
    rep.containment_margin.push_back(margin);
    if (margin < 0.0) rep.verified = false;
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      // open boxes are disjoint iff some axis separates them (touching
      // counts: the open interiors miss each other)
      double margin = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < d; ++k) {
        margin = std::max(margin, images[j].axis[k].lo - images[i].axis[k].hi);
        margin = std::max(margin, images[i].axis[k].lo - images[j].axis[k].hi);
      }
      rep.pairs.push_back({i, j, margin >= 0.0, margin});
      if (margin < 0.0) rep.verified = false;
    }
  return rep;
}

}  // namespace

OscReport osc_check(const IFSInstance& ifs, const OscWitness& witness) {
  if (ifs.maps.empty()) throw InputError("osc_check: empty map list");
  if (std::holds_alternative<BallWitness>(witness))
    return check_ball(ifs, std::get<BallWitness>(witness));
  return check_box(ifs, std::get<BoxWitness>(witness));
}

std::optional<OscWitness> osc_search(const IFSInstance& ifs, int candidates) {
  if (candidates < 1) throw InputError("osc_search: candidates must be >= 1");
  if (ifs.maps.empty()) throw InputError("osc_search: empty map list");
  const int d = ifs.dim;

  std::vector<Point> fps;
  fps.reserve(ifs.maps.size());
  for (const auto& m : ifs.maps) fps.push_back(fixed_point(m));

  std::array<double, 2> lo = fps.front().coords(), hi = lo;
  for (const auto& p : fps)
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  const double dx = hi[0] - lo[0], dy = hi[1] - lo[1];
  const double spread = std::sqrt(dx * dx + dy * dy);
  const double base = spread > 0.0 ? spread : 1.0;

  std::vector<Point> centers;
  centers.push_back(Point::of(d, {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])}));
  {
    std::array<double, 2> c{0.0, 0.0};
    for (const auto& p : fps)
      for (int k = 0; k < d; ++k) c[k] += p[k] / static_cast<double>(fps.size());
    centers.push_back(Point::of(d, c));
  }
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j)
      centers.push_back(Point::of(d, {0.5 * (fps[i][0] + fps[j][0]),
                                      0.5 * (fps[i][1] + fps[j][1])}));

  static constexpr double kLadder[] = {1.0, 1.25, 1.5, 2.0, 3.0, 0.75, 0.5, 0.25};

  int tried = 0;
  for (double m : kLadder)
    for (const auto& c : centers) {
      if (tried >= candidates) return std::nullopt;
      ++tried;
      const BallWitness w{c, 0.5 * base * m};
      if (osc_check(ifs, w).verified) return OscWitness{w};
    }

  const bool boxes_ok =
      std::all_of(ifs.maps.begin(), ifs.maps.end(), [](const auto& m) { return is_axis_aligned(m); });
  if (boxes_ok && spread > 0.0) {
    for (double m : kLadder) {
      if (tried >= candidates) return std::nullopt;
      ++tried;
      std::array<double, 2> blo{0.0, 0.0}, bhi{0.0, 0.0};
      bool degenerate = false;
      for (int k = 0; k < d; ++k) {
        const double mid = 0.5 * (lo[k] + hi[k]);
        double half = 0.5 * (hi[k] - lo[k]) * m;
        if (half <= 0.0) half = 0.5 * base * m;  // flat axis: fall back to the spread
        blo[k] = mid - half;
        bhi[k] = mid + half;
        if (!(blo[k] < bhi[k])) degenerate = true;
      }
      if (degenerate) continue;
      const BoxWitness w{Point::of(d, blo), Point::of(d, bhi)};
      if (osc_check(ifs, w).verified) return OscWitness{w};
    }
  }
  return std::nullopt;
}

BoxCountReport box_counting(const PointCloud& cloud, const std::vector<double>& scales) {
  if (scales.empty()) throw InputError("box_counting: need at least one scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw InputError("box_counting: scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1]))
      throw InputError("box_counting: scales must be strictly decreasing");
    if (!(scales[i] > 2.0 * cloud.resolution())) {
      std::ostringstream msg;
      msg << "box_counting: scale " << scales[i] << " must exceed twice the cloud resolution "
          << cloud.resolution();
      throw InputError(msg.str());
    }
  }

  const auto lo = cloud.bbox_min();
  const auto hi = cloud.bbox_max();
  BoxCountReport rep;
  rep.scales = scales;
  for (double delta : scales) {
    // Occupied cells of the grid anchored at the bounding-box min corner;
    // points on the max edge are clamped into the last cell.
    const auto max_ix = static_cast<std::int64_t>(std::ceil((hi[0] - lo[0]) / delta));
    const auto max_iy = static_cast<std::int64_t>(std::ceil((hi[1] - lo[1]) / delta));
    std::unordered_set<std::uint64_t> occupied;
    occupied.reserve(cloud.size());
    for (const auto& p : cloud.raw()) {
      auto ix = static_cast<std::int64_t>(std::floor((p[0] - lo[0]) / delta));
      ix = std::clamp<std::int64_t>(ix, 0, std::max<std::int64_t>(max_ix - 1, 0));
      std::int64_t iy = 0;
      if (cloud.dim() == 2) {
        iy = static_cast<std::int64_t>(std::floor((p[1] - lo[1]) / delta));
        iy = std::clamp<std::int64_t>(iy, 0, std::max<std::int64_t>(max_iy - 1, 0));
      }
      occupied.insert(static_cast<std::uint64_t>(iy) << 32 | static_cast<std::uint32_t>(ix));
    }
    rep.counts.push_back(occupied.size());
  }

  // OLS fit of log N against log(1/delta).
  const std::size_t n = scales.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(1.0 / scales[i]);
    ys[i] = std::log(static_cast<double>(rep.counts[i]));
    mx += xs[i] / static_cast<double>(n);
    my += ys[i] / static_cast<double>(n);
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  rep.slope = sxx > 0.0 ? std::max(sxy / sxx, 0.0) : 0.0;
  rep.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return rep;
}

std::vector<double> default_scale_ladder(const PointCloud& cloud, double ratio, int max_scales) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InputError("scale ladder ratio must lie in (0,1)");
  if (max_scales < 2) throw InputError("scale ladder needs at least 2 scales");
  const double diam = cloud.bbox_diagonal();
  double delta = (diam > 0.0 ? diam : 1.0) * ratio;
  std::vector<double> scales;
  for (int k = 0; k < max_scales; ++k) {
    if (!(delta > 2.0 * cloud.resolution())) break;
    scales.push_back(delta);
    delta *= ratio;
  }
  if (scales.size() < 2)
    throw InputError(
        "box_counting: cloud resolution too coarse for a scale ladder; request a finer cloud");
  return scales;
}

}  // namespace ifskit
