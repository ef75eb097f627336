#include "ifskit/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ifskit/errors.hpp"
#include "ifskit/io.hpp"
#include "ifskit/metric.hpp"

namespace ifskit {

SweepGrid SweepGrid::parse(const std::string& spec) {
  double v[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto next = i < 2 ? spec.find(':', pos) : spec.size();
    if (next == std::string::npos) throw InputError("grid spec must be lo:hi:step");
    try {
      std::size_t consumed = 0;
      v[i] = std::stod(spec.substr(pos, next - pos), &consumed);
      if (consumed != next - pos) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("grid spec must be lo:hi:step with numeric fields: '" + spec + "'");
    }
    pos = next + 1;
  }
  return from_range(v[0], v[1], v[2]);
}

SweepGrid SweepGrid::from_range(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || lo > hi)
    throw InputError("grid range needs finite lo <= hi and step > 0");
  SweepGrid g;
  const double k_hi = std::round((hi - lo) / step);
  const bool snap_hi = std::abs(lo + k_hi * step - hi) <= step / 2.0 && k_hi >= 1.0;
  const auto n = static_cast<long>(snap_hi ? k_hi : std::floor((hi - lo) / step + 1e-12));
  if (n > 100'000'000) throw InputError("grid has too many values");
  for (long k = 0; k < n; ++k) g.values.push_back(lo + static_cast<double>(k) * step);
  g.values.push_back(snap_hi ? hi : lo + static_cast<double>(n) * step);
  if (g.values.size() < 2 || !std::is_sorted(g.values.begin(), g.values.end()) ||
      std::adjacent_find(g.values.begin(), g.values.end()) != g.values.end())
    throw InputError("grid must contain at least 2 strictly increasing values");
  return g;
}

void SweepGrid::validate(const ParamDomain& domain) const {
  if (values.size() < 2) throw InputError("grid must contain at least 2 values");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && !(values[i] > values[i - 1]))
      throw InputError("grid values must be strictly increasing");
    if (values[i] < domain.lo || values[i] > domain.hi) {
      std::ostringstream msg;
      msg << "grid value " << values[i] << " outside the family domain [" << domain.lo << ", "
          << domain.hi << "]";
      throw InputError(msg.str());
    }
  }
}

double operator_distance(const IFSFamily& family, double p, double q, const PointCloud& c) {
  const auto fp = instantiate(family, p);
  const auto fq = instantiate(family, q);
  return hausdorff_accelerated(iterate_once(fp, c, 0.0), iterate_once(fq, c, 0.0)).distance;
}

namespace {

BoundCheck bound_check_on_clouds(const IFSInstance& inst_p, const IFSInstance& inst_q,
                                 const PointCloud& cloud_p, const PointCloud& cloud_q,
                                 double eps) {
  BoundCheck b;
  b.slack = (3.0 + inst_p.max_ratio()) * eps;
  b.lhs = (1.0 - inst_p.max_ratio()) * hausdorff_accelerated(cloud_p, cloud_q).distance;
  b.rhs = hausdorff_accelerated(iterate_once(inst_p, cloud_q, 0.0),
                                iterate_once(inst_q, cloud_q, 0.0))
              .distance;
  b.satisfied = b.lhs <= b.rhs + b.slack;
  return b;
}

}  // namespace

BoundCheck continuity_bound_check(const IFSFamily& family, double p, double q, double eps,
                                  std::size_t point_budget) {
  if (!(eps > 0.0)) throw InputError("continuity_bound_check: eps must be positive");
  const auto inst_p = instantiate(family, p);
  const auto inst_q = instantiate(family, q);
  BoundCheck b;
  b.slack = (3.0 + inst_p.max_ratio()) * eps;
  if (inst_p.maps == inst_q.maps) {
    // Identical instances run the identical computation: both sides are
    // exactly zero without materializing the clouds.
    b.satisfied = true;
    return b;
  }
  const auto cloud_p = attractor(inst_p, eps, point_budget).first;
  const auto cloud_q = attractor(inst_q, eps, point_budget).first;
  return bound_check_on_clouds(inst_p, inst_q, cloud_p, cloud_q, eps);
}

std::vector<std::size_t> detect_jumps(const std::vector<double>& s_values,
                                      const std::vector<double>& predicted,
                                      double* threshold_out) {
  if (s_values.size() < 2 || predicted.size() != s_values.size() - 1)
    throw InputError("detect_jumps: need |predicted| == |s| - 1 >= 1");
  double max_predicted = 0.0;
  for (double p : predicted) max_predicted = std::max(max_predicted, std::abs(p));
  const double threshold = std::max(1e-3, 10.0 * max_predicted);
  if (threshold_out) *threshold_out = threshold;
  std::vector<std::size_t> jumps;
  for (std::size_t k = 0; k + 1 < s_values.size(); ++k)
    if (std::abs(s_values[k + 1] - s_values[k]) > threshold) jumps.push_back(k);
  return jumps;
}

SweepReport sweep(const IFSFamily& family, const SweepGrid& grid, const SweepOptions& options) {
  grid.validate(family.domain());
  const double eps = options.eps > 0.0 ? options.eps : (family.dim() == 1 ? 1e-4 : 1e-3);

  SweepReport report;
  report.family_name = family.name();
  report.eps = eps;

  std::vector<IFSInstance> instances;
  instances.reserve(grid.values.size());
  for (double p : grid.values) {
    auto inst = instantiate(family, p);
    SweepRow row;
    row.p = p;
    row.coincident_maps = inst.coincident_maps;
    row.ratios.reserve(inst.maps.size());
    for (const auto& m : inst.maps) row.ratios.push_back(contraction_ratio(m));
    row.moran = moran_dimension(row.ratios, 1e-12);
    auto [cloud, rep] = attractor(inst, eps, options.point_budget);
    row.cloud = std::make_shared<PointCloud>(std::move(cloud));
    row.attractor_report = std::move(rep);
    row.witness = osc_search(inst, options.osc_candidates);
    row.osc_found = row.witness.has_value();
    if (options.boxcount) {
      try {
        const auto ladder = default_scale_ladder(*row.cloud, inst.max_ratio());
        row.boxcount = box_counting(*row.cloud, ladder);
      } catch (const InputError&) {
        // Resolution too coarse for a usable ladder; leave the column empty.
        row.boxcount.reset();
      }
    }
    report.rows.push_back(std::move(row));
    instances.push_back(std::move(inst));
  }

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    SweepPair pair;
    pair.p = report.rows[i - 1].p;
    pair.q = report.rows[i].p;
    pair.hausdorff_distance =
        hausdorff_accelerated(*report.rows[i - 1].cloud, *report.rows[i].cloud).distance;
    if (instances[i - 1].maps == instances[i].maps) {
      pair.operator_distance = 0.0;
      pair.bound.slack = (3.0 + instances[i - 1].max_ratio()) * eps;
      pair.bound.lhs = (1.0 - instances[i - 1].max_ratio()) * pair.hausdorff_distance;
      pair.bound.rhs = 0.0;
      pair.bound.satisfied = pair.bound.lhs <= pair.bound.slack;
    } else {
      pair.bound = bound_check_on_clouds(instances[i - 1], instances[i],
                                         *report.rows[i - 1].cloud, *report.rows[i].cloud, eps);
      pair.operator_distance = pair.bound.rhs;
    }
    report.pairs.push_back(std::move(pair));
  }

  auto& summary = report.summary;
  std::vector<double> s_values, predicted;
  for (const auto& row : report.rows) s_values.push_back(row.moran.s);
  for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) {
    double dot = 0.0;
    for (std::size_t j = 0; j < report.rows[k].ratios.size(); ++j)
      dot += report.rows[k].moran.sensitivity[j] *
             (report.rows[k + 1].ratios[j] - report.rows[k].ratios[j]);
    predicted.push_back(std::abs(dot));
  }
  if (!report.pairs.empty())
    summary.jump_pairs = detect_jumps(s_values, predicted, &summary.jump_threshold);
  for (const auto& pair : report.pairs) {
    summary.max_modulus = std::max(summary.max_modulus, pair.hausdorff_distance / (pair.q - pair.p));
    summary.all_bounds_satisfied = summary.all_bounds_satisfied && pair.bound.satisfied;
  }
  for (const auto& row : report.rows)
    if (!row.osc_found) summary.osc_unproven.push_back(row.p);
  return report;
}

std::vector<double> ratio_continuity_check(const IFSFamily& family, const SweepGrid& grid) {
  grid.validate(family.domain());
  std::vector<double> moduli(family.map_count(), 0.0);
  auto prev = ratios(family, grid.values.front());
  for (std::size_t i = 1; i < grid.values.size(); ++i) {
    const auto cur = ratios(family, grid.values[i]);
    for (std::size_t j = 0; j < moduli.size(); ++j)
      moduli[j] = std::max(moduli[j], std::abs(cur[j] - prev[j]));
    prev = cur;
  }
  return moduli;
}

void write_sweep_csv(const SweepReport& report, std::ostream& out) {
  const std::size_t nmaps = report.rows.empty() ? 0 : report.rows.front().ratios.size();
  const bool with_boxcount =
      std::any_of(report.rows.begin(), report.rows.end(),
                  [](const SweepRow& r) { return r.boxcount.has_value(); });
  out << "p";
  for (std::size_t j = 1; j <= nmaps; ++j) out << ",r_" << j;
  out << ",moran_s,osc_found,h_prev,bound_lhs,bound_rhs,bound_ok";
  if (with_boxcount) out << ",boxcount_s";
  out << "\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out << format_g12(row.p);
    for (double r : row.ratios) out << "," << format_g12(r);
    out << "," << format_g12(row.moran.s) << "," << (row.osc_found ? "true" : "false");
    if (i == 0) {
      out << ",,,,";
    } else {
      const auto& pair = report.pairs[i - 1];
      out << "," << format_g12(pair.hausdorff_distance) << "," << format_g12(pair.bound.lhs)
          << "," << format_g12(pair.bound.rhs) << "," << (pair.bound.satisfied ? "true" : "false");
    }
    if (with_boxcount) {
      out << ",";
      if (row.boxcount) out << format_g12(row.boxcount->slope);
    }
    out << "\n";
  }
}

std::string sweep_summary_text(const SweepReport& report) {
  std::ostringstream out;
  out << "family: " << report.family_name << "\n";
  out << "grid: " << report.rows.size() << " values";
  if (!report.rows.empty())
    out << " in [" << format_g12(report.rows.front().p) << ", "
        << format_g12(report.rows.back().p) << "]";
  out << "\n";
  out << "eps: " << format_g12(report.eps) << "\n";
  out << "max modulus h/|dp|: " << format_g12(report.summary.max_modulus) << "\n";
  out << "bound checks: "
      << (report.summary.all_bounds_satisfied ? "all satisfied" : "SOME FAILED") << "\n";
  out << "jump threshold: " << format_g12(report.summary.jump_threshold) << "\n";
  if (report.summary.jump_pairs.empty()) {
    out << "moran jumps: none\n";
  } else {
    out << "moran jumps:";
    for (auto k : report.summary.jump_pairs)
      out << " (" << format_g12(report.pairs[k].p) << " -> " << format_g12(report.pairs[k].q)
          << ")";
    out << "\n";
  }
  if (report.summary.osc_unproven.empty()) {
    out << "osc witness found at every grid value\n";
  } else {
    out << "osc unproven at:";
    for (double p : report.summary.osc_unproven) out << " " << format_g12(p);
    out << "\n";
    out << "note: moran_s at OSC-unproven values is the formula value; the true dimension is"
           " unverified there\n";
  }
  return out.str();
}

}  // namespace ifskit
