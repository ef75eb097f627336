#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ifskit/attractor.hpp"
#include "ifskit/dimension.hpp"
#include "ifskit/family.hpp"

namespace ifskit {

// Strictly increasing parameter values inside the family domain.
struct SweepGrid {
  std::vector<double> values;

  // "lo:hi:step", both endpoints included (hi is snapped in exactly when the
  // last step lands within step/2 of it).
  static SweepGrid parse(const std::string& spec);
  static SweepGrid from_range(double lo, double hi, double step);

  void validate(const ParamDomain& domain) const;
};

struct BoundCheck {
  double lhs = 0.0;   // (1 - r_max(p)) * h(A(p), A(q))
  double rhs = 0.0;   // h(F_p(A(q)), F_q(A(q)))
  double slack = 0.0; // (3 + r_max(p)) * eps, covers cloud approximation error
  bool satisfied = false;
};

struct SweepRow {
  double p = 0.0;
  std::vector<double> ratios;
  MoranSolution moran;
  bool osc_found = false;
  std::optional<OscWitness> witness;
  std::shared_ptr<const PointCloud> cloud;
  IterationReport attractor_report;
  std::optional<BoxCountReport> boxcount;
  bool coincident_maps = false;
};

struct SweepPair {
  double p = 0.0, q = 0.0;
  double hausdorff_distance = 0.0;
  double operator_distance = 0.0;  // rhs of the fixed-point inequality
  BoundCheck bound;
};

struct SweepSummary {
  double max_modulus = 0.0;     // max over pairs of h / |p - q|
  double jump_threshold = 0.0;
  std::vector<std::size_t> jump_pairs;   // indices into pairs with |ds| above threshold
  std::vector<double> osc_unproven;      // grid values where no witness was found
  bool all_bounds_satisfied = true;
};

struct SweepReport {
  std::string family_name;
  double eps = 0.0;
  std::vector<SweepRow> rows;
  std::vector<SweepPair> pairs;
  SweepSummary summary;
};

struct SweepOptions {
  double eps = 0.0;  // 0: default 1e-4 for 1-D families, 1e-3 for 2-D
  bool boxcount = false;
  std::size_t point_budget = kDefaultPointBudget;
  int osc_candidates = 64;
};

// h(F_p(C), F_q(C)) with exact (grid 0) images: the operator continuity
// quantity evaluated at one compact set.
double operator_distance(const IFSFamily& family, double p, double q, const PointCloud& c);

// The fixed-point inequality (1 - r_p) h(A(p), A(q)) <= h(F_p(A(q)),
// F_q(A(q))) evaluated on eps-attractor clouds, with slack (3 + r_p) * eps
// for the cloud approximation error. Instances that are exactly equal
// (parameter-independent families) short-circuit to (0, 0, satisfied).
BoundCheck continuity_bound_check(const IFSFamily& family, double p, double q, double eps,
                                  std::size_t point_budget = kDefaultPointBudget);

// Full sweep: per grid value the ratios, Moran solution, OSC search result
// and eps-attractor; per adjacent pair the Hausdorff distance and bound
// check. Moran values are reported everywhere but rows without an OSC
// witness carry osc_found = false: there the Moran value is a formula value,
// not a certified dimension.
SweepReport sweep(const IFSFamily& family, const SweepGrid& grid, const SweepOptions& options = {});

// Max |r_i(p_{k+1}) - r_i(p_k)| per map along the grid.
std::vector<double> ratio_continuity_check(const IFSFamily& family, const SweepGrid& grid);

// Pairs whose |s(p_{k+1}) - s(p_k)| exceeds max(floor, 10 * max predicted
// step), where predicted[k] is the sensitivity-based estimate for pair k.
std::vector<std::size_t> detect_jumps(const std::vector<double>& s_values,
                                      const std::vector<double>& predicted,
                                      double* threshold_out = nullptr);

void write_sweep_csv(const SweepReport& report, std::ostream& out);
std::string sweep_summary_text(const SweepReport& report);

}  // namespace ifskit
