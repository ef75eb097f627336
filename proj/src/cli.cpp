#include "ifskit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ifskit/attractor.hpp"
#include "ifskit/continuity.hpp"
#include "ifskit/dimension.hpp"
#include "ifskit/errors.hpp"
#include "ifskit/family.hpp"
#include "ifskit/io.hpp"
#include "ifskit/metric.hpp"

namespace ifskit {

namespace {

struct FamilySource {
  std::string builtin;
  std::string file;
  double p = std::numeric_limits<double>::quiet_NaN();

  void add_options(CLI::App* cmd, bool with_p = true) {
    cmd->add_option("--builtin", builtin, "built-in family name (cantor, example26, sierpinski)");
    cmd->add_option("--family", file, "family config file (JSON)");
    if (with_p)
      cmd->add_option("--p", p, "parameter value (default: midpoint of the family domain)");
  }

  IFSFamily load() const {
    if (builtin.empty() == file.empty())
      throw InputError("exactly one of --builtin and --family is required");
    if (!builtin.empty()) return builtin_family(builtin);
    std::ifstream in(file);
    if (!in) throw InputError("cannot open family config '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
  }

  double resolve_p(const IFSFamily& family) const {
    if (std::isnan(p)) return 0.5 * (family.domain().lo + family.domain().hi);
    return p;
  }
};

double parse_number(const std::string& tok) {
  // Plain decimals plus a/b fractions, so exact ratio lists like 1/3 work.
  const auto slash = tok.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing");
      return v;
    }
    const double num = std::stod(tok.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("trailing");
    const double den = std::stod(tok.substr(slash + 1), &used);
    if (used != tok.size() - slash - 1) throw std::invalid_argument("trailing");
    if (den == 0.0) throw std::invalid_argument("zero denominator");
    return num / den;
  } catch (const std::exception&) {
    throw InputError("not a number: '" + tok + "'");
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    const auto end = next == std::string::npos ? text.size() : next;
    out.push_back(parse_number(text.substr(pos, end - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw InputError("empty number list");
  return out;
}

std::string join_g12(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_g12(v[i]);
  }
  return s;
}

std::string format_point(const Point& p) {
  std::string s = format_g12(p.x());
  if (p.dim() == 2) s += "," + format_g12(p.y());
  return s;
}

std::string describe_witness(const OscWitness& w) {
  if (std::holds_alternative<BallWitness>(w)) {
    const auto& b = std::get<BallWitness>(w);
    return "ball center=" + format_point(b.center) + " radius=" + format_g12(b.radius);
  }
  const auto& b = std::get<BoxWitness>(w);
  return "box lo=" + format_point(b.lo) + " hi=" + format_point(b.hi);
}

std::size_t default_budget() {
  if (const char* env = std::getenv("IFSKIT_POINT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw InputError("IFSKIT_POINT_BUDGET must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultPointBudget;
}

double resolve_eps(double eps, int dim) {
  if (eps > 0.0) return eps;
  return dim == 1 ? 1e-4 : 1e-3;
}

void write_file_or_stream(const std::string& path, std::ostream& fallback,
                          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write output file '" + path + "'");
  writer(f);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"iterated function systems: attractors, Hausdorff distances, Moran dimensions,"
               " open-set-condition certificates and parameter sweeps"};
  app.require_subcommand(1);

  // attractor
  auto* cmd_attractor = app.add_subcommand("attractor", "deterministic eps-accurate attractor cloud");
  FamilySource att_src;
  att_src.add_options(cmd_attractor);
  double att_eps = 0.0;
  std::string att_out, att_pgm;
  int att_pgm_width = 512;
  std::size_t att_budget = 0;
  cmd_attractor->add_option("--eps", att_eps, "Hausdorff accuracy (default 1e-4 1-D, 1e-3 2-D)");
  cmd_attractor->add_option("-o,--output", att_out, "cloud CSV path (default: stdout)");
  cmd_attractor->add_option("--pgm", att_pgm, "also render a PGM image (2-D only)");
  cmd_attractor->add_option("--pgm-width", att_pgm_width, "PGM width in pixels");
  cmd_attractor->add_option("--budget", att_budget, "point budget (default $IFSKIT_POINT_BUDGET or 1e7)");

  // chaos
  auto* cmd_chaos = app.add_subcommand("chaos", "chaos-game sample of the attractor");
  FamilySource chaos_src;
  chaos_src.add_options(cmd_chaos);
  std::size_t chaos_count = 0, chaos_burnin = 64;
  std::uint64_t chaos_seed = 0;
  std::string chaos_out;
  cmd_chaos->add_option("--count", chaos_count, "number of points to keep")->required();
  cmd_chaos->add_option("--burn-in", chaos_burnin, "points to discard first");
  cmd_chaos->add_option("--seed", chaos_seed, "RNG seed");
  cmd_chaos->add_option("-o,--output", chaos_out, "cloud CSV path (default: stdout)");

  // hausdorff
  auto* cmd_hausdorff = app.add_subcommand("hausdorff", "exact Hausdorff distance of two cloud CSVs");
  std::string hd_a, hd_b;
  bool hd_brute = false;
  double hd_cell = 0.0;
  cmd_hausdorff->add_option("cloud_a", hd_a, "first cloud CSV")->required();
  cmd_hausdorff->add_option("cloud_b", hd_b, "second cloud CSV")->required();
  cmd_hausdorff->add_flag("--brute", hd_brute, "use the O(|A||B|) scan (identical result)");
  cmd_hausdorff->add_option("--cell", hd_cell, "bucket size hint for the accelerated path");

  // dimension
  auto* cmd_dimension = app.add_subcommand("dimension", "Moran similarity dimension with sensitivity");
  FamilySource dim_src;
  dim_src.add_options(cmd_dimension);
  std::string dim_ratios;
  double dim_tol = 1e-12;
  cmd_dimension->add_option("--ratios", dim_ratios, "ratio list, e.g. 1/3,1/3 or 0.5,0.25,0.25");
  cmd_dimension->add_option("--tol", dim_tol, "Moran residual tolerance");

  // boxcount
  auto* cmd_boxcount = app.add_subcommand("boxcount", "box-counting dimension estimate of a cloud CSV");
  std::string bc_cloud, bc_scales;
  double bc_ratio = 0.5;
  int bc_num = 8;
  cmd_boxcount->add_option("cloud", bc_cloud, "cloud CSV")->required();
  cmd_boxcount->add_option("--scales", bc_scales, "explicit scale list (default: geometric ladder)");
  cmd_boxcount->add_option("--ladder-ratio", bc_ratio, "ladder ratio when --scales is absent");
  cmd_boxcount->add_option("--num-scales", bc_num, "ladder length when --scales is absent");

  // osc
  auto* cmd_osc = app.add_subcommand("osc", "search for an open-set-condition witness");
  FamilySource osc_src;
  osc_src.add_options(cmd_osc);
  int osc_candidates = 64;
  cmd_osc->add_option("--candidates", osc_candidates, "candidate budget for the search");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep: attractors, dimensions, OSC, bounds");
  FamilySource sweep_src;
  sweep_src.add_options(cmd_sweep, /*with_p=*/false);
  std::string sweep_grid, sweep_out, sweep_summary;
  double sweep_eps = 0.0;
  bool sweep_boxcount = false;
  std::size_t sweep_budget = 0;
  cmd_sweep->add_option("--grid", sweep_grid, "grid spec lo:hi:step (both endpoints included)")
      ->required();
  cmd_sweep->add_option("--eps", sweep_eps, "attractor accuracy (default 1e-4 1-D, 1e-3 2-D)");
  cmd_sweep->add_option("-o,--output", sweep_out, "report CSV path (default: stdout)");
  cmd_sweep->add_option("--summary", sweep_summary, "write the text summary to a file");
  cmd_sweep->add_flag("--boxcount", sweep_boxcount, "add a box-count column");
  cmd_sweep->add_option("--budget", sweep_budget, "point budget (default $IFSKIT_POINT_BUDGET or 1e7)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (*cmd_attractor) {
      const auto family = att_src.load();
      const double p = att_src.resolve_p(family);
      const double eps = resolve_eps(att_eps, family.dim());
      const std::size_t budget = att_budget > 0 ? att_budget : default_budget();
      const auto inst = instantiate(family, p);
      const auto [cloud, report] = attractor(inst, eps, budget);
      std::ostringstream header;
      header << "ifskit attractor family=" << family.name() << " p=" << format_g12(p)
             << " eps=" << format_g12(eps) << " seed=0";
      if (!att_out.empty()) {
        write_cloud_csv_file(cloud, att_out, {header.str()});
        out << "subcommand=attractor family=" << family.name() << " p=" << format_g12(p)
            << " eps=" << format_g12(eps) << " seed=0\n";
        if (inst.coincident_maps) out << "degenerate=coincident maps\n";
        out << "iterations=" << report.iterations << "\n";
        out << "final_step_distance=" << format_g12(report.final_step_distance) << "\n";
        out << "guaranteed_error=" << format_g12(report.guaranteed_error) << "\n";
        out << "points_kept=" << report.points_kept << "\n";
        out << "output=" << att_out << "\n";
      } else {
        std::vector<std::string> comments{header.str()};
        if (inst.coincident_maps) comments.push_back("degenerate: coincident maps");
        comments.push_back("iterations=" + std::to_string(report.iterations) +
                           " final_step_distance=" + format_g12(report.final_step_distance) +
                           " guaranteed_error=" + format_g12(report.guaranteed_error) +
                           " points_kept=" + std::to_string(report.points_kept));
        write_cloud_csv(cloud, out, comments);
      }
      if (!att_pgm.empty()) {
        write_pgm_file(cloud, att_pgm, att_pgm_width);
        if (!att_out.empty()) out << "pgm=" << att_pgm << "\n";
      }
      return 0;
    }

    if (*cmd_chaos) {
      const auto family = chaos_src.load();
      const double p = chaos_src.resolve_p(family);
      const auto inst = instantiate(family, p);
      const auto cloud = chaos_game(inst, chaos_count, chaos_burnin, chaos_seed);
      std::ostringstream header;
      header << "ifskit chaos family=" << family.name() << " p=" << format_g12(p)
             << " count=" << chaos_count << " burn_in=" << chaos_burnin << " seed=" << chaos_seed;
      write_file_or_stream(chaos_out, out,
                           [&](std::ostream& o) { write_cloud_csv(cloud, o, {header.str()}); });
      if (!chaos_out.empty())
        out << "subcommand=chaos seed=" << chaos_seed << " points=" << cloud.size()
            << " output=" << chaos_out << "\n";
      return 0;
    }

    if (*cmd_hausdorff) {
      const auto a = read_cloud_csv_file(hd_a);
      const auto b = read_cloud_csv_file(hd_b);
      const auto result = hd_brute ? hausdorff(a, b) : hausdorff_accelerated(a, b, hd_cell);
      out << "subcommand=hausdorff seed=0\n";
      out << "cloud_a=" << hd_a << " points=" << a.size() << "\n";
      out << "cloud_b=" << hd_b << " points=" << b.size() << "\n";
      out << "distance=" << format_g12(result.distance) << "\n";
      out << "directed_ab=" << format_g12(result.directed_ab) << "\n";
      out << "directed_ba=" << format_g12(result.directed_ba) << "\n";
      out << "witness_a=" << format_point(result.witness_a) << "\n";
      out << "witness_b=" << format_point(result.witness_b) << "\n";
      return 0;
    }

    if (*cmd_dimension) {
      std::vector<double> r;
      if (!dim_ratios.empty()) {
        if (!dim_src.builtin.empty() || !dim_src.file.empty())
          throw InputError("give either --ratios or a family, not both");
        r = parse_number_list(dim_ratios);
        out << "subcommand=dimension ratios=" << join_g12(r) << " seed=0\n";
      } else {
        const auto family = dim_src.load();
        const double p = dim_src.resolve_p(family);
        r = ratios(family, p);
        out << "subcommand=dimension family=" << family.name() << " p=" << format_g12(p)
            << " ratios=" << join_g12(r) << " seed=0\n";
      }
      const auto sol = moran_dimension(r, dim_tol);
      out << "s=" << format_g12(sol.s) << "\n";
      out << "residual=" << format_g12(sol.residual) << "\n";
      out << "sensitivity=" << join_g12(sol.sensitivity) << "\n";
      return 0;
    }

    if (*cmd_boxcount) {
      const auto cloud = read_cloud_csv_file(bc_cloud);
      const auto scales =
          bc_scales.empty() ? default_scale_ladder(cloud, bc_ratio, bc_num)
                            : parse_number_list(bc_scales);
      const auto report = box_counting(cloud, scales);
      out << "scale,count\n";
      for (std::size_t i = 0; i < report.scales.size(); ++i)
        out << format_g12(report.scales[i]) << "," << report.counts[i] << "\n";
      out << "# slope = " << format_g12(report.slope) << "\n";
      out << "# r_squared = " << format_g12(report.r_squared) << "\n";
      return 0;
    }

    if (*cmd_osc) {
      const auto family = osc_src.load();
      const double p = osc_src.resolve_p(family);
      const auto inst = instantiate(family, p);
      out << "subcommand=osc family=" << family.name() << " p=" << format_g12(p) << " seed=0\n";
      out << "ratios=" << join_g12(ratios(family, p)) << "\n";
      if (inst.coincident_maps) out << "degenerate=coincident maps\n";
      const auto witness = osc_search(inst, osc_candidates);
      if (witness) {
        out << "osc=verified\n";
        out << "witness=" << describe_witness(*witness) << "\n";
      } else {
        out << "osc=not proven (no witness among " << osc_candidates
            << " candidates; this is not a disproof)\n";
      }
      return 0;
    }

    if (*cmd_sweep) {
      const auto family = sweep_src.load();
      const auto grid = SweepGrid::parse(sweep_grid);
      SweepOptions options;
      options.eps = sweep_eps;
      options.boxcount = sweep_boxcount;
      options.point_budget = sweep_budget > 0 ? sweep_budget : default_budget();
      const auto report = sweep(family, grid, options);
      const std::string summary = sweep_summary_text(report);
      if (!sweep_out.empty()) {
        std::ofstream f(sweep_out);
        if (!f) throw InputError("cannot write output file '" + sweep_out + "'");
        f << "# ifskit sweep family=" << family.name() << " eps=" << format_g12(report.eps)
          << " seed=0\n";
        write_sweep_csv(report, f);
        out << "subcommand=sweep family=" << family.name() << " seed=0 output=" << sweep_out
            << "\n";
        out << summary;
      } else {
        out << "# ifskit sweep family=" << family.name() << " eps=" << format_g12(report.eps)
            << " seed=0\n";
        write_sweep_csv(report, out);
        std::istringstream lines(summary);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << "\n";
      }
      if (!sweep_summary.empty()) {
        std::ofstream f(sweep_summary);
        if (!f) throw InputError("cannot write summary file '" + sweep_summary + "'");
        f << summary;
      }
      return 0;
    }

    err << "error: no subcommand given\n";
    return 1;
  } catch (const CLI::CallForHelp&) {
    for (auto* sc : app.get_subcommands({}))
      if (sc->count() > 0) {
        out << sc->help();
        return 0;
      }
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ifskit
