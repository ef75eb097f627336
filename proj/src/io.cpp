#include "ifskit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "ifskit/errors.hpp"

namespace ifskit {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

double parse_double(std::string_view tok, const std::string& where) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw InputError(where + ": not a number: '" + std::string(tok) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PointCloud read_cloud_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  int lineno = 0;
  int dim = 0;
  std::vector<std::array<double, 2>> pts;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = source_name + ":" + std::to_string(lineno);
    if (dim == 0) {
      if (t == "x") dim = 1;
      else if (t == "x,y") dim = 2;
      else throw InputError(where + ": expected header 'x' or 'x,y'");
      continue;
    }
    const auto comma = t.find(',');
    if (dim == 1) {
      if (comma != std::string_view::npos)
        throw InputError(where + ": 1-D cloud rows must have a single column");
      pts.push_back({parse_double(t, where), 0.0});
    } else {
      if (comma == std::string_view::npos)
        throw InputError(where + ": 2-D cloud rows must have two columns");
      pts.push_back({parse_double(trim(t.substr(0, comma)), where),
                     parse_double(trim(t.substr(comma + 1)), where)});
    }
  }
  if (dim == 0) throw InputError(source_name + ": missing 'x' or 'x,y' header");
  if (pts.empty()) throw InputError(source_name + ": cloud file has no points");
  // External files carry no covering guarantee of their own; callers treat
  // them as exact.
  return PointCloud(dim, std::move(pts), 0.0, Provenance::external);
}

PointCloud read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open cloud file '" + path + "'");
  return read_cloud_csv(in, path);
}

void write_cloud_csv(const PointCloud& cloud, std::ostream& out,
                     const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  out << (cloud.dim() == 1 ? "x" : "x,y") << "\n";
  for (const auto& p : cloud.raw()) {
    out << format_g12(p[0]);
    if (cloud.dim() == 2) out << "," << format_g12(p[1]);
    out << "\n";
  }
}

void write_cloud_csv_file(const PointCloud& cloud, const std::string& path,
                          const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write cloud file '" + path + "'");
  write_cloud_csv(cloud, out, comments);
}

void write_pgm(const PointCloud& cloud, std::ostream& out, int width) {
  if (cloud.dim() != 2) throw InputError("PGM export requires a 2-D cloud");
  if (width < 1 || width > 1 << 15) throw InputError("PGM width must lie in [1, 32768]");
  const auto lo = cloud.bbox_min();
  const auto hi = cloud.bbox_max();
  const double ex = hi[0] - lo[0];
  const double ey = hi[1] - lo[1];
  int height = ex > 0.0 ? std::max(1, static_cast<int>(std::lround(width * ey / ex))) : width;
  height = std::min(height, 1 << 15);
  std::vector<unsigned char> img(static_cast<std::size_t>(width) * height, 255);
  for (const auto& p : cloud.raw()) {
    const double fx = ex > 0.0 ? (p[0] - lo[0]) / ex : 0.5;
    const double fy = ey > 0.0 ? (p[1] - lo[1]) / ey : 0.5;
    int px = static_cast<int>(std::lround(fx * (width - 1)));
    int py = static_cast<int>(std::lround((1.0 - fy) * (height - 1)));  // row 0 at the top
    px = std::clamp(px, 0, width - 1);
    py = std::clamp(py, 0, height - 1);
    img[static_cast<std::size_t>(py) * width + px] = 0;
  }
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data()), static_cast<std::streamsize>(img.size()));
}

void write_pgm_file(const PointCloud& cloud, const std::string& path, int width) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write PGM file '" + path + "'");
  write_pgm(cloud, out, width);
}

}  // namespace ifskit
