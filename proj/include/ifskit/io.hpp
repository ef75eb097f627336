#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifskit/cloud.hpp"

namespace ifskit {

// All CLI-facing floating output uses 12 significant digits.
std::string format_g12(double v);

// Point-cloud CSV: optional '#' comment lines, a "x" or "x,y" header, then
// one point per row in decimal.
PointCloud read_cloud_csv(std::istream& in, const std::string& source_name);
PointCloud read_cloud_csv_file(const std::string& path);
void write_cloud_csv(const PointCloud& cloud, std::ostream& out,
                     const std::vector<std::string>& comments = {});
void write_cloud_csv_file(const PointCloud& cloud, const std::string& path,
                          const std::vector<std::string>& comments = {});

// Binary PGM (P5) rendering of a 2-D cloud: white background, black set
// pixels; height follows the bounding-box aspect ratio.
void write_pgm(const PointCloud& cloud, std::ostream& out, int width);
void write_pgm_file(const PointCloud& cloud, const std::string& path, int width);

}  // namespace ifskit
