#pragma once

#include <string>
#include <vector>

#include "ifskit/geometry.hpp"
#include "ifskit/polynomial.hpp"

namespace ifskit {

// Closed bounded parameter interval; compact, so the continuity statements
// for attractors and dimensions apply on it.
struct ParamDomain {
  double lo = 0.0;
  double hi = 1.0;
};

// One map of a parameter family, every coefficient a polynomial in p.
// Polynomial dependence makes p -> f(p, x) continuous by construction and
// keeps the scale-range check tractable.
struct MapTemplate {
  Polynomial scale;
  Polynomial rotation;  // ignored for 1-D families
  bool reflect = false;
  std::vector<Polynomial> translation;  // one polynomial per coordinate
};

class IFSFamily {
 public:
  // Validates: dim in {1,2}, lo <= hi finite, n >= 1, translation arity, and
  // scale(p) in (0,1) across the whole domain (Bernstein enclosure for
  // degree <= 8, dense sampling with a 1e-6 margin above).
  IFSFamily(std::string name, int dim, ParamDomain domain, std::vector<MapTemplate> templates);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const ParamDomain& domain() const { return domain_; }
  const std::vector<MapTemplate>& templates() const { return templates_; }
  std::size_t map_count() const { return templates_.size(); }

  friend bool operator==(const IFSFamily& a, const IFSFamily& b);

 private:
  std::string name_;
  int dim_;
  ParamDomain domain_;
  std::vector<MapTemplate> templates_;
};

// A family evaluated at one parameter value.
struct IFSInstance {
  std::vector<SimilarityMap> maps;
  double p = 0.0;
  int dim = 1;
  // Set when two maps coincide exactly (all fields equal); such systems are
  // permitted but their Moran value need not be the true dimension.
  bool coincident_maps = false;

  double max_ratio() const;
};

// Evaluate every template polynomial at p. InputError if p is outside the
// domain; DomainError if some scale(p) leaves (0,1).
IFSInstance instantiate(const IFSFamily& family, double p);

// The similarity ratio vector r(p); agrees exactly with contraction_ratio of
// each instantiated map.
std::vector<double> ratios(const IFSFamily& family, double p);

// JSON config: {"name","dim","domain":{"lo","hi"},"builtin":...} or the same
// with "maps": [{"scale":[c0,...],"rotation":[...],"reflect":bool,
// "translation":[[c0,...],...]}]. Coefficient lists are constant-term first.
IFSFamily parse_family(const std::string& config_text);
std::string serialize_family(const IFSFamily& family);

// Built-in families: "cantor", "example26", "sierpinski".
IFSFamily builtin_family(const std::string& name);
const std::vector<std::string>& builtin_names();

}  // namespace ifskit
