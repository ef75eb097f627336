#include "ifskit/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ifskit {

namespace {

void check_scale_range(const Polynomial& scale, const ParamDomain& dom, std::size_t map_index) {
  const auto range = scale.range_on(dom.lo, dom.hi);
  const double margin = range.rigorous ? 0.0 : 1e-6;
  if (!(range.lo > margin && range.hi < 1.0 - margin)) {
    std::ostringstream msg;
    msg << "maps[" << map_index << "].scale: polynomial may leave (0,1) on ["
        << dom.lo << ", " << dom.hi << "] (bounded range [" << range.lo << ", " << range.hi
        << "], " << (range.rigorous ? "Bernstein enclosure" : "sampled with 1e-6 margin") << ")";
    throw InputError(msg.str());
  }
}

}  // namespace

IFSFamily::IFSFamily(std::string name, int dim, ParamDomain domain,
                     std::vector<MapTemplate> templates)
    : name_(std::move(name)), dim_(dim), domain_(domain), templates_(std::move(templates)) {
  if (dim_ != 1 && dim_ != 2) throw InputError("family dim must be 1 or 2");
  if (!std::isfinite(domain_.lo) || !std::isfinite(domain_.hi) || domain_.lo > domain_.hi)
    throw InputError("family domain must be a finite interval with lo <= hi");
  if (templates_.empty()) throw InputError("family needs at least one map");
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const auto& t = templates_[i];
    if (t.translation.size() != static_cast<std::size_t>(dim_)) {
      std::ostringstream msg;
      msg << "maps[" << i << "].translation: expected " << dim_ << " coefficient list(s), got "
          << t.translation.size();
      throw InputError(msg.str());
    }
    check_scale_range(t.scale, domain_, i);
  }
}

bool operator==(const IFSFamily& a, const IFSFamily& b) {
  if (a.name_ != b.name_ || a.dim_ != b.dim_ || a.domain_.lo != b.domain_.lo ||
      a.domain_.hi != b.domain_.hi || a.templates_.size() != b.templates_.size())
    return false;
  for (std::size_t i = 0; i < a.templates_.size(); ++i) {
    const auto& ta = a.templates_[i];
    const auto& tb = b.templates_[i];
    if (!(ta.scale == tb.scale) || !(ta.rotation == tb.rotation) || ta.reflect != tb.reflect ||
        ta.translation != tb.translation)
      return false;
  }
  return true;
}

double IFSInstance::max_ratio() const {
  double r = 0.0;
  for (const auto& m : maps) r = std::max(r, m.scale());
  return r;
}

IFSInstance instantiate(const IFSFamily& family, double p) {
  if (!std::isfinite(p) || p < family.domain().lo || p > family.domain().hi) {
    std::ostringstream msg;
    msg << "parameter p=" << p << " outside domain [" << family.domain().lo << ", "
        << family.domain().hi << "]";
    throw InputError(msg.str());
  }
  IFSInstance inst;
  inst.p = p;
  inst.dim = family.dim();
  inst.maps.reserve(family.map_count());
  for (const auto& t : family.templates()) {
    const double s = t.scale(p);
    if (!(s > 0.0 && s < 1.0)) {
      std::ostringstream msg;
      msg << "scale(" << p << ")=" << s << " is not a contraction ratio in (0,1)";
      throw DomainError(msg.str());
    }
    const double rot = family.dim() == 2 ? t.rotation(p) : 0.0;
    if (family.dim() == 1) {
      inst.maps.push_back(SimilarityMap::line(s, t.translation[0](p), t.reflect));
    } else {
      inst.maps.push_back(
          SimilarityMap::plane(s, rot, t.translation[0](p), t.translation[1](p), t.reflect));
    }
  }
  for (std::size_t i = 0; i < inst.maps.size() && !inst.coincident_maps; ++i)
    for (std::size_t j = i + 1; j < inst.maps.size(); ++j)
      if (inst.maps[i] == inst.maps[j]) {
        inst.coincident_maps = true;
        break;
      }
  return inst;
}

std::vector<double> ratios(const IFSFamily& family, double p) {
  const auto inst = instantiate(family, p);
  std::vector<double> r;
  r.reserve(inst.maps.size());
  for (const auto& m : inst.maps) r.push_back(contraction_ratio(m));
  return r;
}

namespace {

using nlohmann::json;

Polynomial parse_poly(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw InputError(where + ": expected a non-empty coefficient array (constant term first)");
  std::vector<double> c;
  c.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(where + ": coefficients must be numbers");
    c.push_back(v.get<double>());
  }
  return Polynomial(std::move(c));
}

const std::vector<std::string> kBuiltinNames = {"cantor", "example26", "sierpinski"};

}  // namespace

const std::vector<std::string>& builtin_names() { return kBuiltinNames; }

IFSFamily builtin_family(const std::string& name) {
  if (name == "cantor") {
    // Middle-thirds maps x/3 and x/3 + 2/3; constant in p.
    MapTemplate a{Polynomial::constant(1.0 / 3.0), Polynomial::constant(0.0), false,
                  {Polynomial::constant(0.0)}};
    MapTemplate b{Polynomial::constant(1.0 / 3.0), Polynomial::constant(0.0), false,
                  {Polynomial::constant(2.0 / 3.0)}};
    return IFSFamily("cantor", 1, {0.0, 1.0}, {a, b});
  }
  if (name == "example26") {
    // f1(p,x) = x/3 - p, f2(p,x) = x/3 + p on P = [0,1]; the maps coincide
    // at p = 0.
    MapTemplate a{Polynomial::constant(1.0 / 3.0), Polynomial::constant(0.0), false,
                  {Polynomial({0.0, -1.0})}};
    MapTemplate b{Polynomial::constant(1.0 / 3.0), Polynomial::constant(0.0), false,
                  {Polynomial({0.0, 1.0})}};
    return IFSFamily("example26", 1, {0.0, 1.0}, {a, b});
  }
  if (name == "sierpinski") {
    const double h = std::sqrt(3.0) / 4.0;
    auto half = Polynomial::constant(0.5);
    auto zero = Polynomial::constant(0.0);
    MapTemplate a{half, zero, false, {zero, zero}};
    MapTemplate b{half, zero, false, {Polynomial::constant(0.5), zero}};
    MapTemplate c{half, zero, false, {Polynomial::constant(0.25), Polynomial::constant(h)}};
    return IFSFamily("sierpinski", 2, {0.0, 1.0}, {a, b, c});
  }
  std::ostringstream msg;
  msg << "unknown builtin family '" << name << "' (known: ";
  for (std::size_t i = 0; i < kBuiltinNames.size(); ++i)
    msg << (i ? ", " : "") << kBuiltinNames[i];
  msg << ")";
  throw InputError(msg.str());
}

IFSFamily parse_family(const std::string& config_text) {
  json j;
  try {
    j = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");

  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw InputError("builtin: expected a string");
    return builtin_family(j["builtin"].get<std::string>());
  }

  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw InputError("dim: required integer field (1 or 2)");
  const int dim = j["dim"].get<int>();

  ParamDomain dom;
  if (j.contains("domain")) {
    const auto& d = j["domain"];
    if (!d.is_object() || !d.contains("lo") || !d.contains("hi") || !d["lo"].is_number() ||
        !d["hi"].is_number())
      throw InputError("domain: expected {\"lo\": number, \"hi\": number}");
    dom.lo = d["lo"].get<double>();
    dom.hi = d["hi"].get<double>();
  }

  if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
    throw InputError("maps: required non-empty array (or use \"builtin\")");

  std::vector<MapTemplate> templates;
  std::size_t idx = 0;
  for (const auto& m : j["maps"]) {
    const std::string where = "maps[" + std::to_string(idx) + "]";
    if (!m.is_object()) throw InputError(where + ": expected an object");
    MapTemplate t;
    if (!m.contains("scale")) throw InputError(where + ".scale: required");
    t.scale = parse_poly(m["scale"], where + ".scale");
    if (m.contains("rotation")) {
      if (dim == 1) throw InputError(where + ".rotation: not allowed for dim 1");
      t.rotation = parse_poly(m["rotation"], where + ".rotation");
    }
    if (m.contains("reflect")) {
      if (!m["reflect"].is_boolean()) throw InputError(where + ".reflect: expected a boolean");
      t.reflect = m["reflect"].get<bool>();
    }
    if (!m.contains("translation") || !m["translation"].is_array() ||
        m["translation"].size() != static_cast<std::size_t>(dim))
      throw InputError(where + ".translation: expected " + std::to_string(dim) +
                       " coefficient list(s)");
    for (std::size_t k = 0; k < m["translation"].size(); ++k)
      t.translation.push_back(
          parse_poly(m["translation"][k], where + ".translation[" + std::to_string(k) + "]"));
    templates.push_back(std::move(t));
    ++idx;
  }

  const std::string name = j.contains("name") && j["name"].is_string()
                               ? j["name"].get<std::string>()
                               : std::string("family");
  return IFSFamily(name, dim, dom, std::move(templates));
}

std::string serialize_family(const IFSFamily& family) {
  json j;
  j["name"] = family.name();
  j["dim"] = family.dim();
  j["domain"] = {{"lo", family.domain().lo}, {"hi", family.domain().hi}};
  json maps = json::array();
  for (const auto& t : family.templates()) {
    json m;
    m["scale"] = t.scale.coefficients();
    if (family.dim() == 2) m["rotation"] = t.rotation.coefficients();
    m["reflect"] = t.reflect;
    json tr = json::array();
    for (const auto& poly : t.translation) tr.push_back(poly.coefficients());
    m["translation"] = tr;
    maps.push_back(std::move(m));
  }
  j["maps"] = std::move(maps);
  return j.dump(2);
}

}  // namespace ifskit
