#include "toricsm/io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include "toricsm/error.hpp"

namespace toricsm::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::filesystem::path resolve(const std::filesystem::path& referrer, const json& ref) {
  if (!ref.is_string()) parse_error("fan reference must be a path string");
  std::filesystem::path p = ref.get<std::string>();
  return p.is_absolute() ? p : referrer.parent_path() / p;
}

int small_int(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > std::numeric_limits<int>::max()) parse_error(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) parse_error("bad integer string \"" + j.get<std::string>() + "\"");
    return v;
  }
  parse_error("expected an integer");
}

json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

FanPtr parse_fan_unchecked(const json& j) {
  if (!j.is_object()) parse_error("fan file must hold a JSON object");
  const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "fan";
  const int dim = small_int(field(j, "dim"), "dim");
  const json& rays_json = field(j, "rays");
  if (!rays_json.is_array()) parse_error("rays must be an array");
  std::vector<LatticeVector> rays;
  for (const json& r : rays_json) {
    if (!r.is_array()) parse_error("each ray must be an array");
    LatticeVector v;
    for (const json& x : r) v.push_back(integer_from_json(x));
    rays.push_back(std::move(v));
  }
  const json& cones_json = field(j, "max_cones");
  if (!cones_json.is_array()) parse_error("max_cones must be an array");
  std::vector<Cone> cones;
  for (const json& c : cones_json) {
    if (!c.is_array()) parse_error("each cone must be an array of ray indices");
    std::vector<int> idx;
    for (const json& x : c) idx.push_back(small_int(x, "ray index"));
    cones.emplace_back(std::move(idx));
  }
  return Fan::from_maximal_cones(name, dim, std::move(rays), std::move(cones));
}

FanPtr parse_fan(const json& j) {
  FanPtr fan = parse_fan_unchecked(j);
  if (!fan->report().valid()) {
    std::string msg = "invalid fan " + fan->name() + ":";
    for (const FanIssue& issue : fan->report().issues) msg += " " + issue.message + ";";
    throw Error(ErrorKind::Validation, msg);
  }
  if (!fan->is_smooth()) throw Error(ErrorKind::Validation, "fan " + fan->name() + " is not smooth");
  return fan;
}

json fan_to_json(const Fan& fan) {
  json rays = json::array();
  for (const LatticeVector& r : fan.rays()) {
    json v = json::array();
    for (const Integer& x : r) v.push_back(integer_to_json(x));
    rays.push_back(std::move(v));
  }
  json cones = json::array();
  for (const Cone& c : fan.maximal_cones()) cones.push_back(c.rays);
  return json{{"name", fan.name()}, {"dim", fan.dim()}, {"rays", std::move(rays)}, {"max_cones", std::move(cones)}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

FanPtr load_fan(const std::filesystem::path& path) { return parse_fan(read_json(path)); }

ToricMorphism load_morphism(const std::filesystem::path& path) {
  const json j = read_json(path);
  FanPtr source = load_fan(resolve(path, field(j, "source")));
  FanPtr target = load_fan(resolve(path, field(j, "target")));
  const json& rows = field(j, "matrix");
  if (!rows.is_array()) parse_error("matrix must be an array of rows");
  const auto target_dim = static_cast<std::size_t>(target->dim());
  const auto source_dim = static_cast<std::size_t>(source->dim());
  if (rows.size() != target_dim) throw Error(ErrorKind::Validation, "matrix must have one row per target dimension");
  LatticeMatrix m(target_dim, source_dim);
  for (std::size_t r = 0; r < target_dim; ++r) {
    if (!rows[r].is_array() || rows[r].size() != source_dim)
      throw Error(ErrorKind::Validation, "matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < source_dim; ++c) m(r, c) = integer_from_json(rows[r][c]);
  }
  ToricMorphism morphism = make_morphism(std::move(source), std::move(target), std::move(m));
  if (!check_compatibility(morphism))
    throw Error(ErrorKind::Validation, "morphism " + path.filename().string() + " maps a cone outside every target cone");
  return morphism;
}

json morphism_to_json(const ToricMorphism& m, const std::string& source_ref, const std::string& target_ref) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.map.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.map.cols(); ++c) row.push_back(integer_to_json(m.map(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"source", source_ref}, {"target", target_ref}, {"matrix", std::move(rows)}};
}

ConeCoefficients coefficients_from_json(const json& j, const Fan& fan) {
  if (!j.is_object()) parse_error("cone values must be an object keyed by cone");
  ConeCoefficients out;
  for (const auto& [key, value] : j.items()) {
    const Cone c = Cone::from_key(key);
    if (!fan.has_cone(c)) throw Error(ErrorKind::Validation, "cone {" + key + "} is not in fan " + fan.name());
    const Integer v = integer_from_json(value);
    if (v != 0) out[c] += v;
  }
  return out;
}

json coefficients_to_json(const ConeCoefficients& c) {
  json out = json::object();
  for (const auto& [cone, value] : c) out[cone.key()] = integer_to_json(value);
  return out;
}

ConstructibleFunction parse_function(const json& j, const FanPtr& fan) {
  ConstructibleFunction phi(fan);
  for (const auto& [cone, value] : coefficients_from_json(field(j, "values"), *fan)) phi.set(cone, value);
  return phi;
}

ConstructibleFunction load_function(const std::filesystem::path& path, FanPtr fan) {
  const json j = read_json(path);
  if (!fan) fan = load_fan(resolve(path, field(j, "fan")));
  return parse_function(j, fan);
}

json function_to_json(const ConstructibleFunction& phi, const std::string& fan_ref) {
  return json{{"fan", fan_ref}, {"values", coefficients_to_json(phi.values())}};
}

CycleClass load_class(const std::filesystem::path& path, FanPtr fan) {
  const json j = read_json(path);
  if (!fan) fan = load_fan(resolve(path, field(j, "fan")));
  return CycleClass(fan, coefficients_from_json(field(j, "class"), *fan));
}

json class_to_json(const CycleClass& alpha, const std::string& fan_ref) {
  return json{{"fan", fan_ref}, {"class", coefficients_to_json(alpha.coefficients())}};
}

GoodClosure load_good_closure(const std::filesystem::path& path) {
  const json j = read_json(path);
  FanPtr fan = load_fan(resolve(path, field(j, "fan")));
  const json& b = field(j, "boundary_rays");
  if (!b.is_array()) parse_error("boundary_rays must be an array");
  std::vector<int> rays;
  for (const json& r : b) rays.push_back(small_int(r, "boundary ray"));
  return make_good_closure(std::move(fan), std::move(rays));
}

json check_to_json(const CheckResult& r) {
  json out{{"check", r.check},
           {"instance", r.instance},
           {"pass", r.pass},
           {"lhs", coefficients_to_json(r.lhs)},
           {"rhs", coefficients_to_json(r.rhs)},
           {"degree_lhs", r.degree_lhs ? integer_to_json(*r.degree_lhs) : json(nullptr)},
           {"degree_rhs", r.degree_rhs ? integer_to_json(*r.degree_rhs) : json(nullptr)}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace toricsm::io
