#include "toricsm/constructible.hpp"

#include <algorithm>
#include <sstream>

#include "toricsm/error.hpp"

namespace toricsm {

Integer ConstructibleFunction::value(const Cone& c) const {
  auto it = values_.find(c);
  return it == values_.end() ? Integer(0) : it->second;
}

void ConstructibleFunction::set(const Cone& c, const Integer& value) {
  if (!fan_ || !fan_->has_cone(c)) throw_precondition("cone {" + c.key() + "} is not in the function's fan");
  if (value == 0) values_.erase(c);
  else values_[c] = value;
}

ConstructibleFunction& ConstructibleFunction::operator+=(const ConstructibleFunction& other) {
  if (!fan_) fan_ = other.fan_;
  for (const auto& [cone, v] : other.values_) set(cone, value(cone) + v);
  return *this;
}

ConstructibleFunction& ConstructibleFunction::operator-=(const ConstructibleFunction& other) {
  if (!fan_) fan_ = other.fan_;
  for (const auto& [cone, v] : other.values_) set(cone, value(cone) - v);
  return *this;
}

bool ConstructibleFunction::operator==(const ConstructibleFunction& other) const {
  if (fan_ != other.fan_ && (!fan_ || !other.fan_ || fan_->fingerprint() != other.fan_->fingerprint())) return false;
  return values_ == other.values_;
}

std::string ConstructibleFunction::to_string() const {
  if (values_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cone, v] : values_) {
    os << (first ? "" : ", ") << '[' << cone.key() << "]=" << v;
    first = false;
  }
  return os.str();
}

ConstructibleFunction constant_function(const FanPtr& fan, const Integer& value) {
  ConstructibleFunction phi(fan);
  for (const Cone& c : fan->cones()) phi.set(c, value);
  return phi;
}

ConstructibleFunction indicator_of_orbit_closure(const FanPtr& fan, const Cone& cone) {
  if (!fan->has_cone(cone)) throw_precondition("cone {" + cone.key() + "} is not in fan " + fan->name());
  ConstructibleFunction phi(fan);
  for (const Cone& c : fan->cones())
    if (c.contains(cone)) phi.set(c, 1);
  return phi;
}

ConstructibleFunction indicator_of_open(const FanPtr& fan, const std::vector<int>& boundary_rays) {
  ConstructibleFunction phi(fan);
  for (const Cone& c : boundary_divisor_cones(*fan, boundary_rays).inside_open) phi.set(c, 1);
  return phi;
}

namespace {

template <typename Op>
ConstructibleFunction pointwise(const ConstructibleFunction& a, const ConstructibleFunction& b, Op op) {
  ConstructibleFunction out(a.fan());
  for (const Cone& c : a.fan()->cones()) out.set(c, op(a.value(c), b.value(c)));
  return out;
}

}  // namespace

ConstructibleFunction pointwise_max(const ConstructibleFunction& a, const ConstructibleFunction& b) {
  return pointwise(a, b, [](const Integer& x, const Integer& y) { return x < y ? y : x; });
}

ConstructibleFunction pointwise_min(const ConstructibleFunction& a, const ConstructibleFunction& b) {
  return pointwise(a, b, [](const Integer& x, const Integer& y) { return x < y ? x : y; });
}

Integer euler_characteristic(const ConstructibleFunction& phi) {
  const FanPtr& fan = phi.fan();
  if (!fan || !fan->is_complete()) throw_precondition("fan not complete");
  Integer total = 0;
  for (const auto& [cone, v] : phi.values())
    if (static_cast<int>(cone.dim()) == fan->dim()) total += v;
  return total;
}

ConstructibleFunction pushforward_function(const ToricMorphism& m, const ConstructibleFunction& phi) {
  if (!m.source->is_complete()) throw_precondition("source not complete");
  if (!check_compatibility(m)) throw_precondition("incompatible morphism");
  ConstructibleFunction out(m.target);
  for (const auto& [sigma, v] : phi.values()) {
    const std::optional<Cone> tau = image_cone(m, sigma);
    if (!tau) throw_precondition("incompatible morphism");
    // The orbit map is a torus homomorphism; its fibers have χ_c equal to
    // their point count when finite and 0 when positive-dimensional.
    const std::optional<Integer> fiber_points = orbit_map_degree(m, sigma, *tau);
    if (fiber_points) out.set(*tau, out.value(*tau) + v * *fiber_points);
  }
  return out;
}

}  // namespace toricsm
