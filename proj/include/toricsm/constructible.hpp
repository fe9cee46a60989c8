#pragma once

// Torus-invariant constructible functions: one integer per orbit.

#include <string>

#include "toricsm/chow.hpp"

namespace toricsm {

class ConstructibleFunction {
 public:
  ConstructibleFunction() = default;
  explicit ConstructibleFunction(FanPtr fan) : fan_(std::move(fan)) {}

  const FanPtr& fan() const { return fan_; }
  /// Nonzero values only; absent cones are 0.
  const ConeCoefficients& values() const { return values_; }
  Integer value(const Cone& c) const;
  void set(const Cone& c, const Integer& value);

  ConstructibleFunction& operator+=(const ConstructibleFunction& other);
  ConstructibleFunction& operator-=(const ConstructibleFunction& other);
  friend ConstructibleFunction operator+(ConstructibleFunction a, const ConstructibleFunction& b) { return a += b; }
  friend ConstructibleFunction operator-(ConstructibleFunction a, const ConstructibleFunction& b) { return a -= b; }
  bool operator==(const ConstructibleFunction& other) const;

  std::string to_string() const;

 private:
  FanPtr fan_;
  ConeCoefficients values_;
};

ConstructibleFunction constant_function(const FanPtr& fan, const Integer& value);

/// 1 on the orbits inside V(cone).
ConstructibleFunction indicator_of_orbit_closure(const FanPtr& fan, const Cone& cone);

/// 1 on the orbits of U = X minus the divisors of `boundary_rays`.
ConstructibleFunction indicator_of_open(const FanPtr& fan, const std::vector<int>& boundary_rays);

/// Pointwise max / min, for unions and intersections of indicator supports.
ConstructibleFunction pointwise_max(const ConstructibleFunction& a, const ConstructibleFunction& b);
ConstructibleFunction pointwise_min(const ConstructibleFunction& a, const ConstructibleFunction& b);

/// Integral against χ_c: each orbit is a torus, so only fixed points count.
Integer euler_characteristic(const ConstructibleFunction& phi);

ConstructibleFunction pushforward_function(const ToricMorphism& m, const ConstructibleFunction& phi);

}  // namespace toricsm
