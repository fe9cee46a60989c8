#pragma once

// Chow groups of smooth complete toric varieties, written in the (redundant)
// basis of orbit closures [V(σ)] and compared modulo rational equivalence.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "toricsm/fan.hpp"

namespace toricsm {

using ConeCoefficients = std::map<Cone, Integer, GradedConeOrder>;

/// Integer combination of orbit-closure classes; cone σ stands for [V(σ)],
/// a cycle of dimension n - dim σ.
class CycleClass {
 public:
  CycleClass() = default;
  explicit CycleClass(FanPtr fan) : fan_(std::move(fan)) {}
  CycleClass(FanPtr fan, ConeCoefficients coefficients);

  const FanPtr& fan() const { return fan_; }
  const ConeCoefficients& coefficients() const { return coefficients_; }
  Integer coefficient(const Cone& c) const;
  bool is_zero() const { return coefficients_.empty(); }

  /// Adds `value` to the coefficient of `cone` (which must belong to the fan).
  void add(const Cone& cone, const Integer& value);

  /// Terms of cycle dimension `d`.
  CycleClass component(int d) const;

  CycleClass& operator+=(const CycleClass& other);
  CycleClass& operator-=(const CycleClass& other);
  CycleClass& operator*=(const Integer& scalar);
  friend CycleClass operator+(CycleClass a, const CycleClass& b) { return a += b; }
  friend CycleClass operator-(CycleClass a, const CycleClass& b) { return a -= b; }
  friend CycleClass operator*(const Integer& s, CycleClass a) { return a *= s; }

  /// Literal equality of coefficient maps (not rational equivalence).
  bool identical(const CycleClass& other) const;

  /// "1*[0] + 3*[0,1]" style, graded by dimension descending.
  std::string to_string() const;

 private:
  void require_same_fan(const CycleClass& other) const;

  FanPtr fan_;
  ConeCoefficients coefficients_;
};

/// Picks m with <m, u_ray> = 1 and <m, u_ρ> = 0 for the other rays ρ of the
/// cone. Any valid choice gives rationally equivalent products.
using LinearFormChooser = std::function<LatticeVector(const Fan&, int ray, const Cone&)>;

LatticeVector default_linear_form(const Fan& fan, int ray, const Cone& cone);

CycleClass fundamental_class(const FanPtr& fan);

/// D_ray · alpha.
CycleClass multiply_divisor(const FanPtr& fan, int ray, const CycleClass& alpha,
                            const LinearFormChooser& chooser = default_linear_form);

/// (1 + D_r1)(1 + D_r2)... · alpha, expanded left to right.
CycleClass multiply_divisor_polynomial(const FanPtr& fan, const std::vector<int>& factor_rays,
                                       const CycleClass& alpha);

struct RelationBasis {
  FanPtr fan;
  int grade = 0;  // codimension of the cycles the relations live on
  std::vector<CycleClass> generators;
};

/// div(χ^m) on V(τ) for every τ of dimension grade-1 and every m in a basis
/// of τ^⊥ ∩ M.
RelationBasis relation_basis(const FanPtr& fan, int grade);

/// Rational equivalence, decided grade by grade by integer span membership.
bool classes_equal(const CycleClass& a, const CycleClass& b);

/// Proper push-forward along a toric morphism with complete source.
CycleClass pushforward_cycle(const ToricMorphism& m, const CycleClass& alpha);

/// Degree of the dimension-zero part.
Integer degree(const CycleClass& alpha);

}  // namespace toricsm
