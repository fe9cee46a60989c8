#include "toricsm/chow.hpp"

#include <mutex>
#include <sstream>
#include <utility>

#include "toricsm/error.hpp"

namespace toricsm {

// ---------------------------------------------------------------- CycleClass

CycleClass::CycleClass(FanPtr fan, ConeCoefficients coefficients) : fan_(std::move(fan)) {
  for (auto& [cone, value] : coefficients) add(cone, value);
}

Integer CycleClass::coefficient(const Cone& c) const {
  auto it = coefficients_.find(c);
  return it == coefficients_.end() ? Integer(0) : it->second;
}

void CycleClass::add(const Cone& cone, const Integer& value) {
  if (value == 0) return;
  if (!fan_ || !fan_->has_cone(cone))
    throw_precondition("cone {" + cone.key() + "} is not in the class's fan");
  auto [it, inserted] = coefficients_.try_emplace(cone, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coefficients_.erase(it);
  }
}

CycleClass CycleClass::component(int d) const {
  CycleClass out(fan_);
  for (const auto& [cone, value] : coefficients_)
    if (fan_->dim() - static_cast<int>(cone.dim()) == d) out.coefficients_.emplace(cone, value);
  return out;
}

void CycleClass::require_same_fan(const CycleClass& other) const {
  if (fan_ == other.fan_) return;
  if (!fan_ || !other.fan_ || fan_->fingerprint() != other.fan_->fingerprint())
    throw_precondition("classes live on different fans");
}

CycleClass& CycleClass::operator+=(const CycleClass& other) {
  if (!fan_) fan_ = other.fan_;
  require_same_fan(other);
  for (const auto& [cone, value] : other.coefficients_) add(cone, value);
  return *this;
}

CycleClass& CycleClass::operator-=(const CycleClass& other) {
  if (!fan_) fan_ = other.fan_;
  require_same_fan(other);
  for (const auto& [cone, value] : other.coefficients_) add(cone, -value);
  return *this;
}

CycleClass& CycleClass::operator*=(const Integer& scalar) {
  if (scalar == 0) {
    coefficients_.clear();
    return *this;
  }
  for (auto& [cone, value] : coefficients_) value *= scalar;
  return *this;
}

bool CycleClass::identical(const CycleClass& other) const {
  require_same_fan(other);
  return coefficients_ == other.coefficients_;
}

std::string CycleClass::to_string() const {
  if (coefficients_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [cone, value] : coefficients_) {
    if (!first) os << (value < 0 ? " - " : " + ");
    else if (value < 0) os << '-';
    os << abs(value) << "*[" << cone.key() << ']';
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- products

namespace {

void require_smooth_complete(const Fan& fan) {
  if (!fan.is_smooth() || !fan.is_complete()) throw_precondition("fan " + fan.name() + " is not smooth and complete");
}

}  // namespace

LatticeVector default_linear_form(const Fan& fan, int ray, const Cone& cone) {
  const LatticeMatrix pairing = fan.ray_matrix(cone).transposed();
  LatticeVector target(cone.dim());
  for (std::size_t i = 0; i < cone.dim(); ++i) target[i] = cone.rays[i] == ray ? 1 : 0;
  auto m = solve_integer(pairing, target);
  if (!m) throw_precondition("cone {" + cone.key() + "} is not smooth");
  return *m;
}

CycleClass fundamental_class(const FanPtr& fan) {
  CycleClass out(fan);
  out.add(Cone{}, 1);
  return out;
}

CycleClass multiply_divisor(const FanPtr& fan, int ray, const CycleClass& alpha, const LinearFormChooser& chooser) {
  require_smooth_complete(*fan);
  if (ray < 0 || static_cast<std::size_t>(ray) >= fan->ray_count()) throw_precondition("ray index out of range");
  CycleClass out(fan);
  for (const auto& [sigma, value] : alpha.coefficients()) {
    if (!sigma.contains(ray)) {
      const Cone joined = sigma.with(ray);
      if (fan->has_cone(joined)) out.add(joined, value);
      continue;
    }
    // Self-intersection: move D_ray off sigma by div(χ^m).
    const LatticeVector m = chooser(*fan, ray, sigma);
    for (std::size_t other = 0; other < fan->ray_count(); ++other) {
      const int r = static_cast<int>(other);
      if (sigma.contains(r)) continue;
      const Cone joined = sigma.with(r);
      if (!fan->has_cone(joined)) continue;
      const Integer pairing = dot(m, fan->rays()[other]);
      if (pairing != 0) out.add(joined, -pairing * value);
    }
  }
  return out;
}

CycleClass multiply_divisor_polynomial(const FanPtr& fan, const std::vector<int>& factor_rays,
                                       const CycleClass& alpha) {
  CycleClass out = alpha;
  for (int r : factor_rays) out += multiply_divisor(fan, r, out);
  return out;
}

// ---------------------------------------------------------------- relations

RelationBasis relation_basis(const FanPtr& fan, int grade) {
  require_smooth_complete(*fan);
  if (grade < 0 || grade > fan->dim()) throw_precondition("grade out of range");
  RelationBasis basis{fan, grade, {}};
  if (grade == 0) return basis;
  for (const Cone& tau : fan->cones_of_dim(static_cast<std::size_t>(grade - 1))) {
    const LatticeMatrix orthogonal = integer_kernel(fan->ray_matrix(tau).transposed());
    for (std::size_t j = 0; j < orthogonal.cols(); ++j) {
      const LatticeVector m = orthogonal.column(j);
      CycleClass relation(fan);
      for (std::size_t r = 0; r < fan->ray_count(); ++r) {
        const int ray = static_cast<int>(r);
        if (tau.contains(ray)) continue;
        const Cone sigma = tau.with(ray);
        if (fan->has_cone(sigma)) relation.add(sigma, dot(m, fan->rays()[r]));
      }
      if (!relation.is_zero()) basis.generators.push_back(std::move(relation));
    }
  }
  return basis;
}

namespace {

struct GradeRelations {
  std::vector<Cone> cones;
  std::map<Cone, std::size_t> position;
  SpanMembership membership;
};

GradeRelations build_grade(const FanPtr& fan, int grade) {
  std::vector<Cone> cones = fan->cones_of_dim(static_cast<std::size_t>(grade));
  std::map<Cone, std::size_t> position;
  for (std::size_t i = 0; i < cones.size(); ++i) position.emplace(cones[i], i);
  const RelationBasis basis = relation_basis(fan, grade);
  LatticeMatrix generators(cones.size(), basis.generators.size());
  for (std::size_t j = 0; j < basis.generators.size(); ++j)
    for (const auto& [cone, value] : basis.generators[j].coefficients()) generators(position.at(cone), j) = value;
  return GradeRelations{std::move(cones), std::move(position), SpanMembership(generators)};
}

// Relation lattices memoized per (fan, grade); fans are immutable so the
// fingerprint is a sound key.
std::shared_ptr<const GradeRelations> grade_relations(const FanPtr& fan, int grade) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const GradeRelations>> cache;
  const auto key = std::make_pair(fan->fingerprint(), grade);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const GradeRelations>(build_grade(fan, grade));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(built)).first->second;
}

}  // namespace

bool classes_equal(const CycleClass& a, const CycleClass& b) {
  const CycleClass diff = a - b;
  if (diff.is_zero()) return true;
  const FanPtr& fan = diff.fan();
  require_smooth_complete(*fan);
  for (int grade = 0; grade <= fan->dim(); ++grade) {
    const CycleClass part = diff.component(fan->dim() - grade);
    if (part.is_zero()) continue;
    const auto relations = grade_relations(fan, grade);
    LatticeVector v(relations->cones.size());
    for (const auto& [cone, value] : part.coefficients()) v[relations->position.at(cone)] = value;
    if (!relations->membership.contains(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- push-forward

CycleClass pushforward_cycle(const ToricMorphism& m, const CycleClass& alpha) {
  if (!m.source->is_complete()) throw_precondition("source not complete");
  if (!check_compatibility(m)) throw_precondition("incompatible morphism");
  CycleClass out(m.target);
  for (const auto& [sigma, value] : alpha.coefficients()) {
    const std::optional<Cone> tau = image_cone(m, sigma);
    if (!tau) throw_precondition("incompatible morphism");
    const std::optional<Integer> index = orbit_map_degree(m, sigma, *tau);
    if (index) out.add(*tau, *index * value);
  }
  return out;
}

Integer degree(const CycleClass& alpha) {
  const FanPtr& fan = alpha.fan();
  if (!fan || !fan->is_complete()) throw_precondition("fan not complete");
  Integer total = 0;
  for (const auto& [cone, value] : alpha.coefficients())
    if (static_cast<int>(cone.dim()) == fan->dim()) total += value;
  return total;
}

}  // namespace toricsm
