#pragma once

// Log-tangent local data on good closures, their patching into CSM classes
// of constructible functions, and executable checks of the identities that
// make the patching well defined and natural.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricsm/chow.hpp"
#include "toricsm/constructible.hpp"

namespace toricsm {

/// A smooth complete toric variety X with the open set U = X minus the union
/// of the divisors D_ρ, ρ in `boundary`.
struct GoodClosure {
  FanPtr fan;
  std::vector<int> boundary;  // sorted, distinct
};

/// Validates and normalizes; throws Validation on a bad fan or ray index.
GoodClosure make_good_closure(FanPtr fan, std::vector<int> boundary);

std::string describe(const GoodClosure& gc);

/// c(Ω¹(log D)^∨) ∩ [X] = ∏_{ρ ∉ S} (1 + D_ρ) ∩ [X].
CycleClass local_data(const GoodClosure& gc);

using LocalDataFn = std::function<CycleClass(const GoodClosure&)>;

/// Σ_σ φ(O(σ)) [V(σ)]: every orbit's local data in its own closure, with the
/// whole toric boundary removed, is the fundamental class.
CycleClass csm_class(const ConstructibleFunction& phi);

/// The same class assembled differently: φ is rewritten as Σ a_τ 1_{V(τ)} by
/// Möbius inversion over faces, and each closure contributes
/// w_*(c(T V(τ)) ∩ [V(τ)]).
CycleClass csm_class_from_closures(const ConstructibleFunction& phi);

/// w_*: classes on V(center), given in the star-quotient fan, as classes on X.
CycleClass push_from_orbit_closure(const StarQuotient& q, const FanPtr& ambient, const CycleClass& on_closure);

/// Outcome of a single identity check. lhs/rhs hold class coefficients or
/// function values depending on the check.
struct CheckResult {
  std::string check;
  std::string instance;
  bool pass = false;
  ConeCoefficients lhs;
  ConeCoefficients rhs;
  std::optional<Integer> degree_lhs;
  std::optional<Integer> degree_rhs;
  std::string note;
};

/// Local data of U equals the orbit sum over the cones inside U.
CheckResult verify_gluing(const GoodClosure& gc, const LocalDataFn& data = local_data);

struct BlowupCheck : CheckResult {
  bool center_meets_open = false;  // Z = W ∩ U nonempty
};

/// c_U^Ū = π_* c_{V∖E}^V̄ + w_* c_Z^W along the star subdivision at `center`.
BlowupCheck verify_blowup_formula(const GoodClosure& gc, const Cone& center);

/// For a center meeting U: the exceptional P^{d-1}-bundle F -> W satisfies
/// ρ_* c_E^F = d · c_Z^W, with d the codimension of W.
CheckResult verify_exceptional_pushforward(const GoodClosure& gc, const Cone& center);

/// f_* csm(φ) ≡ csm(f_* φ), with the left side built from closures.
CheckResult verify_naturality(const ToricMorphism& m, const ConstructibleFunction& phi);

/// (g∘f)_* φ == g_* f_* φ, value by value.
CheckResult verify_covariance(const ToricMorphism& f, const ToricMorphism& g, const ConstructibleFunction& phi);

struct FibrationCheck : CheckResult {
  Integer fiber_euler;  // χ of the fiber, or the product over a tower
};

/// projection: X × F -> X. Checks π_* csm(1) ≡ χ(F) · csm(1_X).
FibrationCheck verify_fibration(const ToricMorphism& projection, const FanPtr& fiber);

/// Tower X_k -> ... -> X_0 of projections with the given fibers; checks the
/// composite against the product of the per-step factors.
FibrationCheck verify_fibration_tower(const std::vector<ToricMorphism>& steps, const std::vector<FanPtr>& fibers);

/// csm(1_{Z1 ∪ Z2}) = csm(1_{Z1}) + csm(1_{Z2}) - csm(1_{Z1 ∩ Z2}) with Zi = V(σi).
CheckResult verify_inclusion_exclusion(const FanPtr& fan, const Cone& a, const Cone& b);

/// csm(1_{V(σ)}) ≡ w_*(c(T V(σ)) ∩ [V(σ)]).
CheckResult verify_orbit_closure_normalization(const FanPtr& fan, const Cone& sigma);

// ---------------------------------------------------------------- proChow

struct BlowupEdge {
  std::string source;  // the blown-up closure
  std::string target;
  Cone center;         // cone of the target fan
  ToricMorphism blow_down;
};

/// Classes on a finite diagram of good closures of one open set, linked by
/// blow-ups along invariant centers inside the boundary.
struct ProChowElement {
  std::map<std::string, GoodClosure> nodes;
  std::vector<BlowupEdge> edges;
  std::map<std::string, CycleClass> classes;
};

/// Checks edge well-formedness and assigns local_data to every node.
ProChowElement prochow_assign_local_data(std::map<std::string, GoodClosure> nodes, std::vector<BlowupEdge> edges);

/// gc and its blow-up at `center`, which must lie in the boundary.
ProChowElement two_node_diagram(const GoodClosure& gc, const Cone& center);

/// Centers of dimension >= 2 whose orbit closure lies in the boundary D.
std::vector<Cone> admissible_diagram_centers(const GoodClosure& gc);

/// π_* (class at source) ≡ class at target, for every edge.
std::vector<CheckResult> verify_prochow_edges(const ProChowElement& e);
bool verify_prochow_compatibility(const ProChowElement& e);

}  // namespace toricsm
