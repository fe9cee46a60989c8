#include "toricsm/csm.hpp"

#include <algorithm>
#include <set>

#include "toricsm/error.hpp"

namespace toricsm {

namespace {

std::string set_key(const std::vector<int>& rays) { return Cone(rays).key(); }

void require_smooth_complete(const FanPtr& fan) {
  if (!fan || !fan->is_smooth() || !fan->is_complete())
    throw Error(ErrorKind::Validation, "fan " + (fan ? fan->name() : std::string("<null>")) +
                                           " is not a smooth complete fan");
}

CheckResult class_check(std::string check, std::string instance, const CycleClass& lhs, const CycleClass& rhs) {
  CheckResult r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  r.pass = classes_equal(lhs, rhs);
  r.lhs = lhs.coefficients();
  r.rhs = rhs.coefficients();
  r.degree_lhs = degree(lhs);
  r.degree_rhs = degree(rhs);
  return r;
}

// Indices, in the star quotient, of the rays coming from `rays`.
std::vector<int> induced_boundary(const StarQuotient& q, const std::vector<int>& rays) {
  std::vector<int> out;
  for (std::size_t i = 0; i < q.ray_origin.size(); ++i)
    if (std::binary_search(rays.begin(), rays.end(), q.ray_origin[i])) out.push_back(static_cast<int>(i));
  return out;
}

// Map V(source_cone) -> V(target_cone) induced by m, when m sends source_cone
// into target_cone.
ToricMorphism induced_on_orbit_closures(const ToricMorphism& m, const StarQuotient& source_q,
                                        const StarQuotient& target_q) {
  const LatticeMatrix& p_source = source_q.projection;
  std::vector<LatticeVector> section;
  for (std::size_t i = 0; i < p_source.rows(); ++i) {
    LatticeVector e(p_source.rows());
    e[i] = 1;
    auto lift = solve_integer(p_source, e);
    if (!lift) throw_precondition("quotient projection is not surjective");
    section.push_back(std::move(*lift));
  }
  const LatticeMatrix lift = LatticeMatrix::from_columns(p_source.cols(), section);
  return make_morphism(source_q.fan, target_q.fan, target_q.projection * m.map * lift);
}

}  // namespace

GoodClosure make_good_closure(FanPtr fan, std::vector<int> boundary) {
  require_smooth_complete(fan);
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  for (int r : boundary)
    if (r < 0 || static_cast<std::size_t>(r) >= fan->ray_count())
      throw Error(ErrorKind::Validation, "boundary ray " + std::to_string(r) + " is not a ray of " + fan->name());
  return GoodClosure{std::move(fan), std::move(boundary)};
}

std::string describe(const GoodClosure& gc) { return gc.fan->name() + " S={" + set_key(gc.boundary) + "}"; }

CycleClass local_data(const GoodClosure& gc) {
  std::vector<int> factors;
  for (std::size_t r = 0; r < gc.fan->ray_count(); ++r)
    if (!std::binary_search(gc.boundary.begin(), gc.boundary.end(), static_cast<int>(r)))
      factors.push_back(static_cast<int>(r));
  return multiply_divisor_polynomial(gc.fan, factors, fundamental_class(gc.fan));
}

CycleClass csm_class(const ConstructibleFunction& phi) {
  require_smooth_complete(phi.fan());
  return CycleClass(phi.fan(), phi.values());
}

CycleClass csm_class_from_closures(const ConstructibleFunction& phi) {
  require_smooth_complete(phi.fan());
  const FanPtr& fan = phi.fan();
  CycleClass out(fan);
  for (const Cone& tau : fan->cones()) {
    Integer a = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << tau.dim()); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < tau.dim(); ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(tau.rays[i]);
      const Integer v = phi.value(Cone(face));
      if ((tau.dim() - face.size()) % 2 == 0)
        a += v;
      else
        a -= v;
    }
    if (a == 0) continue;
    const StarQuotient w = star_quotient_fan(fan, tau);
    out += a * push_from_orbit_closure(w, fan, local_data(make_good_closure(w.fan, {})));
  }
  return out;
}

CycleClass push_from_orbit_closure(const StarQuotient& q, const FanPtr& ambient, const CycleClass& on_closure) {
  CycleClass out(ambient);
  for (const auto& [cone, value] : on_closure.coefficients()) out.add(q.from_quotient.at(cone), value);
  return out;
}

CheckResult verify_gluing(const GoodClosure& gc, const LocalDataFn& data) {
  CycleClass orbit_sum(gc.fan);
  for (const Cone& c : boundary_divisor_cones(*gc.fan, gc.boundary).inside_open) orbit_sum.add(c, 1);
  return class_check("gluing", describe(gc), data(gc), orbit_sum);
}

BlowupCheck verify_blowup_formula(const GoodClosure& gc, const Cone& center) {
  const Subdivision sub = star_subdivision(gc.fan, center);
  std::vector<int> blown_boundary = gc.boundary;
  blown_boundary.push_back(sub.new_ray);
  const GoodClosure complement_of_e = make_good_closure(sub.fan, std::move(blown_boundary));

  CycleClass rhs = pushforward_cycle(sub.blow_down, local_data(complement_of_e));
  const bool meets_open = !center.meets(gc.boundary);
  if (meets_open) {
    const StarQuotient w = star_quotient_fan(gc.fan, center);
    const GoodClosure z = make_good_closure(w.fan, induced_boundary(w, gc.boundary));
    rhs += push_from_orbit_closure(w, gc.fan, local_data(z));
  }

  BlowupCheck out;
  static_cast<CheckResult&>(out) =
      class_check("blowup", describe(gc) + " center={" + center.key() + "}", local_data(gc), rhs);
  out.center_meets_open = meets_open;
  out.note = meets_open ? "Z nonempty" : "Z empty";
  return out;
}

CheckResult verify_exceptional_pushforward(const GoodClosure& gc, const Cone& center) {
  if (center.meets(gc.boundary)) throw_precondition("center lies in the boundary; E is empty");
  const Subdivision sub = star_subdivision(gc.fan, center);
  const StarQuotient f = star_quotient_fan(sub.fan, Cone({sub.new_ray}));
  const StarQuotient w = star_quotient_fan(gc.fan, center);
  const ToricMorphism bundle = induced_on_orbit_closures(sub.blow_down, f, w);

  const GoodClosure e = make_good_closure(f.fan, induced_boundary(f, gc.boundary));
  const GoodClosure z = make_good_closure(w.fan, induced_boundary(w, gc.boundary));
  const Integer d = static_cast<long>(center.dim());
  CheckResult r = class_check("exceptional_fiber", describe(gc) + " center={" + center.key() + "}",
                              pushforward_cycle(bundle, local_data(e)), d * local_data(z));
  r.note = "chi=" + d.get_str();
  return r;
}

CheckResult verify_naturality(const ToricMorphism& m, const ConstructibleFunction& phi) {
  return class_check("naturality", m.source->name() + "->" + m.target->name(), pushforward_cycle(m, csm_class_from_closures(phi)),
                     csm_class(pushforward_function(m, phi)));
}

CheckResult verify_covariance(const ToricMorphism& f, const ToricMorphism& g, const ConstructibleFunction& phi) {
  const ConstructibleFunction direct = pushforward_function(compose(g, f), phi);
  const ConstructibleFunction staged = pushforward_function(g, pushforward_function(f, phi));
  CheckResult r;
  r.check = "covariance";
  r.instance = f.source->name() + "->" + f.target->name() + "->" + g.target->name();
  r.pass = direct == staged;
  r.lhs = direct.values();
  r.rhs = staged.values();
  r.degree_lhs = euler_characteristic(direct);
  r.degree_rhs = euler_characteristic(staged);
  return r;
}

FibrationCheck verify_fibration(const ToricMorphism& projection, const FanPtr& fiber) {
  const Integer chi = euler_characteristic(constant_function(fiber, 1));
  FibrationCheck out;
  static_cast<CheckResult&>(out) =
      class_check("fibration", projection.source->name() + "->" + projection.target->name(),
                  pushforward_cycle(projection, csm_class(constant_function(projection.source, 1))),
                  chi * csm_class(constant_function(projection.target, 1)));
  out.fiber_euler = chi;
  out.note = "chi=" + chi.get_str();
  return out;
}

FibrationCheck verify_fibration_tower(const std::vector<ToricMorphism>& steps, const std::vector<FanPtr>& fibers) {
  if (steps.empty() || steps.size() != fibers.size()) throw_precondition("tower needs one fiber per step");
  ToricMorphism composite = steps.front();
  Integer chi = 1;
  bool steps_pass = true;
  std::string instance = steps.front().source->name();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) composite = compose(steps[i], composite);
    const FibrationCheck step = verify_fibration(steps[i], fibers[i]);
    steps_pass = steps_pass && step.pass;
    chi *= step.fiber_euler;
    instance += "->" + steps[i].target->name();
  }
  FibrationCheck out;
  static_cast<CheckResult&>(out) =
      class_check("fibration_tower", instance,
                  pushforward_cycle(composite, csm_class(constant_function(composite.source, 1))),
                  chi * csm_class(constant_function(composite.target, 1)));
  // Multiplicativity: the composite fiber is X_k's fiber over X_0, whose χ
  // is counted independently from its fixed points.
  const Integer composite_fiber_chi =
      euler_characteristic(constant_function(composite.source, 1)) /
      euler_characteristic(constant_function(composite.target, 1));
  out.pass = out.pass && steps_pass && composite_fiber_chi == chi;
  out.fiber_euler = chi;
  out.note = "chi=" + chi.get_str();
  return out;
}

CheckResult verify_inclusion_exclusion(const FanPtr& fan, const Cone& a, const Cone& b) {
  const ConstructibleFunction za = indicator_of_orbit_closure(fan, a);
  const ConstructibleFunction zb = indicator_of_orbit_closure(fan, b);
  const ConstructibleFunction both = pointwise_min(za, zb);

  // The intersection V(a) ∩ V(b) is V(a ∪ b) when that is a cone, else empty.
  ConstructibleFunction intersection(fan);
  for (const Cone& c : fan->cones())
    if (c.contains(a) && c.contains(b)) intersection.set(c, 1);
  if (!(intersection == both)) throw std::logic_error("intersection indicator mismatch");

  return class_check("inclusion_exclusion", fan->name() + " {" + a.key() + "}|{" + b.key() + "}",
                     csm_class(pointwise_max(za, zb)), csm_class(za) + csm_class(zb) - csm_class(intersection));
}

CheckResult verify_orbit_closure_normalization(const FanPtr& fan, const Cone& sigma) {
  const StarQuotient w = star_quotient_fan(fan, sigma);
  return class_check("orbit_closure_normalization", fan->name() + " {" + sigma.key() + "}",
                     csm_class(indicator_of_orbit_closure(fan, sigma)),
                     push_from_orbit_closure(w, fan, local_data(make_good_closure(w.fan, {}))));
}

// ---------------------------------------------------------------- proChow

ProChowElement prochow_assign_local_data(std::map<std::string, GoodClosure> nodes, std::vector<BlowupEdge> edges) {
  for (const BlowupEdge& e : edges) {
    auto src = nodes.find(e.source);
    auto tgt = nodes.find(e.target);
    if (src == nodes.end() || tgt == nodes.end())
      throw Error(ErrorKind::Validation, "edge " + e.source + "->" + e.target + " names a missing node");
    const Subdivision expected = star_subdivision(tgt->second.fan, e.center);
    if (!structurally_equal(*expected.fan, *src->second.fan))
      throw Error(ErrorKind::Validation, "edge " + e.source + "->" + e.target + " is not the star subdivision");
    if (!e.center.meets(tgt->second.boundary))
      throw Error(ErrorKind::Validation, "edge " + e.source + "->" + e.target + ": center meets the open set");
    std::vector<int> expected_boundary = tgt->second.boundary;
    expected_boundary.push_back(expected.new_ray);
    if (src->second.boundary != expected_boundary)
      throw Error(ErrorKind::Validation, "edge " + e.source + "->" + e.target + ": boundaries present different opens");
  }
  ProChowElement out{std::move(nodes), std::move(edges), {}};
  for (const auto& [name, gc] : out.nodes) out.classes.emplace(name, local_data(gc));
  return out;
}

std::vector<Cone> admissible_diagram_centers(const GoodClosure& gc) {
  std::vector<Cone> out;
  for (const Cone& c : gc.fan->cones())
    if (c.dim() >= 2 && c.meets(gc.boundary)) out.push_back(c);
  return out;
}

ProChowElement two_node_diagram(const GoodClosure& gc, const Cone& center) {
  const Subdivision sub = star_subdivision(gc.fan, center);
  std::vector<int> boundary = gc.boundary;
  boundary.push_back(sub.new_ray);
  const std::string base = describe(gc);
  const std::string blown = base + " blown up at {" + center.key() + "}";
  std::map<std::string, GoodClosure> nodes{{base, gc}, {blown, make_good_closure(sub.fan, std::move(boundary))}};
  return prochow_assign_local_data(std::move(nodes), {BlowupEdge{blown, base, center, sub.blow_down}});
}

std::vector<CheckResult> verify_prochow_edges(const ProChowElement& e) {
  std::vector<CheckResult> out;
  for (const BlowupEdge& edge : e.edges)
    out.push_back(class_check("prochow", edge.source + " -> " + edge.target,
                              pushforward_cycle(edge.blow_down, e.classes.at(edge.source)), e.classes.at(edge.target)));
  return out;
}

bool verify_prochow_compatibility(const ProChowElement& e) {
  const auto results = verify_prochow_edges(e);
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace toricsm
