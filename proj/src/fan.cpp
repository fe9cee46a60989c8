#include "toricsm/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "toricsm/error.hpp"

namespace toricsm {

// ---------------------------------------------------------------- Cone

Cone::Cone(std::vector<int> indices) : rays(std::move(indices)) { std::sort(rays.begin(), rays.end()); }

bool Cone::contains(int ray) const { return std::binary_search(rays.begin(), rays.end(), ray); }

bool Cone::contains(const Cone& face) const {
  return std::includes(rays.begin(), rays.end(), face.rays.begin(), face.rays.end());
}

bool Cone::meets(const std::vector<int>& ray_set) const {
  return std::any_of(ray_set.begin(), ray_set.end(), [&](int r) { return contains(r); });
}

Cone Cone::with(int ray) const {
  if (contains(ray)) return *this;
  std::vector<int> r = rays;
  r.push_back(ray);
  return Cone(std::move(r));
}

Cone Cone::without(int ray) const {
  std::vector<int> r;
  r.reserve(rays.size());
  for (int x : rays)
    if (x != ray) r.push_back(x);
  return Cone(std::move(r));
}

std::string Cone::key() const {
  std::string s;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(rays[i]);
  }
  return s;
}

Cone Cone::from_key(const std::string& key) {
  std::vector<int> r;
  if (key.empty()) return Cone{};
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad cone key '" + key + "'");
    }
    if (used != item.size() || value < 0) throw Error(ErrorKind::Parse, "bad cone key '" + key + "'");
    r.push_back(value);
  }
  return Cone(std::move(r));
}

// ---------------------------------------------------------------- Fan

namespace {

ConeChart chart_for(const LatticeMatrix& rays) {
  const SmithDecomposition snf = smith_normal_form(rays);
  const std::size_t k = rays.cols();
  return {snf.right * snf.left.row_block(0, k), snf.left.row_block(k, rays.rows() - k)};
}

}  // namespace

FanPtr Fan::from_maximal_cones(std::string name, int dim, std::vector<LatticeVector> rays,
                               std::vector<Cone> maximal_cones) {
  auto fan = std::shared_ptr<Fan>(new Fan());
  fan->name_ = std::move(name);
  fan->dim_ = dim;
  fan->rays_ = std::move(rays);

  std::sort(maximal_cones.begin(), maximal_cones.end(), GradedConeOrder{});
  maximal_cones.erase(std::unique(maximal_cones.begin(), maximal_cones.end()), maximal_cones.end());
  for (const Cone& c : maximal_cones) {
    const bool dominated = std::any_of(maximal_cones.begin(), maximal_cones.end(),
                                       [&](const Cone& other) { return other != c && other.contains(c); });
    if (!dominated) fan->maximal_.push_back(c);
  }

  std::set<Cone, GradedConeOrder> all;
  for (const Cone& c : fan->maximal_) {
    const std::size_t k = c.rays.size();
    if (k > 20) continue;  // reported by validate
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(c.rays[i]);
      all.insert(Cone(std::move(sub)));
    }
  }
  if (fan->maximal_.empty()) all.insert(Cone{});
  fan->cones_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < fan->cones_.size(); ++i) fan->index_.emplace(fan->cones_[i], i);

  std::ostringstream fp;
  fp << dim << '|';
  for (const auto& r : fan->rays_) {
    fp << '(';
    for (std::size_t i = 0; i < r.size(); ++i) fp << (i ? "," : "") << r[i];
    fp << ')';
  }
  fp << '|';
  for (const Cone& c : fan->maximal_) fp << '{' << c.key() << '}';
  fan->fingerprint_ = fp.str();

  fan->report_ = validate(*fan);
  if (fan->is_smooth())
    for (const Cone& c : fan->maximal_) fan->charts_.push_back(chart_for(fan->ray_matrix(c)));
  return fan;
}

std::vector<Cone> Fan::cones_of_dim(std::size_t d) const {
  std::vector<Cone> out;
  for (const Cone& c : cones_)
    if (c.dim() == d) out.push_back(c);
  return out;
}

std::size_t Fan::cone_index(const Cone& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw_precondition("cone {" + c.key() + "} is not in fan " + name_);
  return it->second;
}

LatticeMatrix Fan::ray_matrix(const Cone& c) const {
  std::vector<LatticeVector> cols;
  cols.reserve(c.rays.size());
  for (int r : c.rays) {
    if (r < 0 || static_cast<std::size_t>(r) >= rays_.size()) throw_precondition("ray index out of range");
    cols.push_back(rays_[static_cast<std::size_t>(r)]);
  }
  return LatticeMatrix::from_columns(static_cast<std::size_t>(dim_), cols);
}

namespace {

int sign_of(const Integer& x) { return sgn(x); }

// Sign pattern of the coordinates of p in the basis given by the columns of a
// full-rank square matrix (Cramer's rule).
std::vector<int> coordinate_signs(const LatticeMatrix& basis, const LatticeVector& p) {
  const Integer det = determinant(basis);
  std::vector<int> signs(basis.cols());
  for (std::size_t i = 0; i < basis.cols(); ++i) {
    LatticeMatrix replaced = basis;
    for (std::size_t r = 0; r < basis.rows(); ++r) replaced(r, i) = p[r];
    signs[i] = sign_of(determinant(replaced)) * sign_of(det);
  }
  return signs;
}

void check_completeness(const Fan& fan, FanReport& report) {
  const auto n = static_cast<std::size_t>(fan.dim());
  const auto& maxes = fan.maximal_cones();
  if (maxes.empty()) return;
  if (std::any_of(maxes.begin(), maxes.end(), [&](const Cone& c) { return c.dim() != n; })) return;
  if (n == 0) {
    report.complete = true;
    return;
  }

  // Facet -> maximal cones containing it.
  std::map<Cone, std::vector<std::size_t>> neighbours;
  for (std::size_t i = 0; i < maxes.size(); ++i)
    for (int r : maxes[i].rays) neighbours[maxes[i].without(r)].push_back(i);

  bool closed = true;
  std::vector<std::vector<std::size_t>> adjacency(maxes.size());
  for (const auto& [facet, owners] : neighbours) {
    if (owners.size() == 1) {
      closed = false;
      continue;
    }
    if (owners.size() > 2) {
      report.issues.push_back({FanIssue::Kind::BadFacet, facet,
                               "facet {" + facet.key() + "} lies in " + std::to_string(owners.size()) +
                                   " maximal cones"});
      closed = false;
      continue;
    }
    // The two opposite rays must lie strictly on opposite sides of the facet.
    const LatticeMatrix normal_space = integer_kernel(fan.ray_matrix(facet).transposed());
    if (normal_space.cols() != 1) continue;  // degenerate; flagged as not simplicial
    const LatticeVector normal = normal_space.column(0);
    auto apex = [&](std::size_t owner) {
      for (int r : maxes[owner].rays)
        if (!facet.contains(r)) return r;
      return -1;
    };
    const int a = apex(owners[0]);
    const int b = apex(owners[1]);
    const int sa = sign_of(dot(normal, fan.rays()[static_cast<std::size_t>(a)]));
    const int sb = sign_of(dot(normal, fan.rays()[static_cast<std::size_t>(b)]));
    if (sa * sb >= 0) {
      report.issues.push_back({FanIssue::Kind::Overlap, facet,
                               "maximal cones on facet {" + facet.key() + "} lie on the same side"});
      closed = false;
      continue;
    }
    adjacency[owners[0]].push_back(owners[1]);
    adjacency[owners[1]].push_back(owners[0]);
  }

  std::vector<bool> seen(maxes.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j : adjacency[i])
      if (!seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    report.issues.push_back({FanIssue::Kind::Disconnected, Cone{}, "maximal-cone adjacency graph is disconnected"});
    return;
  }
  if (!closed) return;

  // A connected closed pseudomanifold with consistent orientation covers the
  // space a constant number of times; count the covering at a generic point
  // of the first maximal cone.
  const Cone& first = maxes.front();
  for (long attempt = 2; attempt < 40; ++attempt) {
    LatticeVector p(n);
    Integer weight = 1;
    for (int r : first.rays) {
      for (std::size_t i = 0; i < n; ++i) p[i] += weight * fan.rays()[static_cast<std::size_t>(r)][i];
      weight *= attempt;
    }
    int covering = 0;
    bool degenerate = false;
    for (const Cone& c : maxes) {
      const auto signs = coordinate_signs(fan.ray_matrix(c), p);
      const bool nonneg = std::all_of(signs.begin(), signs.end(), [](int s) { return s >= 0; });
      const bool positive = std::all_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
      if (positive) ++covering;
      else if (nonneg) degenerate = true;
    }
    if (degenerate) continue;
    if (covering != 1) {
      report.issues.push_back({FanIssue::Kind::Overlap, Cone{},
                               "maximal cones cover a generic point " + std::to_string(covering) + " times"});
      return;
    }
    report.complete = true;
    return;
  }
  report.issues.push_back({FanIssue::Kind::Overlap, Cone{}, "could not find a generic point"});
}

}  // namespace

FanReport validate(const Fan& fan) {
  FanReport report;
  const auto n = static_cast<std::size_t>(fan.dim());
  if (fan.dim() < 0) {
    report.issues.push_back({FanIssue::Kind::BadIndex, Cone{}, "negative dimension"});
    return report;
  }

  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    const Cone ray_cone({static_cast<int>(i)});
    if (fan.rays()[i].size() != n) {
      report.issues.push_back({FanIssue::Kind::BadIndex, ray_cone,
                               "ray " + std::to_string(i) + " has wrong length"});
      return report;
    }
    if (content(fan.rays()[i]) != 1)
      report.issues.push_back({FanIssue::Kind::NonPrimitiveRay, ray_cone,
                               "ray " + std::to_string(i) + " is not primitive"});
  }

  bool indices_ok = true;
  for (const Cone& c : fan.maximal_cones()) {
    const bool in_range = std::all_of(c.rays.begin(), c.rays.end(), [&](int r) {
      return r >= 0 && static_cast<std::size_t>(r) < fan.rays().size();
    });
    const bool distinct = std::adjacent_find(c.rays.begin(), c.rays.end()) == c.rays.end();
    if (!in_range || !distinct || c.dim() > 20) {
      report.issues.push_back({FanIssue::Kind::BadIndex, c, "cone {" + c.key() + "} has invalid ray indices"});
      indices_ok = false;
    }
  }
  if (!indices_ok) return report;

  bool smooth = true;
  for (const Cone& c : fan.maximal_cones()) {
    if (c.dim() == 0) continue;
    const SmithDecomposition snf = smith_normal_form(fan.ray_matrix(c));
    if (snf.rank() < c.dim()) {
      report.issues.push_back({FanIssue::Kind::NotSimplicial, c, "rays of cone {" + c.key() + "} are dependent"});
      smooth = false;
      continue;
    }
    Integer index = 1;
    for (const Integer& d : snf.diagonal) index *= d;
    if (index != 1) {
      report.issues.push_back({FanIssue::Kind::NotSmooth, c,
                               "cone {" + c.key() + "} is not smooth (index " + index.get_str() + ")"});
      smooth = false;
    }
  }
  report.smooth = smooth;

  for (const Cone& c : fan.cones())
    for (int r : c.rays)
      if (!fan.has_cone(c.without(r)))
        report.issues.push_back({FanIssue::Kind::NotFaceClosed, c, "face of {" + c.key() + "} missing"});

  if (report.issues.empty()) check_completeness(fan, report);
  return report;
}

bool structurally_equal(const Fan& a, const Fan& b) {
  return a.dim() == b.dim() && a.rays() == b.rays() && a.cones() == b.cones();
}

int orbit_dimension(const Fan& fan, const Cone& cone) {
  if (!fan.has_cone(cone)) throw_precondition("cone {" + cone.key() + "} is not in fan " + fan.name());
  return fan.dim() - static_cast<int>(cone.dim());
}

Cone smallest_containing_cone(const Fan& fan, const LatticeVector& v) {
  if (!fan.is_smooth()) throw_precondition("fan " + fan.name() + " is not a valid smooth fan");
  if (v.size() != static_cast<std::size_t>(fan.dim())) throw_precondition("vector has wrong dimension");
  if (is_zero(v)) return Cone{};
  for (std::size_t i = 0; i < fan.maximal_cones().size(); ++i) {
    const ConeChart& chart = fan.charts()[i];
    if (!is_zero(chart.residual * v)) continue;
    const LatticeVector coords = chart.coords * v;
    if (std::any_of(coords.begin(), coords.end(), [](const Integer& x) { return x < 0; })) continue;
    const Cone& owner = fan.maximal_cones()[i];
    std::vector<int> support;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (coords[j] > 0) support.push_back(owner.rays[j]);
    return Cone(std::move(support));
  }
  throw_precondition("vector lies outside the support of fan " + fan.name());
}

// ---------------------------------------------------------------- morphisms

ToricMorphism make_morphism(FanPtr source, FanPtr target, LatticeMatrix map) {
  if (!source || !target) throw_precondition("morphism needs both fans");
  if (map.rows() != static_cast<std::size_t>(target->dim()) || map.cols() != static_cast<std::size_t>(source->dim()))
    throw Error(ErrorKind::Validation, "morphism matrix must be " + std::to_string(target->dim()) + "x" +
                                           std::to_string(source->dim()));
  return ToricMorphism{std::move(source), std::move(target), std::move(map)};
}

ToricMorphism identity_morphism(FanPtr fan) {
  const auto n = static_cast<std::size_t>(fan->dim());
  return ToricMorphism{fan, fan, LatticeMatrix::identity(n)};
}

ToricMorphism compose(const ToricMorphism& g, const ToricMorphism& f) {
  if (!structurally_equal(*f.target, *g.source)) throw_precondition("morphisms are not composable");
  return ToricMorphism{f.source, g.target, g.map * f.map};
}

std::optional<Cone> image_cone(const ToricMorphism& m, const Cone& source_cone) {
  const Fan& target = *m.target;
  std::vector<LatticeVector> images;
  LatticeVector sum(static_cast<std::size_t>(target.dim()));
  for (int r : source_cone.rays) {
    images.push_back(m.map * m.source->rays()[static_cast<std::size_t>(r)]);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += images.back()[i];
  }
  Cone tau;
  try {
    tau = smallest_containing_cone(target, sum);
    for (const LatticeVector& w : images)
      if (!tau.contains(smallest_containing_cone(target, w))) return std::nullopt;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Precondition) throw;
    return std::nullopt;
  }
  return tau;
}

bool check_compatibility(const ToricMorphism& m) {
  if (!m.source->is_smooth() || !m.target->is_smooth()) return false;
  return std::all_of(m.source->maximal_cones().begin(), m.source->maximal_cones().end(),
                     [&](const Cone& c) { return image_cone(m, c).has_value(); });
}

LatticeMatrix quotient_projection(const Fan& fan, const Cone& cone) {
  const auto n = static_cast<std::size_t>(fan.dim());
  const SmithDecomposition snf = smith_normal_form(fan.ray_matrix(cone));
  if (snf.rank() != cone.dim() ||
      std::any_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& d) { return d != 1; }))
    throw_precondition("cone {" + cone.key() + "} is not smooth");
  return snf.left.row_block(cone.dim(), n - cone.dim());
}

std::optional<Integer> orbit_map_degree(const ToricMorphism& m, const Cone& source_cone, const Cone& target_cone) {
  if (orbit_dimension(*m.source, source_cone) != orbit_dimension(*m.target, target_cone)) return std::nullopt;
  return cokernel_index(quotient_projection(*m.target, target_cone) * m.map);
}

// ---------------------------------------------------------------- constructions

Subdivision star_subdivision(const FanPtr& fan, const Cone& center) {
  if (!fan->has_cone(center)) throw_precondition("center {" + center.key() + "} is not a cone of fan " + fan->name());
  if (center.dim() < 2) throw_precondition("blow-up center must have dimension at least 2");
  if (!fan->is_smooth()) throw_precondition("star subdivision needs a smooth fan");

  const auto n = static_cast<std::size_t>(fan->dim());
  std::vector<LatticeVector> rays = fan->rays();
  LatticeVector barycenter(n);
  for (int r : center.rays)
    for (std::size_t i = 0; i < n; ++i) barycenter[i] += rays[static_cast<std::size_t>(r)][i];
  const int new_ray = static_cast<int>(rays.size());
  rays.push_back(std::move(barycenter));

  std::vector<Cone> maximal;
  for (const Cone& c : fan->maximal_cones()) {
    if (!c.contains(center)) {
      maximal.push_back(c);
      continue;
    }
    for (int r : center.rays) maximal.push_back(c.without(r).with(new_ray));
  }
  const std::string name = "Bl(" + center.key() + ")" + fan->name();
  FanPtr blown = Fan::from_maximal_cones(name, fan->dim(), std::move(rays), std::move(maximal));
  return Subdivision{blown, ToricMorphism{blown, fan, LatticeMatrix::identity(n)}, new_ray};
}

BoundaryPartition boundary_divisor_cones(const Fan& fan, const std::vector<int>& boundary_rays) {
  BoundaryPartition out;
  for (const Cone& c : fan.cones()) (c.meets(boundary_rays) ? out.inside_boundary : out.inside_open).push_back(c);
  return out;
}

StarQuotient star_quotient_fan(const FanPtr& fan, const Cone& center) {
  if (!fan->has_cone(center)) throw_precondition("cone {" + center.key() + "} is not in fan " + fan->name());
  if (!fan->is_smooth()) throw_precondition("star quotient needs a smooth fan");
  const auto n = static_cast<std::size_t>(fan->dim());
  const std::size_t k = center.dim();

  StarQuotient out;
  out.projection = quotient_projection(*fan, center);

  std::map<int, int> quotient_index;
  std::vector<LatticeVector> rays;
  for (std::size_t r = 0; r < fan->ray_count(); ++r) {
    const int ray = static_cast<int>(r);
    if (center.contains(ray) || !fan->has_cone(center.with(ray))) continue;
    quotient_index[ray] = static_cast<int>(rays.size());
    out.ray_origin.push_back(ray);
    rays.push_back(out.projection * fan->rays()[r]);
  }

  auto to_quotient = [&](const Cone& c) {
    std::vector<int> idx;
    for (int r : c.rays)
      if (!center.contains(r)) idx.push_back(quotient_index.at(r));
    return Cone(std::move(idx));
  };

  std::vector<Cone> maximal;
  for (const Cone& c : fan->maximal_cones())
    if (c.contains(center)) maximal.push_back(to_quotient(c));
  const std::string name = center.dim() == 0 ? fan->name() : "V(" + center.key() + ")" + fan->name();
  out.fan = Fan::from_maximal_cones(name, static_cast<int>(n - k), std::move(rays), std::move(maximal));

  for (const Cone& c : fan->cones()) {
    if (!c.contains(center)) continue;
    const Cone q = to_quotient(c);
    out.to_quotient.emplace(c, q);
    out.from_quotient.emplace(q, c);
  }
  return out;
}

FanPtr product_fan(const FanPtr& x, const FanPtr& y, std::string name) {
  const auto nx = static_cast<std::size_t>(x->dim());
  const auto ny = static_cast<std::size_t>(y->dim());
  std::vector<LatticeVector> rays;
  for (const auto& r : x->rays()) {
    LatticeVector v(nx + ny);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(std::move(v));
  }
  for (const auto& r : y->rays()) {
    LatticeVector v(nx + ny);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(nx));
    rays.push_back(std::move(v));
  }
  const int offset = static_cast<int>(x->ray_count());
  std::vector<Cone> maximal;
  for (const Cone& a : x->maximal_cones())
    for (const Cone& b : y->maximal_cones()) {
      std::vector<int> idx = a.rays;
      for (int r : b.rays) idx.push_back(r + offset);
      maximal.emplace_back(std::move(idx));
    }
  if (name.empty()) name = x->name() + "x" + y->name();
  return Fan::from_maximal_cones(std::move(name), x->dim() + y->dim(), std::move(rays), std::move(maximal));
}

ToricMorphism first_projection(const FanPtr& product, const FanPtr& x, const FanPtr& y) {
  const auto nx = static_cast<std::size_t>(x->dim());
  LatticeMatrix m(nx, nx + static_cast<std::size_t>(y->dim()));
  for (std::size_t i = 0; i < nx; ++i) m(i, i) = 1;
  return make_morphism(product, x, std::move(m));
}

ToricMorphism second_projection(const FanPtr& product, const FanPtr& x, const FanPtr& y) {
  const auto nx = static_cast<std::size_t>(x->dim());
  const auto ny = static_cast<std::size_t>(y->dim());
  LatticeMatrix m(ny, nx + ny);
  for (std::size_t i = 0; i < ny; ++i) m(i, nx + i) = 1;
  return make_morphism(product, y, std::move(m));
}

FanPtr point_fan() {
  static const FanPtr point = Fan::from_maximal_cones("pt", 0, {}, {Cone{}});
  return point;
}

ToricMorphism structure_map(const FanPtr& fan) {
  return ToricMorphism{fan, point_fan(), LatticeMatrix(0, static_cast<std::size_t>(fan->dim()))};
}

}  // namespace toricsm
