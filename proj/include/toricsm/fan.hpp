#pragma once

// Simplicial rational polyhedral fans, their star subdivisions and star
// quotients, and toric morphisms between them.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricsm/lattice.hpp"

namespace toricsm {

/// A cone of a simplicial fan, named by the sorted indices of its rays.
struct Cone {
  std::vector<int> rays;

  Cone() = default;
  explicit Cone(std::vector<int> indices);

  std::size_t dim() const { return rays.size(); }
  bool contains(int ray) const;
  bool contains(const Cone& face) const;
  bool meets(const std::vector<int>& ray_set) const;
  Cone with(int ray) const;
  Cone without(int ray) const;

  /// Comma-joined indices; "" for the zero cone.
  std::string key() const;
  static Cone from_key(const std::string& key);

  auto operator<=>(const Cone&) const = default;
};

/// Cones ordered by dimension, then lexicographically by ray indices.
struct GradedConeOrder {
  bool operator()(const Cone& a, const Cone& b) const {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays < b.rays;
  }
};

struct FanIssue {
  enum class Kind { NonPrimitiveRay, BadIndex, NotSimplicial, NotSmooth, NotFaceClosed, NotPure, BadFacet, Disconnected, Overlap };
  Kind kind;
  Cone cone;
  std::string message;
};

struct FanReport {
  std::vector<FanIssue> issues;
  bool smooth = false;    // every cone unimodular
  bool complete = false;  // pure, closed pseudomanifold covering space once

  bool valid() const { return issues.empty(); }
};

/// Coordinates of a vector in the basis of a smooth cone's rays, plus the
/// rows that must vanish for the vector to lie in the cone's span.
struct ConeChart {
  LatticeMatrix coords;
  LatticeMatrix residual;
};

class Fan;
using FanPtr = std::shared_ptr<const Fan>;

class Fan {
 public:
  /// Builds the face closure of the given maximal cones. Never throws on
  /// mathematically bad data; use report() / validate().
  static FanPtr from_maximal_cones(std::string name, int dim, std::vector<LatticeVector> rays,
                                   std::vector<Cone> maximal_cones);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  std::size_t ray_count() const { return rays_.size(); }

  /// Every cone, in GradedConeOrder.
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<Cone>& maximal_cones() const { return maximal_; }
  std::vector<Cone> cones_of_dim(std::size_t d) const;

  bool has_cone(const Cone& c) const { return index_.contains(c); }
  std::size_t cone_index(const Cone& c) const;

  /// n x k matrix whose columns are the rays of `c`.
  LatticeMatrix ray_matrix(const Cone& c) const;

  const FanReport& report() const { return report_; }
  bool is_smooth() const { return report_.valid() && report_.smooth; }
  bool is_complete() const { return report_.valid() && report_.complete; }

  /// Stable textual identity used for memoization and structural equality.
  const std::string& fingerprint() const { return fingerprint_; }

  /// Charts parallel to maximal_cones(); empty unless the fan is smooth.
  const std::vector<ConeChart>& charts() const { return charts_; }

 private:
  Fan() = default;

  std::string name_;
  int dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> maximal_;
  std::vector<Cone> cones_;
  std::map<Cone, std::size_t> index_;
  FanReport report_;
  std::string fingerprint_;
  std::vector<ConeChart> charts_;
};

FanReport validate(const Fan& fan);

/// Same rays in the same order and the same cone set.
bool structurally_equal(const Fan& a, const Fan& b);

int orbit_dimension(const Fan& fan, const Cone& cone);

/// The cone whose relative interior contains v; throws Precondition when v
/// is outside the support.
Cone smallest_containing_cone(const Fan& fan, const LatticeVector& v);

struct ToricMorphism {
  FanPtr source;
  FanPtr target;
  LatticeMatrix map;  // target dim x source dim
};

ToricMorphism make_morphism(FanPtr source, FanPtr target, LatticeMatrix map);
ToricMorphism identity_morphism(FanPtr fan);
ToricMorphism compose(const ToricMorphism& g, const ToricMorphism& f);  // g after f

/// Smallest target cone containing the image of a source cone, or nullopt if
/// the image is not inside any target cone.
std::optional<Cone> image_cone(const ToricMorphism& m, const Cone& source_cone);

bool check_compatibility(const ToricMorphism& m);

/// Surjection N -> N / N_cone for a smooth cone, as a (n - dim) x n matrix.
LatticeMatrix quotient_projection(const Fan& fan, const Cone& cone);

/// Degree of the orbit map O(source_cone) -> O(target_cone): the index of the
/// induced quotient-lattice map when the orbits have equal dimension and the
/// cokernel is finite, nullopt otherwise.
std::optional<Integer> orbit_map_degree(const ToricMorphism& m, const Cone& source_cone, const Cone& target_cone);

struct Subdivision {
  FanPtr fan;
  ToricMorphism blow_down;
  int new_ray = -1;
};

/// Inserts the sum of the center's generators as a new (last) ray.
Subdivision star_subdivision(const FanPtr& fan, const Cone& center);

struct BoundaryPartition {
  std::vector<Cone> inside_open;      // orbits in U = X minus the listed divisors
  std::vector<Cone> inside_boundary;  // orbits in D
};

BoundaryPartition boundary_divisor_cones(const Fan& fan, const std::vector<int>& boundary_rays);

struct StarQuotient {
  FanPtr fan;                          // fan of the orbit closure V(center)
  LatticeMatrix projection;            // N -> N / N_center
  std::map<Cone, Cone> to_quotient;    // cones containing center -> quotient cones
  std::map<Cone, Cone> from_quotient;  // inverse
  std::vector<int> ray_origin;         // quotient ray i comes from original ray ray_origin[i]
};

StarQuotient star_quotient_fan(const FanPtr& fan, const Cone& center);

/// Fan of the product X x Y: rays of X (padded) then rays of Y.
FanPtr product_fan(const FanPtr& x, const FanPtr& y, std::string name = {});
/// Projection X x Y -> X.
ToricMorphism first_projection(const FanPtr& product, const FanPtr& x, const FanPtr& y);
/// Projection X x Y -> Y.
ToricMorphism second_projection(const FanPtr& product, const FanPtr& x, const FanPtr& y);

FanPtr point_fan();
ToricMorphism structure_map(const FanPtr& fan);  // X -> point

}  // namespace toricsm
