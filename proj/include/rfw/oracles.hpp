#pragma once

#include <variant>
#include <vector>

#include "rfw/core.hpp"

namespace rfw {

struct L1Ball {
  double radius = 1.0;
};

/// 1 < p < infinity. Other exponents are normalized by FeasibleRegion::lp_ball.
struct LpBall {
  double radius = 1.0;
  double p = 2.0;
};

/// {x >= 0, sum x = scale}
struct Simplex {
  double scale = 1.0;
};

struct Box {
  Vector lower;
  Vector upper;
};

class FeasibleRegion {
 public:
  using Kind = std::variant<L1Ball, LpBall, Simplex, Box>;

  static FeasibleRegion l1_ball(int dim, double radius);
  /// p == 1 gives an L1Ball, p == +inf a Box [-r, r]^n.
  static FeasibleRegion lp_ball(int dim, double radius, double p);
  static FeasibleRegion simplex(int dim, double scale = 1.0);
  static FeasibleRegion box(Vector lower, Vector upper);

  int dim() const { return dim_; }
  const Kind& kind() const { return kind_; }
  bool is_polytope() const { return !std::holds_alternative<LpBall>(kind_); }
  std::string name() const;

  /// Membership with absolute tolerance on the defining constraints.
  bool contains(const Vector& x, double tol = 1e-8) const;

  /// Number of extreme points for polytopes; throws for LpBall.
  std::size_t vertex_count() const;
  /// All extreme points in canonical order. Polytopes only; intended for small n.
  std::vector<Vertex> vertices() const;

 private:
  FeasibleRegion(int dim, Kind k) : dim_(dim), kind_(std::move(k)) {}
  int dim_ = 0;
  Kind kind_;
};

/// argmin over the region of <c, z>. Ties go to the lowest index. For c = 0
/// the first canonical vertex is returned (polytopes), or -r e_0 (lp balls).
Vertex lmo(const FeasibleRegion& region, const Vector& c);

/// argmax over the support of <grad, v>, first in insertion order on ties.
/// Not an LMO call for accounting purposes.
const ActiveEntry& away_vertex(const ActiveSet& s, const Vector& grad);

double region_diameter(const FeasibleRegion& region);

/// Vertex of the region minimizing <d, z> for a seeded Gaussian direction d.
Vertex random_extreme_point(const FeasibleRegion& region, std::uint64_t seed);

}  // namespace rfw
