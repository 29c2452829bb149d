#include "rfw/oracles.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace rfw {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vector signed_basis(int dim, int index, double value) {
  Vector v = Vector::Zero(dim);
  v[index] = value;
  return v;
}

}  // namespace

FeasibleRegion FeasibleRegion::l1_ball(int dim, double radius) {
  if (dim < 1) throw DomainError("region dimension must be positive");
  if (!(radius > 0.0)) throw DomainError("l1 ball radius must be positive");
  return FeasibleRegion(dim, L1Ball{radius});
}

FeasibleRegion FeasibleRegion::lp_ball(int dim, double radius, double p) {
  if (dim < 1) throw DomainError("region dimension must be positive");
  if (!(radius > 0.0)) throw DomainError("lp ball radius must be positive");
  if (!(p >= 1.0)) throw DomainError("lp ball requires p >= 1");
  if (p == 1.0) return FeasibleRegion(dim, L1Ball{radius});
  if (std::isinf(p)) {
    return box(Vector::Constant(dim, -radius), Vector::Constant(dim, radius));
  }
  return FeasibleRegion(dim, LpBall{radius, p});
}

FeasibleRegion FeasibleRegion::simplex(int dim, double scale) {
  if (dim < 1) throw DomainError("region dimension must be positive");
  if (!(scale > 0.0)) throw DomainError("simplex scale must be positive");
  return FeasibleRegion(dim, Simplex{scale});
}

FeasibleRegion FeasibleRegion::box(Vector lower, Vector upper) {
  require_same_size(lower, upper, "box bounds");
  require_finite(lower, "box lower bound");
  require_finite(upper, "box upper bound");
  if (lower.size() < 1) throw DomainError("region dimension must be positive");
  if ((upper.array() < lower.array()).any()) throw DomainError("box lower bound exceeds upper");
  const int dim = static_cast<int>(lower.size());
  return FeasibleRegion(dim, Box{std::move(lower), std::move(upper)});
}

std::string FeasibleRegion::name() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const L1Ball& b) { os << "l1_ball(r=" << b.radius << ")"; },
                 [&](const LpBall& b) { os << "lp_ball(r=" << b.radius << ",p=" << b.p << ")"; },
                 [&](const Simplex& s) { os << "simplex(scale=" << s.scale << ")"; },
                 [&](const Box&) { os << "box"; },
             },
             kind_);
  return os.str();
}

bool FeasibleRegion::contains(const Vector& x, double tol) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  return std::visit(
      Overloaded{
          [&](const L1Ball& b) { return x.lpNorm<1>() <= b.radius + tol; },
          [&](const LpBall& b) {
            const double m = x.lpNorm<Eigen::Infinity>();
            if (m == 0.0) return true;
            const double norm = m * std::pow((x.array().abs() / m).pow(b.p).sum(), 1.0 / b.p);
            return norm <= b.radius + tol;
          },
          [&](const Simplex& s) {
            return x.minCoeff() >= -tol && std::abs(x.sum() - s.scale) <= tol;
          },
          [&](const Box& b) {
            return ((x - b.lower).array() >= -tol).all() && ((b.upper - x).array() >= -tol).all();
          },
      },
      kind_);
}

std::size_t FeasibleRegion::vertex_count() const {
  return std::visit(Overloaded{
                        [&](const L1Ball&) -> std::size_t { return 2 * std::size_t(dim_); },
                        [&](const Simplex&) -> std::size_t { return std::size_t(dim_); },
                        [&](const Box&) -> std::size_t {
                          if (dim_ >= 62) throw UnsupportedError("box too large to enumerate");
                          return std::size_t{1} << dim_;
                        },
                        [&](const LpBall&) -> std::size_t {
                          throw UnsupportedError("lp ball has infinitely many extreme points");
                        },
                    },
                    kind_);
}

std::vector<Vertex> FeasibleRegion::vertices() const {
  std::vector<Vertex> out;
  std::visit(Overloaded{
                 [&](const L1Ball& b) {
                   for (int i = 0; i < dim_; ++i) {
                     out.push_back({VertexId::basis(i, +1), signed_basis(dim_, i, b.radius)});
                     out.push_back({VertexId::basis(i, -1), signed_basis(dim_, i, -b.radius)});
                   }
                 },
                 [&](const Simplex& s) {
                   for (int i = 0; i < dim_; ++i) {
                     out.push_back({VertexId::basis(i, +1), signed_basis(dim_, i, s.scale)});
                   }
                 },
                 [&](const Box& b) {
                   const std::size_t n = vertex_count();
                   for (std::size_t mask = 0; mask < n; ++mask) {
                     Vector v = b.lower;
                     for (int i = 0; i < dim_; ++i) {
                       if (mask & (std::size_t{1} << i)) v[i] = b.upper[i];
                     }
                     out.push_back({VertexId::dense(v), v});
                   }
                 },
                 [&](const LpBall&) {
                   throw UnsupportedError("lp ball has infinitely many extreme points");
                 },
             },
             kind_);
  return out;
}

Vertex lmo(const FeasibleRegion& region, const Vector& c) {
  if (c.size() != region.dim()) throw DomainError("lmo: dimension mismatch");
  require_finite(c, "lmo direction");
  const int n = region.dim();
  return std::visit(
      Overloaded{
          [&](const L1Ball& b) -> Vertex {
            Eigen::Index i = 0;
            c.cwiseAbs().maxCoeff(&i);  // first maximal index
            const int sign = c[i] > 0.0 ? -1 : +1;
            return {VertexId::basis(int(i), sign), signed_basis(n, int(i), sign * b.radius)};
          },
          [&](const Simplex& s) -> Vertex {
            Eigen::Index i = 0;
            c.minCoeff(&i);
            return {VertexId::basis(int(i), +1), signed_basis(n, int(i), s.scale)};
          },
          [&](const Box& b) -> Vertex {
            Vector v(n);
            for (int i = 0; i < n; ++i) v[i] = c[i] < 0.0 ? b.upper[i] : b.lower[i];
            return {VertexId::dense(v), v};
          },
          [&](const LpBall& b) -> Vertex {
            const double m = c.lpNorm<Eigen::Infinity>();
            Vector v(n);
            if (m == 0.0) {
              v = signed_basis(n, 0, -b.radius);
              return {VertexId::dense(v), v};
            }
            // Work with c / max|c_i| so the powers cannot overflow.
            const double q = b.p / (b.p - 1.0);
            const Eigen::ArrayXd a = c.array().abs() / m;
            const Eigen::ArrayXd pw = a.pow(q - 1.0);
            const double norm_q_pow = std::pow(a.pow(q).sum(), (q - 1.0) / q);
            for (int i = 0; i < n; ++i) {
              const double sgn = c[i] > 0.0 ? 1.0 : (c[i] < 0.0 ? -1.0 : 0.0);
              v[i] = -b.radius * sgn * pw[i] / norm_q_pow;
            }
            return {VertexId::dense(v), v};
          },
      },
      region.kind());
}

const ActiveEntry& away_vertex(const ActiveSet& s, const Vector& grad) {
  if (s.empty()) throw DomainError("away_vertex on empty active set");
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double val = grad.dot(s[i].vertex);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  return s[best];
}

double region_diameter(const FeasibleRegion& region) {
  const double n = region.dim();
  return std::visit(Overloaded{
                        [&](const L1Ball& b) { return 2.0 * b.radius; },
                        [&](const LpBall& b) {
                          if (b.p >= 2.0) return 2.0 * b.radius * std::pow(n, 0.5 - 1.0 / b.p);
                          return 2.0 * b.radius;
                        },
                        [&](const Simplex& s) { return region.dim() > 1 ? s.scale * std::sqrt(2.0) : 0.0; },
                        [&](const Box& b) { return (b.upper - b.lower).norm(); },
                    },
                    region.kind());
}

Vertex random_extreme_point(const FeasibleRegion& region, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector d(region.dim());
  for (int i = 0; i < region.dim(); ++i) d[i] = normal(rng);
  return lmo(region, d);
}

}  // namespace rfw
