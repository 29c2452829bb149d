#include <gtest/gtest.h>

#include <random>

#include "rfw/core.hpp"

using namespace rfw;

namespace {

Vertex basis(int n, int i, int sign = 1) {
  Vector p = Vector::Zero(n);
  p(i) = sign;
  return {VertexId::basis(i, sign), p};
}

ActiveSet two_point(double wa, double wb) {
  const Vertex a = basis(3, 0), b = basis(3, 1);
  return ActiveSet::from_entries({{a.id, a.point, wa}, {b.id, b.point, wb}});
}

}  // namespace

TEST(VertexId, BasisComparesExactly) {
  EXPECT_EQ(VertexId::basis(2, 1), VertexId::basis(2, 1));
  EXPECT_FALSE(VertexId::basis(2, 1) == VertexId::basis(2, -1));
  EXPECT_FALSE(VertexId::basis(1, 1) == VertexId::basis(2, 1));
}

TEST(VertexId, DenseComparesWithinTolerance) {
  Vector a(2), b(2), c(2);
  a << 0.5, -0.25;
  b << 0.5 + 5e-13, -0.25;
  c << 0.5 + 1e-9, -0.25;
  EXPECT_EQ(VertexId::dense(a), VertexId::dense(b));
  EXPECT_FALSE(VertexId::dense(a) == VertexId::dense(c));
  EXPECT_FALSE(VertexId::dense(a) == VertexId::basis(0, 1));
}

TEST(ActiveSet, FwStepScalesAndInserts) {
  const auto s = active_set_apply_fw_step(two_point(0.5, 0.5), basis(3, 2), 0.2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s.weight_of(VertexId::basis(0, 1)), 0.4, 1e-15);
  EXPECT_NEAR(s.weight_of(VertexId::basis(1, 1)), 0.4, 1e-15);
  EXPECT_NEAR(s.weight_of(VertexId::basis(2, 1)), 0.2, 1e-15);
}

TEST(ActiveSet, FwStepTowardOwnVertexIsIdempotent) {
  const auto s = active_set_apply_fw_step(ActiveSet::singleton(basis(3, 0)), basis(3, 0), 0.7);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].weight, 1.0);
}

TEST(ActiveSet, FullFwStepCollapses) {
  const auto s = active_set_apply_fw_step(two_point(0.5, 0.5), basis(3, 2), 1.0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].id, VertexId::basis(2, 1));
  EXPECT_DOUBLE_EQ(s[0].weight, 1.0);
}

TEST(ActiveSet, FwStepRejectsOutOfRangeEta) {
  EXPECT_THROW(active_set_apply_fw_step(two_point(0.5, 0.5), basis(3, 2), -0.1), DomainError);
  EXPECT_THROW(active_set_apply_fw_step(two_point(0.5, 0.5), basis(3, 2), 1.1), DomainError);
}

TEST(ActiveSet, AwayStepShiftsMass) {
  const auto r = active_set_apply_away_step(two_point(0.5, 0.5), VertexId::basis(1, 1), 0.5);
  EXPECT_FALSE(r.was_drop);
  EXPECT_NEAR(r.set.weight_of(VertexId::basis(0, 1)), 0.75, 1e-15);
  EXPECT_NEAR(r.set.weight_of(VertexId::basis(1, 1)), 0.25, 1e-15);
}

TEST(ActiveSet, MaximalAwayStepDrops) {
  const auto r = active_set_apply_away_step(two_point(0.5, 0.5), VertexId::basis(1, 1), 1.0);
  EXPECT_TRUE(r.was_drop);
  ASSERT_EQ(r.set.size(), 1u);
  EXPECT_DOUBLE_EQ(r.set.weight_of(VertexId::basis(0, 1)), 1.0);
}

TEST(ActiveSet, DropFromUnevenWeightsStaysFeasible) {
  const auto s = two_point(0.9, 0.1);
  const double eta_max = s.max_away_step(VertexId::basis(1, 1));
  EXPECT_NEAR(eta_max, 0.1 / 0.9, 1e-15);
  // Track the iterate independently of the weights.
  const Vector x = s.reconstruct();
  const Vector expected = x + eta_max * (x - basis(3, 1).point);
  const auto r = active_set_apply_away_step(s, VertexId::basis(1, 1), eta_max);
  EXPECT_TRUE(r.was_drop);
  ASSERT_EQ(r.set.size(), 1u);
  EXPECT_LT((r.set.reconstruct() - expected).lpNorm<Eigen::Infinity>(), 1e-12);
  EXPECT_NEAR(expected.lpNorm<1>(), 1.0, 1e-12);  // stays in the l1 ball
}

TEST(ActiveSet, AwayStepErrors) {
  EXPECT_THROW(active_set_apply_away_step(two_point(0.5, 0.5), VertexId::basis(1, 1), 1.01),
               DomainError);
  EXPECT_THROW(active_set_apply_away_step(two_point(0.5, 0.5), VertexId::basis(2, 1), 0.1),
               DomainError);
}

TEST(ActiveSet, FromEntriesRejectsBadInput) {
  const Vertex a = basis(2, 0);
  EXPECT_THROW(ActiveSet::from_entries({{a.id, a.point, 0.5}, {a.id, a.point, 0.5}}), DomainError);
  EXPECT_THROW(ActiveSet::from_entries({{a.id, a.point, 0.7}}), DomainError);
  EXPECT_THROW(ActiveSet::from_entries({{a.id, a.point, -1.0}}), DomainError);
}

TEST(ActiveSet, SingletonMaxAwayStepIsUnbounded) {
  EXPECT_TRUE(std::isinf(ActiveSet::singleton(basis(2, 0)).max_away_step(VertexId::basis(0, 1))));
}

// Random sequences of FW, away and drop updates keep every invariant, and the
// weights reproduce the iterate updated directly by x <- x + eta d. Each step
// starts from the reconstructed point so rounding does not compound.
TEST(ActiveSetProperty, RandomUpdateSequencesPreserveInvariants) {
  std::mt19937_64 rng(11);
  const int n = 4;
  std::uniform_int_distribution<int> coord(0, n - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ActiveSet s = ActiveSet::singleton(basis(n, coord(rng)));
    Vector x = s.reconstruct();
    for (int step = 0; step < 60; ++step) {
      const std::size_t before = s.size();
      x = s.reconstruct();
      double eta_used = 0.0;
      if (unit(rng) < 0.5 || s.size() == 1) {
        const Vertex v = basis(n, coord(rng), sign(rng) ? 1 : -1);
        const double eta = unit(rng) < 0.05 ? 1.0 : unit(rng);
        x = x + eta * (v.point - x);
        eta_used = eta;
        s.apply_fw_step(v, eta);
        EXPECT_LE(s.size(), before + 1);
      } else {
        const auto& e = s[std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng)];
        const VertexId id = e.id;
        const Vector a = e.vertex;
        const double eta_max = s.max_away_step(id);
        const bool drop = unit(rng) < 0.3;
        const double eta = drop ? eta_max : unit(rng) * eta_max;
        x = x + eta * (x - a);
        eta_used = eta;
        const bool dropped = s.apply_away_step(id, eta);
        if (dropped) {
          EXPECT_EQ(s.size(), before - 1);
        } else {
          EXPECT_EQ(s.size(), before);
        }
      }
      double total = 0.0;
      for (const auto& e : s.entries()) {
        EXPECT_GT(e.weight, 0.0);
        total += e.weight;
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
      EXPECT_LE((s.reconstruct() - x).lpNorm<Eigen::Infinity>(), 1e-10 * (1.0 + eta_used));
      EXPECT_NO_THROW(s.validate());
    }
  }
}

TEST(SolverConfig, ValidateRejectsBadParameters) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SolverConfig{};
  c.target_gap = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SolverConfig{};
  c.adaptive.tau = 1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = SolverConfig{};
  c.adaptive.xi = 0.9;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(LineSearchKind, RoundTripsNames) {
  for (auto k : {LineSearchKind::ExactQuadratic, LineSearchKind::GoldenSection,
                 LineSearchKind::Adaptive}) {
    EXPECT_EQ(line_search_from_string(to_string(k)), k);
  }
  EXPECT_THROW(line_search_from_string("newton"), DomainError);
}
