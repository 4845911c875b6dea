#include <complex>

#include <gtest/gtest.h>

#include "ferronem/errors.hpp"
#include "ferronem/manifold.hpp"
#include "support.hpp"

namespace ferronem {
namespace {

using testing::random_unit;
using testing::rng;
using testing::uniform;

void expect_unit(const UnitVec2& v, double x, double y, double tol = 1e-15) {
  EXPECT_NEAR(v.x(), x, tol);
  EXPECT_NEAR(v.y(), y, tol);
}

// Positive root of Q^3 - Q (c = 0) by bisection, independent of the library.
double bisect_root(double c) {
  auto f = [c](double q) { return q * q * q - (1.0 + c * c / 2.0) * q - c / 2.0; };
  double lo = 0.5, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// Cardano formula evaluated in complex arithmetic.
double cardano(double c) {
  using C = std::complex<double>;
  const C chi = std::sqrt(C(c * c / 16.0 - std::pow(1.0 + c * c / 2.0, 3) / 27.0, 0.0));
  const C q = std::pow(C(c / 4.0) + chi, 1.0 / 3.0) + std::pow(C(c / 4.0) - chi, 1.0 / 3.0);
  EXPECT_NEAR(q.imag(), 0.0, 1e-12);
  return q.real();
}

TEST(UnitVec2, RejectsFarFromUnit) {
  EXPECT_THROW(UnitVec2::from(1.1, 0.0), DomainError);
  EXPECT_THROW(UnitVec2::from(0.0, 0.0), DomainError);
  const UnitVec2 v = UnitVec2::from(1.0 + 5e-10, 0.0);
  EXPECT_NEAR(v.x() * v.x() + v.y() * v.y(), 1.0, 1e-15);
}

TEST(UnitVec2, FromAngleIsUnit) {
  auto gen = rng(1);
  for (int i = 0; i < 1000; ++i) {
    const UnitVec2 v = random_unit(gen);
    EXPECT_NEAR(v.x() * v.x() + v.y() * v.y(), 1.0, 1e-12);
  }
}

TEST(Rotate90, Examples) {
  expect_unit(rotate90(UnitVec2::from(1, 0)), 0, 1);
  expect_unit(rotate90(UnitVec2::from(0, 1)), -1, 0);
  expect_unit(rotate90(UnitVec2::from_angle(0.3)), std::cos(0.3 + M_PI / 2), std::sin(0.3 + M_PI / 2), 1e-15);
}

TEST(Rotate90, UnitAndOrthogonal) {
  auto gen = rng(2);
  for (int i = 0; i < 1000; ++i) {
    const UnitVec2 v = random_unit(gen);
    const UnitVec2 t = rotate90(v);
    EXPECT_NEAR(v.dot(t), 0.0, 1e-15);
    EXPECT_NEAR(t.x() * t.x() + t.y() * t.y(), 1.0, 1e-12);
  }
}

TEST(DoubleAngle, Examples) {
  expect_unit(double_angle(UnitVec2::from(1, 0)), 1, 0);
  expect_unit(double_angle(UnitVec2::from(0, 1)), -1, 0);
  expect_unit(double_angle(UnitVec2::from(std::sqrt(0.5), std::sqrt(0.5))), 0, 1, 1e-15);
}

TEST(DoubleAngle, DoublesTheAngle) {
  auto gen = rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double a = uniform(gen, -M_PI, M_PI);
    expect_unit(double_angle(UnitVec2::from_angle(a)), std::cos(2 * a), std::sin(2 * a), 1e-14);
  }
}

TEST(MaterialConstants, ZeroCoupling) {
  const MaterialConstants mc = material_constants(0.0);
  EXPECT_NEAR(mc.q_c, bisect_root(0.0), 1e-14);
  EXPECT_NEAR(mc.q_c, 1.0, 1e-14);
  EXPECT_NEAR(mc.m_c, 1.0, 1e-14);
}

TEST(MaterialConstants, ReferenceCoupling) {
  const MaterialConstants mc = material_constants(0.005);
  EXPECT_NEAR(mc.q_c, 1.0013, 5e-5);
  EXPECT_NEAR(mc.m_c, 1.0025, 5e-5);
}

TEST(MaterialConstants, CubicResidual) {
  for (double c : {0.0, 0.005, 0.1, 1.0}) {
    const MaterialConstants mc = material_constants(c);
    const double q = mc.q_c;
    EXPECT_LE(std::abs(q * q * q - (1 + c * c / 2) * q - c / 2), 1e-12) << "c = " << c;
    EXPECT_NEAR(mc.m_c * mc.m_c, 1 + c * q, 1e-12);
    EXPECT_GT(q, 0.0);
  }
}

TEST(MaterialConstants, AgreesWithCardanoFormula) {
  for (double c : {0.005, 0.1}) {
    EXPECT_NEAR(material_constants(c).q_c, cardano(c), 1e-10) << "c = " << c;
    EXPECT_NEAR(material_constants(c).q_c, bisect_root(c), 1e-12) << "c = " << c;
  }
}

TEST(MaterialConstants, RejectsNegative) { EXPECT_THROW(material_constants(-0.1), DomainError); }

TEST(Lift, Examples) {
  const MaterialConstants c0 = material_constants(0.0);
  EXPECT_EQ(lift(UnitVec2::from(1, 0), c0).psi(), (std::array<double, 4>{1, 0, 1, 0}));
  const auto p = lift(UnitVec2::from(0, 1), c0).psi();
  EXPECT_NEAR(p[0], -1, 1e-15);
  EXPECT_NEAR(p[1], 0, 1e-15);
  EXPECT_NEAR(p[2], 0, 1e-15);
  EXPECT_NEAR(p[3], 1, 1e-15);

  const MaterialConstants mc = material_constants(0.005);
  const auto q = lift(UnitVec2::from(1, 0), mc).psi();
  EXPECT_NEAR(q[0], 1.0013, 5e-5);
  EXPECT_EQ(q[1], 0.0);
  EXPECT_NEAR(q[2], 1.0025, 5e-5);
  EXPECT_EQ(q[3], 0.0);
}

TEST(ManifoldPoint, CheckedValidates) {
  const MaterialConstants mc = material_constants(0.005);
  const auto good = lift(UnitVec2::from_angle(0.7), mc).psi();
  EXPECT_NO_THROW(ManifoldPoint::checked(good, mc));
  auto bad_length = good;
  bad_length[0] *= 1.001;
  EXPECT_THROW(ManifoldPoint::checked(bad_length, mc), DomainError);
  // Right lengths but nematic part not the double angle of the magnetic part.
  auto bad_coupling = good;
  std::swap(bad_coupling[0], bad_coupling[1]);
  EXPECT_THROW(ManifoldPoint::checked(bad_coupling, mc), DomainError);
}

TEST(Unlift, Examples) {
  const MaterialConstants mc = material_constants(0.005);
  expect_unit(unlift(ManifoldPoint::checked({mc.q_c, 0, mc.m_c, 0}, mc), mc), 1, 0);
  expect_unit(unlift(ManifoldPoint::checked({-mc.q_c, 0, 0, mc.m_c}, mc), mc), 0, 1);
}

TEST(Unlift, RoundTrip) {
  const MaterialConstants mc = material_constants(0.005);
  auto gen = rng(4);
  for (int i = 0; i < 1000; ++i) {
    const UnitVec2 n = random_unit(gen);
    const ManifoldPoint psi = lift(n, mc);
    const UnitVec2 back = unlift(psi, mc);
    EXPECT_NEAR(back.x(), n.x(), 1e-12);
    EXPECT_NEAR(back.y(), n.y(), 1e-12);
    const auto again = lift(back, mc).psi();
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(again[static_cast<std::size_t>(k)], psi[k], 1e-10);
  }
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi(0.0), 0.0);
  EXPECT_EQ(phi_prime(0.0), 2.0);
  EXPECT_NEAR(phi(0.5), 4.0 / 3.0, 1e-15);
  EXPECT_THROW(phi(1.0), DomainError);
  EXPECT_THROW(phi(-1.5), DomainError);
  EXPECT_THROW(phi_prime(1.0), DomainError);
}

TEST(Phi, DerivativeMatchesFiniteDifference) {
  for (double r : {-0.9, -0.5, 0.1, 0.5, 0.9}) {
    const double step = 1e-6;
    const double fd = (phi(r + step) - phi(r - step)) / (2 * step);
    EXPECT_LE(std::abs(fd - phi_prime(r)) / std::abs(phi_prime(r)), 1e-6) << "r = " << r;
  }
}

TEST(Phi, OddAndIncreasing) {
  auto gen = rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double r = uniform(gen, -0.999, 0.999);
    EXPECT_EQ(phi(-r), -phi(r));
    EXPECT_GT(phi_prime(r), 0.0);
  }
}

TEST(ProjectSphere, Examples) {
  expect_unit(project_sphere(3, 4), 0.6, 0.8, 1e-15);
  expect_unit(project_sphere(1, 0), 1, 0);
  EXPECT_THROW(project_sphere(1e-9, 0), DomainError);
}

TEST(ProjectSphere, UpdatedDirectorHasNormAtLeastOne) {
  auto gen = rng(6);
  for (int i = 0; i < 1000; ++i) {
    const UnitVec2 n = random_unit(gen);
    const UnitVec2 t = rotate90(n);
    const double r = uniform(gen, -5, 5);
    const double x = n.x() + r * t.x();
    const double y = n.y() + r * t.y();
    EXPECT_NEAR(x * x + y * y, 1 + r * r, 1e-12 * (1 + r * r));
  }
}

TEST(ProjectSphere, Nonexpansive) {
  auto gen = rng(7);
  for (int i = 0; i < 10000; ++i) {
    const UnitVec2 dx = random_unit(gen);
    const UnitVec2 dy = random_unit(gen);
    const double sx = uniform(gen, 1, 5);
    const double sy = uniform(gen, 1, 5);
    const UnitVec2 px = project_sphere(sx * dx.x(), sx * dx.y());
    const UnitVec2 py = project_sphere(sy * dy.x(), sy * dy.y());
    const double lhs = std::hypot(px.x() - py.x(), px.y() - py.y());
    const double rhs = std::hypot(sx * dx.x() - sy * dy.x(), sx * dx.y() - sy * dy.y());
    EXPECT_LE(lhs, rhs + 1e-15);
  }
}

// double_angle(P(n + r t)) = P(nu + phi(r) tau).
TEST(Identity, DoubleAngleOfTangentStep) {
  auto gen = rng(8);
  for (int i = 0; i < 10000; ++i) {
    const UnitVec2 n = random_unit(gen);
    const double r = uniform(gen, -0.999, 0.999);
    const UnitVec2 t = rotate90(n);
    const UnitVec2 nu = double_angle(n);
    const UnitVec2 tau = rotate90(nu);
    const UnitVec2 lhs = double_angle(project_sphere(n.x() + r * t.x(), n.y() + r * t.y()));
    const UnitVec2 rhs = project_sphere(nu.x() + phi(r) * tau.x(), nu.y() + phi(r) * tau.y());
    EXPECT_LE(std::hypot(lhs.x() - rhs.x(), lhs.y() - rhs.y()), 1e-10) << "r = " << r;
  }
}

TEST(Identity, LiftDifferentialNorm) {
  auto gen = rng(9);
  for (double c : {0.0, 0.005, 0.5}) {
    const MaterialConstants mc = material_constants(c);
    for (int i = 0; i < 10000; ++i) {
      const UnitVec2 n = random_unit(gen);
      const UnitVec2 t = rotate90(n);
      const double s = uniform(gen, -3, 3);
      const auto d = testing::d_lift(n, s * t.x(), s * t.y(), mc);
      const double lhs = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3];
      const double rhs = (4 * mc.q_c * mc.q_c + mc.m_c * mc.m_c) * s * s;
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * (1 + rhs));
    }
  }
}

TEST(Identity, LiftDifferentialMatchesFiniteDifferences) {
  const MaterialConstants mc = material_constants(0.005);
  auto gen = rng(10);
  for (int i = 0; i < 100; ++i) {
    const double a = uniform(gen, -M_PI, M_PI);
    const double step = 1e-6;
    const auto plus = lift(UnitVec2::from_angle(a + step), mc).psi();
    const auto minus = lift(UnitVec2::from_angle(a - step), mc).psi();
    const UnitVec2 t = rotate90(UnitVec2::from_angle(a));
    const auto d = testing::d_lift(UnitVec2::from_angle(a), t.x(), t.y(), mc);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR((plus[k] - minus[k]) / (2 * step), d[k], 1e-8);
  }
}

}  // namespace
}  // namespace ferronem
