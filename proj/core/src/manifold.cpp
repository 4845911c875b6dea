#include "ferronem/manifold.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

constexpr double kUnitSlack = 1e-9;

}  // namespace

UnitVec2 UnitVec2::from(double x, double y) {
  const double norm = std::hypot(x, y);
  if (!(std::abs(norm - 1.0) <= kUnitSlack)) {
    std::ostringstream os;
    os << "vector (" << x << ", " << y << ") has length " << norm
       << ", expected a unit vector";
    throw DomainError(os.str());
  }
  return UnitVec2(x / norm, y / norm);
}

UnitVec2 UnitVec2::from_angle(double alpha) {
  return UnitVec2(std::cos(alpha), std::sin(alpha));
}

double UnitVec2::angle() const noexcept { return std::atan2(y_, x_); }

UnitVec2 rotate90(const UnitVec2& v) noexcept { return UnitVec2(-v.y_, v.x_); }

UnitVec2 double_angle(const UnitVec2& n) noexcept {
  return UnitVec2(2.0 * n.x_ * n.x_ - 1.0, 2.0 * n.x_ * n.y_);
}

MaterialConstants material_constants(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("coupling parameter c must be finite and non-negative");
  }
  const double linear = 1.0 + 0.5 * c * c;
  auto f = [&](double q) { return (q * q - linear) * q - 0.5 * c; };
  auto df = [&](double q) { return 3.0 * q * q - linear; };

  // f(1) = -(c^2 + c)/2 <= 0, so the positive root lies to the right of 1.
  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw Error("material_constants: no positive root found");
  }
  if (f(lo) == 0.0) hi = lo;

  // Newton with a bisection safeguard.
  double q = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double fq = f(q);
    if (fq == 0.0) break;
    if (fq < 0.0) lo = q; else hi = q;
    double next = q - fq / df(q);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == q) break;
    q = next;
  }
  if (!(q > 0.0) || std::abs(f(q)) > 1e-12) {
    throw Error("material_constants: root finder failed to converge");
  }
  return MaterialConstants{c, q, std::sqrt(1.0 + c * q)};
}

ManifoldPoint lift(const UnitVec2& n, const MaterialConstants& mc) noexcept {
  const UnitVec2 nu = double_angle(n);
  return ManifoldPoint({mc.q_c * nu.x(), mc.q_c * nu.y(), mc.m_c * n.x(), mc.m_c * n.y()});
}

ManifoldPoint ManifoldPoint::checked(const std::array<double, 4>& psi,
                                     const MaterialConstants& mc) {
  const double q_len = std::hypot(psi[0], psi[1]);
  const double m_len = std::hypot(psi[2], psi[3]);
  if (!(std::abs(q_len - mc.q_c) <= kTolerance) || !(std::abs(m_len - mc.m_c) <= kTolerance)) {
    std::ostringstream os;
    os << "point off the constraint manifold: |Q| = " << q_len << " (expected " << mc.q_c
       << "), |M| = " << m_len << " (expected " << mc.m_c << ")";
    throw DomainError(os.str());
  }
  const double n1 = psi[2] / mc.m_c;
  const double n2 = psi[3] / mc.m_c;
  const double r1 = 2.0 * n1 * n1 - 1.0;
  const double r2 = 2.0 * n1 * n2;
  if (!(std::abs(psi[0] / mc.q_c - r1) <= kTolerance) ||
      !(std::abs(psi[1] / mc.q_c - r2) <= kTolerance)) {
    throw DomainError("point violates the coupling Q/Q_c = R(M/M_c)");
  }
  return ManifoldPoint(psi);
}

UnitVec2 unlift(const ManifoldPoint& psi, const MaterialConstants& mc) {
  const double m_len = std::hypot(psi[2], psi[3]);
  const double q_len = std::hypot(psi[0], psi[1]);
  if (!(std::abs(m_len - mc.m_c) <= ManifoldPoint::kTolerance) ||
      !(std::abs(q_len - mc.q_c) <= ManifoldPoint::kTolerance)) {
    throw DomainError("unlift: point does not satisfy the manifold length constraints");
  }
  return UnitVec2::from(psi[2] / mc.m_c, psi[3] / mc.m_c);
}

double phi(double r) {
  if (!(std::abs(r) < 1.0)) throw DomainError("phi: argument must lie in (-1, 1)");
  return 2.0 * r / (1.0 - r * r);
}

double phi_prime(double r) {
  if (!(std::abs(r) < 1.0)) throw DomainError("phi_prime: argument must lie in (-1, 1)");
  const double s = 1.0 - r * r;
  return 2.0 * (1.0 + r * r) / (s * s);
}

UnitVec2 project_sphere(double x, double y) {
  const double norm = std::hypot(x, y);
  if (!(norm >= kProjectionFloor)) {
    throw DomainError("project_sphere: vector norm below projection floor");
  }
  return UnitVec2(x / norm, y / norm);
}

}  // namespace ferronem
