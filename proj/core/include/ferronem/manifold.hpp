#pragma once

#include <array>

namespace ferronem {

/// Point on the unit circle S^1. The invariant x^2 + y^2 = 1 holds to
/// rounding for every instance.
class UnitVec2 {
 public:
  /// Normalizes (x, y) if its length lies within 1e-9 of one; throws
  /// DomainError otherwise.
  static UnitVec2 from(double x, double y);
  static UnitVec2 from_angle(double alpha);

  UnitVec2() = default;  // (1, 0)

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double dot(const UnitVec2& o) const noexcept { return x_ * o.x_ + y_ * o.y_; }
  double angle() const noexcept;

  friend bool operator==(const UnitVec2&, const UnitVec2&) = default;

 private:
  UnitVec2(double x, double y) noexcept : x_(x), y_(y) {}

  double x_ = 1.0;
  double y_ = 0.0;

  friend UnitVec2 rotate90(const UnitVec2&) noexcept;
  friend UnitVec2 double_angle(const UnitVec2&) noexcept;
  friend UnitVec2 project_sphere(double, double);
};

/// Coupling constants of the ferronematic model. Q_c is the positive root of
/// Q^3 - (1 + c^2/2) Q - c/2 = 0 and M_c = sqrt(1 + c Q_c).
struct MaterialConstants {
  double c = 0.0;
  double q_c = 1.0;
  double m_c = 1.0;
};

/// Throws DomainError for c < 0.
MaterialConstants material_constants(double c);

/// Point Psi = (Q_c R(n), M_c n) of the constraint manifold N in R^4.
class ManifoldPoint {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Validates both length constraints and the coupling Q/Q_c = R(M/M_c);
  /// throws DomainError when any is violated beyond kTolerance.
  static ManifoldPoint checked(const std::array<double, 4>& psi,
                               const MaterialConstants& mc);

  ManifoldPoint() = default;

  const std::array<double, 4>& psi() const noexcept { return psi_; }
  double operator[](int i) const noexcept { return psi_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const ManifoldPoint&, const ManifoldPoint&) = default;

 private:
  explicit ManifoldPoint(const std::array<double, 4>& psi) noexcept : psi_(psi) {}

  std::array<double, 4> psi_{1.0, 0.0, 1.0, 0.0};

  friend ManifoldPoint lift(const UnitVec2&, const MaterialConstants&) noexcept;
};

/// Quarter turn (x, y) -> (-y, x).
UnitVec2 rotate90(const UnitVec2& v) noexcept;

/// R(n) = (2n n^T - I) e_1 = (2 n_1^2 - 1, 2 n_1 n_2).
UnitVec2 double_angle(const UnitVec2& n) noexcept;

/// G(n) = (Q_c R(n), M_c n).
ManifoldPoint lift(const UnitVec2& n, const MaterialConstants& mc) noexcept;

/// Inverse of lift: M_c^{-1} (Psi_3, Psi_4). Rejects points off the manifold.
UnitVec2 unlift(const ManifoldPoint& psi, const MaterialConstants& mc);

/// phi(r) = 2r / (1 - r^2) on (-1, 1); DomainError for |r| >= 1.
double phi(double r);
double phi_prime(double r);

/// Smallest norm accepted by project_sphere.
inline constexpr double kProjectionFloor = 1e-8;

/// x / |x|. The descent only projects vectors of norm >= 1, so anything
/// below kProjectionFloor is reported as DomainError.
UnitVec2 project_sphere(double x, double y);

}  // namespace ferronem
