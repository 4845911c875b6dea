#include <cmath>

#include <gtest/gtest.h>

#include "ferronem/errors.hpp"
#include "ferronem/quadrature.hpp"

namespace ferronem {
namespace {

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// \int_T x^i y^j over the reference triangle divided by its area 1/2.
double monomial_mean(int i, int j) { return 2.0 * factorial(i) * factorial(j) / factorial(i + j + 2); }

TEST(TriangleRule, WeightsSumToOne) {
  for (int d = 1; d <= 8; ++d) {
    const TriangleRule& rule = triangle_rule(d);
    EXPECT_GE(rule.degree, d);
    double sum = 0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-14);
    for (const auto& p : rule.points) EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-14);
  }
}

TEST(TriangleRule, IntegratesMonomialsExactly) {
  for (int d = 1; d <= 8; ++d) {
    const TriangleRule& rule = triangle_rule(d);
    for (int i = 0; i <= rule.degree; ++i) {
      for (int j = 0; i + j <= rule.degree; ++j) {
        double q = 0;
        for (std::size_t k = 0; k < rule.weights.size(); ++k) {
          q += rule.weights[k] * std::pow(rule.points[k][1], i) * std::pow(rule.points[k][2], j);
        }
        EXPECT_NEAR(q, monomial_mean(i, j), 1e-13) << "degree " << rule.degree << " x^" << i << " y^" << j;
      }
    }
  }
}

TEST(TriangleRule, RejectsOutOfRange) {
  EXPECT_THROW(triangle_rule(0), DomainError);
  EXPECT_THROW(triangle_rule(9), DomainError);
}

}  // namespace
}  // namespace ferronem
