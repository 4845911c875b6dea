#include "ferronem/quadrature.hpp"

#include <string>

#include "ferronem/errors.hpp"

namespace ferronem {

namespace {

// Orbit helpers for the S3-symmetric point classes.
void add_centroid(TriangleRule& rule, double w) {
  rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  rule.weights.push_back(w);
}

void add_orbit3(TriangleRule& rule, double w, double a, double b) {
  rule.points.push_back({a, b, b});
  rule.points.push_back({b, a, b});
  rule.points.push_back({b, b, a});
  rule.weights.insert(rule.weights.end(), 3, w);
}

void add_orbit6(TriangleRule& rule, double w, double a, double b, double c) {
  rule.points.push_back({a, b, c});
  rule.points.push_back({a, c, b});
  rule.points.push_back({b, a, c});
  rule.points.push_back({b, c, a});
  rule.points.push_back({c, a, b});
  rule.points.push_back({c, b, a});
  rule.weights.insert(rule.weights.end(), 6, w);
}

// Dunavant rules of degree 1, 6 (12 points) and 8 (16 points).
TriangleRule make_degree1() {
  TriangleRule r;
  r.degree = 1;
  add_centroid(r, 1.0);
  return r;
}

TriangleRule make_degree6() {
  TriangleRule r;
  r.degree = 6;
  add_orbit3(r, 0.116786275726379, 0.501426509658179, 0.249286745170910);
  add_orbit3(r, 0.050844906370207, 0.873821971016996, 0.063089014491502);
  add_orbit6(r, 0.082851075618374, 0.053145049844817, 0.310352451033784, 0.636502499121399);
  return r;
}

TriangleRule make_degree8() {
  TriangleRule r;
  r.degree = 8;
  add_centroid(r, 0.144315607677787);
  add_orbit3(r, 0.095091634267285, 0.081414823414554, 0.459292588292723);
  add_orbit3(r, 0.103217370534718, 0.658861384496480, 0.170569307751760);
  add_orbit3(r, 0.032458497623198, 0.898905543365938, 0.050547228317031);
  add_orbit6(r, 0.027230314174435, 0.008394777409958, 0.263112829634638, 0.728492392955404);
  return r;
}

}  // namespace

const TriangleRule& triangle_rule(int min_degree) {
  static const TriangleRule deg1 = make_degree1();
  static const TriangleRule deg6 = make_degree6();
  static const TriangleRule deg8 = make_degree8();
  if (min_degree < 1 || min_degree > 8) {
    throw DomainError("no triangle rule of degree " + std::to_string(min_degree));
  }
  if (min_degree == 1) return deg1;
  if (min_degree <= 6) return deg6;
  return deg8;
}

}  // namespace ferronem
