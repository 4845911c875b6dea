#include <gtest/gtest.h>

#include "ferronem/descent.hpp"
#include "ferronem/errors.hpp"
#include "ferronem/problems.hpp"
#include "support.hpp"

namespace ferronem {
namespace {

using testing::rng;
using testing::smooth_field;
using testing::structured;
using testing::uniform;

const MaterialConstants kMc = material_constants(0.005);

AdmmParams coarse_admm() {
  AdmmParams p;
  p.zeta = 16;
  p.rho = 1;
  p.eps_pri = 1e-8;
  return p;
}

TEST(ObjectiveF, AtZeroIsTwiceTheEnergy) {
  auto gen = rng(70);
  for (int n : {2, 5, 9}) {
    const auto mesh = structured(n);
    const NodalField f = smooth_field(mesh, kMc, gen, 0.5);
    const IterateData data = IterateData::from_field(f);
    const double f0 = objective_F(data, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh->num_interior())), *mesh, kMc);
    EXPECT_LE(std::abs(f0 - 2 * energy_pairwise(f)), 1e-12 * f0);
  }
}

TEST(ObjectiveF, SplitsIntoBothHalves) {
  auto gen = rng(71);
  const auto mesh = structured(4);
  const IterateData data = IterateData::from_field(smooth_field(mesh, kMc, gen));
  Eigen::VectorXd r(static_cast<Eigen::Index>(mesh->num_interior()));
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = uniform(gen, -0.9, 0.9);
  Eigen::VectorXd p = r;
  for (Eigen::Index i = 0; i < r.size(); ++i) p(i) = phi(r(i));
  EXPECT_NEAR(objective_F(data, r, *mesh, kMc), objective_F1(data, r, *mesh, kMc) + objective_F2(data, p, *mesh, kMc),
              1e-12);
  r(0) = 1.0;
  EXPECT_THROW(objective_F(data, r, *mesh, kMc), DomainError);
}

TEST(ApplyUpdate, ZeroStepIsIdentity) {
  auto gen = rng(72);
  const auto mesh = structured(5);
  const NodalField f = smooth_field(mesh, kMc, gen);
  const NodalField g = apply_update(IterateData::from_field(f), Eigen::VectorXd::Zero(16), f);
  for (int a = 0; a < static_cast<int>(f.size()); ++a) {
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(g[a][k], f[a][k], 1e-15);
  }
}

TEST(ApplyUpdate, SingleVertexExample) {
  const auto mesh = structured(2);
  std::vector<ManifoldPoint> values(mesh->num_vertices(), lift(UnitVec2::from(1, 0), kMc));
  values[3] = lift(UnitVec2::from_angle(0.3), kMc);
  const NodalField f(mesh, kMc, values);
  const NodalField g = apply_update(IterateData::from_field(f), Eigen::VectorXd::Constant(1, 0.5), f);
  const UnitVec2 n = g.director(4);
  EXPECT_NEAR(n.x(), 2 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(n.y(), 1 / std::sqrt(5.0), 1e-12);
  EXPECT_NO_THROW(ManifoldPoint::checked(g[4].psi(), kMc));
  for (int a = 0; a < static_cast<int>(f.size()); ++a) {
    if (a != 4) EXPECT_EQ(g[a], f[a]);
  }
}

TEST(ApplyUpdate, MatchesProjectionOfTangentStep) {
  auto gen = rng(73);
  const auto mesh = structured(6);
  const NodalField f = smooth_field(mesh, kMc, gen);
  const IterateData data = IterateData::from_field(f);
  Eigen::VectorXd r(static_cast<Eigen::Index>(mesh->num_interior()));
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = uniform(gen, -0.9, 0.9);
  const NodalField g = apply_update(data, r, f);
  for (int a : mesh->interior_vertices()) {
    const auto i = mesh->interior_index(a);
    const auto& n = data.n[static_cast<std::size_t>(a)];
    const auto& t = data.t[static_cast<std::size_t>(a)];
    const double x = n.x() + r(i) * t.x();
    const double y = n.y() + r(i) * t.y();
    const double len = std::hypot(x, y);
    EXPECT_NEAR(g.director(a).x(), x / len, 1e-12);
    EXPECT_NEAR(g.director(a).y(), y / len, 1e-12);
  }
}

TEST(CountOscillations, Examples) {
  EXPECT_EQ(count_oscillations({3, 2, 1}, 1e-9), 0);
  EXPECT_EQ(count_oscillations({3, 2, 2.5, 1}, 1e-9), 1);
  EXPECT_EQ(count_oscillations({2, 2, 2}, 1e-9), 0);
  EXPECT_EQ(count_oscillations({2, 2 + 5e-10, 2}, 1e-9), 0);
  EXPECT_EQ(count_oscillations({1}, 1e-9), 0);
}

TEST(DescentParams, Validation) {
  DescentParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_DOUBLE_EQ(p.slack(), 1e-9);
  p.gamma = 1.0;
  EXPECT_THROW(p.validate(), DomainError);
  p = DescentParams{};
  p.max_outer = 0;
  EXPECT_THROW(p.validate(), DomainError);
}

TEST(RunDescent, FromInterpolantNeedsFewSteps) {
  const auto mesh = structured(12);
  const NodalField f = interpolate(analytic_solution(example1_spec(), kMc), mesh, kMc);
  const DescentReport report = run_descent(f, DescentParams{}, coarse_admm());
  EXPECT_TRUE(report.converged);
  EXPECT_LE(report.outer_iterations(), 3);
  const auto& e = report.energy_history;
  EXPECT_LE(e[e.size() - 2] - e.back(), 1e-6);
}

TEST(RunDescent, Example1CoarseMesh) {
  const auto mesh = structured(12);
  const NodalField psi0 = initial_guess(example1_spec(), default_path_end(), mesh, kMc);
  const DescentReport report = run_descent(psi0, DescentParams{}, coarse_admm());
  EXPECT_TRUE(report.converged);
  EXPECT_GE(report.outer_iterations(), 2);
  EXPECT_LE(report.outer_iterations(), 6);
  EXPECT_EQ(report.energy_history.size(), static_cast<std::size_t>(report.outer_iterations() + 1));
  EXPECT_EQ(report.oscillation_count, 0);
  EXPECT_EQ(report.inner_residuals.size(), report.inner_iterations.size());
  for (double r : report.inner_residuals) EXPECT_LE(r, 1e-8);
  EXPECT_EQ(report.energy_history.front(), energy_pairwise(psi0));
  EXPECT_EQ(report.energy_history.back(), energy_pairwise(*report.final_field));
  for (int a = 0; a < static_cast<int>(psi0.size()); ++a) {
    if (mesh->is_boundary(a)) EXPECT_EQ((*report.final_field)[a], psi0[a]);
  }
  for (std::size_t j = 1; j < report.energy_history.size(); ++j) {
    EXPECT_LE(report.energy_history[j], report.energy_history[j - 1] + 1e-9);
  }
}

TEST(RunDescent, Example2NeedsMoreOuterIterations) {
  const auto mesh = structured(12);
  const NodalField e1 = initial_guess(example1_spec(), default_path_end(), mesh, kMc);
  const NodalField e2 = initial_guess(example2_spec(), example2_path_end(), mesh, kMc);
  const DescentReport r1 = run_descent(e1, DescentParams{}, coarse_admm());
  const DescentReport r2 = run_descent(e2, DescentParams{}, coarse_admm());
  EXPECT_GT(r2.outer_iterations(), r1.outer_iterations());
}

TEST(RunDescent, ThrowsWithPartialReport) {
  const auto mesh = structured(12);
  const NodalField psi0 = initial_guess(example1_spec(), default_path_end(), mesh, kMc);
  DescentParams params;
  params.max_outer = 1;
  try {
    run_descent(psi0, params, coarse_admm());
    FAIL() << "expected DescentNonConvergence";
  } catch (const DescentNonConvergence& e) {
    EXPECT_FALSE(e.report().converged);
    EXPECT_EQ(e.report().outer_iterations(), 1);
    EXPECT_EQ(e.report().energy_history.size(), 2u);
  }
}

TEST(RunDescent, BoundaryOnlyMesh) {
  const auto mesh = structured(1);
  const NodalField f = interpolate(analytic_solution(example1_spec(), kMc), mesh, kMc);
  const DescentReport report = run_descent(f, DescentParams{}, coarse_admm());
  EXPECT_TRUE(report.converged);
  EXPECT_EQ(report.final_field->values(), f.values());
}

}  // namespace
}  // namespace ferronem
