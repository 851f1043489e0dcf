#include <doctest.h>

#include <random>

#include "hc/totaldegree.hpp"
#include "hc/tracker.hpp"
#include "support/test_homotopies.hpp"

using namespace hc;
using hc::testing::OverdeterminedLine;
using hc::testing::PowerHomotopy;
using hc::testing::scalar_point;
using hc::testing::SquareNoT;

namespace {

StraightLineHomotopy circle_line_homotopy(Complex gamma) {
  PolySystem F({parse_polynomial("x^2 + y^2 - 1", {"x", "y"}),
                parse_polynomial("3*x - 2*y", {"x", "y"})});
  PolySystem G = build_start_system(F).system;
  return StraightLineHomotopy(F, G, gamma);
}

}  // namespace

TEST_CASE("davidenko: linear homotopy has unit slope") {
  PowerHomotopy h(1);
  Tracker tr(h);
  CVec out(1);
  REQUIRE(tr.davidenko_rhs(scalar_point({0.7, 0.0}), Complex(0.7, 0.0), out));
  CHECK(std::abs(out[0] - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("davidenko: implicit differentiation of x^2 = t") {
  PowerHomotopy h(2);
  Tracker tr(h);
  CVec out(1);
  REQUIRE(tr.davidenko_rhs(scalar_point({0.5, 0.0}), Complex(0.25, 0.0), out));
  CHECK(std::abs(out[0] - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("davidenko: defining residual J*xdot + H_t vanishes") {
  StraightLineHomotopy h = circle_line_homotopy(sample_unit_gamma(9));
  Tracker tr(h);
  auto ws = h.make_workspace();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    CVec x(2);
    x << Complex(d(rng), d(rng)), Complex(d(rng), d(rng));
    Complex t(0.5 * (d(rng) + 1.0), 0.0);
    CVec xdot(2);
    REQUIRE(tr.davidenko_rhs(x, t, xdot));
    CMat J(2, 2);
    CVec ht(2);
    h.jacobian(x, t, J, *ws);
    h.dt(x, t, ht, *ws);
    CHECK((J * xdot + ht).norm() < 1e-10);
  }
}

TEST_CASE("rk4 is exact on the linear homotopy") {
  PowerHomotopy h(1);
  Tracker tr(h);
  CVec out(1);
  REQUIRE(tr.rk4_predict(scalar_point({1.0, 0.0}), 1.0, -0.5, out));
  CHECK(out[0] == Complex(0.5, 0.0));
}

TEST_CASE("rk4 with zero step is the identity") {
  PowerHomotopy h(2);
  Tracker tr(h);
  CVec out(1);
  REQUIRE(tr.rk4_predict(scalar_point({0.8, 0.1}), 0.64, 0.0, out));
  CHECK(out[0] == Complex(0.8, 0.1));
}

TEST_CASE("rk4 local error on the square-root branch") {
  PowerHomotopy h(2);
  Tracker tr(h);
  CVec out(1);
  REQUIRE(tr.rk4_predict(scalar_point({1.0, 0.0}), 1.0, -0.36, out));
  CHECK(std::abs(out[0] - Complex(0.8, 0.0)) <= 1e-4);
}

TEST_CASE("newton corrector: scalar convergence from a nearby guess") {
  PowerHomotopy h(2);  // H(x,1) = x^2 - 1
  Tracker tr(h);
  CVec x = scalar_point({1.1, 0.0});
  CorrectorResult res = tr.newton_correct(x, Complex(1.0, 0.0), 1e-7, 8);
  CHECK(res.converged);
  CHECK(res.iters <= 4);
  CHECK(std::abs(x[0] - Complex(1.0, 0.0)) < 1e-10);
}

TEST_CASE("newton corrector: fixed point at an exact root") {
  PowerHomotopy h(2);
  Tracker tr(h);
  CVec x = scalar_point({1.0, 0.0});
  CorrectorResult res = tr.newton_correct(x, Complex(1.0, 0.0));
  CHECK(res.converged);
  CHECK(res.iters <= 1);
  CHECK(res.update_norm < 1e-14);
}

TEST_CASE("newton corrector: overdetermined least-squares step") {
  OverdeterminedLine h;
  Tracker tr(h);
  CVec x = scalar_point({1.2, 0.0});
  CorrectorResult res = tr.newton_correct(x, Complex(1.0, 0.0), 1e-10, 6);
  CHECK(res.converged);
  CHECK(std::abs(x[0] - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("newton corrector: quadratic convergence probe") {
  PowerHomotopy h(2);
  Tracker tr(h);
  CVec x = scalar_point({1.001, 0.0});
  CorrectorResult res = tr.newton_correct(x, Complex(1.0, 0.0), 1e-14, 8);
  REQUIRE(res.update_norms.size() >= 3);
  // pick consecutive updates below 1e-3 and test e_{k+1} <= C e_k^2
  bool checked = false;
  for (size_t k = 0; k + 1 < res.update_norms.size(); ++k) {
    double e0 = res.update_norms[k], e1 = res.update_norms[k + 1];
    if (e0 < 1e-3 && e0 > 1e-9) {
      CHECK(e1 <= 10.0 * e0 * e0);
      checked = true;
    }
  }
  CHECK(checked);
}

TEST_CASE("track: linear homotopy reaches zero") {
  PowerHomotopy h(1);
  Tracker tr(h);
  PathOutcome out = tr.track(scalar_point({1.0, 0.0}), 1.0, 0.0);
  REQUIRE(out.status == PathStatus::success);
  CHECK(std::abs(out.x_end[0]) < 1e-10);
  CHECK(out.residual <= tr.options().corrector_tol);
}

TEST_CASE("track: circle/line paths reach the closed-form roots") {
  StraightLineHomotopy h = circle_line_homotopy(sample_unit_gamma(2));
  const double s = 1.0 / std::sqrt(13.0);
  CVec root_plus(2), root_minus(2);
  root_plus << Complex(2.0 * s, 0.0), Complex(3.0 * s, 0.0);
  root_minus = -root_plus;

  StartSolutions starts({2, 1});
  int hits_plus = 0, hits_minus = 0;
  for (std::uint64_t j = 0; j < starts.count(); ++j) {
    Tracker tr(h);
    PathOutcome out = tr.track(starts.solution(j), 1.0, 0.0);
    REQUIRE(out.status == PathStatus::success);
    CHECK(out.residual <= 1e-7);
    if ((out.x_end - root_plus).norm() < 1e-6) ++hits_plus;
    if ((out.x_end - root_minus).norm() < 1e-6) ++hits_minus;
  }
  CHECK(hits_plus == 1);
  CHECK(hits_minus == 1);
}

TEST_CASE("track: singular Jacobian at the start is never a false success") {
  SquareNoT h;
  Tracker tr(h);
  PathOutcome out = tr.track(scalar_point({0.0, 0.0}), 1.0, 0.0);
  CHECK(out.status != PathStatus::success);
  CHECK((out.status == PathStatus::failed_singular_jacobian ||
         out.status == PathStatus::failed_min_step ||
         out.status == PathStatus::failed_start_residual));
}

TEST_CASE("track: start residual precondition is enforced") {
  PowerHomotopy h(1);
  Tracker tr(h);
  PathOutcome out = tr.track(scalar_point({5.0, 0.0}), 1.0, 0.0);
  CHECK(out.status == PathStatus::failed_start_residual);
}

TEST_CASE("track: bitwise deterministic") {
  StraightLineHomotopy h = circle_line_homotopy(sample_unit_gamma(2));
  StartSolutions starts({2, 1});
  Tracker tr1(h), tr2(h);
  PathOutcome a = tr1.track(starts.solution(0), 1.0, 0.0);
  PathOutcome b = tr2.track(starts.solution(0), 1.0, 0.0);
  REQUIRE(a.status == PathStatus::success);
  REQUIRE(b.status == PathStatus::success);
  CHECK(a.x_end[0] == b.x_end[0]);
  CHECK(a.x_end[1] == b.x_end[1]);
  CHECK(a.steps_taken == b.steps_taken);
}

TEST_CASE("corrected points satisfy the patch equation to machine precision") {
  PolySystem F({parse_polynomial("x^2 + y^2 - 1", {"x", "y"}),
                parse_polynomial("3*x - 2*y", {"x", "y"})});
  PolySystem G = build_start_system(F).system;
  auto inner = std::make_shared<StraightLineHomotopy>(F.homogenized(), G.homogenized(),
                                                      sample_unit_gamma(2));
  StartSolutions starts({2, 1});
  for (std::uint64_t j = 0; j < starts.count(); ++j) {
    CVec lifted(3);
    lifted[0] = Complex(1.0, 0.0);
    lifted.tail(2) = starts.solution(j);
    lifted /= lifted.norm();
    CVec v = lifted.conjugate();
    PatchedHomotopy ph(inner, AffinePatch{v});
    Tracker tr(ph);
    for (double t_stop : {0.6, 0.2, 0.0}) {
      PathOutcome out = tr.track(lifted, 1.0, t_stop);
      REQUIRE(out.status == PathStatus::success);
      Complex dot(0, 0);
      for (int i = 0; i < 3; ++i) dot += v[i] * out.x_end[i];
      CHECK(std::abs(dot - Complex(1.0, 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("track: step budget is respected") {
  StraightLineHomotopy h = circle_line_homotopy(sample_unit_gamma(2));
  TrackerOptions opts;
  opts.max_steps = 3;  // far too few to cross [1,0]
  Tracker tr(h, opts);
  StartSolutions starts({2, 1});
  PathOutcome out = tr.track(starts.solution(0), 1.0, 0.0);
  CHECK(out.status == PathStatus::failed_max_steps);
  CHECK(out.steps_taken <= 3);
}
