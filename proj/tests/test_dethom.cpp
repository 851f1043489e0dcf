#include <doctest.h>

#include <random>
#include <sstream>

#include "hc/dethom.hpp"
#include "support/expand.hpp"

using namespace hc;
using hc::testing::blend_entries;
using hc::testing::expand_det;
using hc::testing::expanded_det_system;
using hc::testing::pencil_entries;

namespace {

CVec cpoint4(Complex a, Complex b, Complex c, Complex d) {
  CVec x(4);
  x << a, b, c, d;
  return x;
}

CVec random_cpoint4(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec x(4);
  for (int i = 0; i < 4; ++i) x[i] = Complex(d(rng), d(rng));
  return x;
}

RMat rdiag(double a, double b) {
  RMat m(2, 2);
  m << a, 0.0, 0.0, b;
  return m;
}

SymmetricPencil diag_pencil_2x2() {
  // f(x) = det(x0*I + x1*diag(1,-1)) = x0^2 - x1^2
  return SymmetricPencil(rdiag(1, 1), rdiag(1, -1), RMat::Zero(2, 2), RMat::Zero(2, 2));
}

double rel_err(const CVec& got, const CVec& want) {
  return (got - want).norm() / (1.0 + want.norm());
}

}  // namespace

TEST_CASE("pencil_value: basis vectors, zero, scalars") {
  SymmetricPencil p = SymmetricPencil::random(3, 101);
  CMat a0 = pencil_value(p, cpoint4({1, 0}, {0, 0}, {0, 0}, {0, 0}));
  CHECK((a0 - p.mats[0].cast<Complex>()).cwiseAbs().maxCoeff() == 0.0);
  CMat z = pencil_value(p, cpoint4({0, 0}, {0, 0}, {0, 0}, {0, 0}));
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);

  RMat s0(1, 1), s1(1, 1), s2(1, 1), s3(1, 1);
  s0 << 0.5;
  s1 << -1.25;
  s2 << 2.0;
  s3 << 0.125;
  SymmetricPencil scalars(s0, s1, s2, s3);
  CMat v = pencil_value(scalars, cpoint4({1, 0}, {2, 0}, {3, 0}, {4, 0}));
  CHECK(std::abs(v(0, 0) - Complex(0.5 - 2.5 + 6.0 + 0.5, 0.0)) < 1e-15);
}

TEST_CASE("f_eval: identity and diagonal pencils") {
  SymmetricPencil idp(RMat::Identity(2, 2), RMat::Zero(2, 2), RMat::Zero(2, 2),
                      RMat::Zero(2, 2));
  CHECK(std::abs(f_eval(idp, cpoint4({3, 0}, {0, 0}, {0, 0}, {0, 0})) -
                 Complex(9.0, 0.0)) < 1e-13);

  SymmetricPencil dp = diag_pencil_2x2();
  CHECK(std::abs(f_eval(dp, cpoint4({1, 0}, {2, 0}, {0, 0}, {0, 0})) -
                 Complex(-3.0, 0.0)) < 1e-13);
}

TEST_CASE("f_eval matches the expanded determinant polynomial") {
  SymmetricPencil p = SymmetricPencil::random(3, 7);
  Polynomial f = expand_det(pencil_entries(p));
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    CVec x = random_cpoint4(rng);
    Complex got = f_eval(p, x);
    Complex want = f.evaluate(x);
    CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("f_gradient: scalar pencil returns the coefficients") {
  RMat s0(1, 1), s1(1, 1), s2(1, 1), s3(1, 1);
  s0 << 0.7;
  s1 << -0.3;
  s2 << 1.9;
  s3 << 0.25;
  SymmetricPencil p(s0, s1, s2, s3);
  CVec g = f_gradient(p, cpoint4({0.4, 0.1}, {1, 0}, {-2, 0}, {0.5, 0}));
  CHECK(std::abs(g[0] - Complex(0.7, 0)) < 1e-13);
  CHECK(std::abs(g[1] - Complex(-0.3, 0)) < 1e-13);
  CHECK(std::abs(g[2] - Complex(1.9, 0)) < 1e-13);
  CHECK(std::abs(g[3] - Complex(0.25, 0)) < 1e-13);
}

TEST_CASE("f_gradient: hand-worked diagonal example") {
  // f = x0^2 - x1^2, gradient (2x0, -2x1, 0, 0) = (2, -4, 0, 0) at (1,2,0,0)
  SymmetricPencil dp = diag_pencil_2x2();
  CVec g = f_gradient(dp, cpoint4({1, 0}, {2, 0}, {0, 0}, {0, 0}));
  CHECK(std::abs(g[0] - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(g[1] - Complex(-4, 0)) < 1e-12);
  CHECK(std::abs(g[2]) < 1e-12);
  CHECK(std::abs(g[3]) < 1e-12);
}

TEST_CASE("f_gradient matches central finite differences of f_eval") {
  std::mt19937_64 rng(21);
  const double h = 1e-6;
  for (int n : {2, 4, 6}) {
    SymmetricPencil p = SymmetricPencil::random(n, 300 + n);
    CVec x = random_cpoint4(rng);
    CVec g = f_gradient(p, x);
    for (int j = 0; j < 4; ++j) {
      CVec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      Complex fd = (f_eval(p, xp) - f_eval(p, xm)) / (2.0 * h);
      CHECK(std::abs(g[j] - fd) <= 1e-5 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("f_hessian: hand-worked diagonal entries") {
  SymmetricPencil dp = diag_pencil_2x2();
  CMat H = f_hessian(dp, cpoint4({1, 0}, {2, 0}, {0, 0}, {0, 0}));
  CHECK(std::abs(H(0, 0) - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(H(0, 1) - Complex(0, 0)) < 1e-12);
  CHECK(std::abs(H(1, 1) - Complex(-2, 0)) < 1e-12);
}

TEST_CASE("f_hessian matches finite differences of the gradient") {
  std::mt19937_64 rng(22);
  const double h = 1e-5;
  SymmetricPencil p = SymmetricPencil::random(4, 44);
  CVec x = random_cpoint4(rng);
  CMat H = f_hessian(p, x);
  CHECK((H - H.transpose()).norm() <= 1e-10 * (1.0 + H.norm()));
  for (int j = 0; j < 4; ++j) {
    CVec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    CVec col = (f_gradient(p, xp) - f_gradient(p, xm)) / (2.0 * h);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(H(i, j) - col[i]) <= 1e-4 * (1.0 + std::abs(col[i])));
  }
}

TEST_CASE("F_eval: scalar pencil and expanded-system oracle") {
  RMat one(1, 1);
  one << 1.0;
  SymmetricPencil p(one, RMat::Zero(1, 1), RMat::Zero(1, 1), RMat::Zero(1, 1));
  CVec v = F_eval(p, cpoint4({2, 0}, {0, 0}, {0, 0}, {0, 0}));
  CHECK(std::abs(v[0] - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(v[1] - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(v[2]) < 1e-14);
  CHECK(std::abs(v[3]) < 1e-14);
  CHECK(std::abs(v[4]) < 1e-14);

  SymmetricPencil q = SymmetricPencil::random(3, 33);
  PolySystem sys = expanded_det_system(q);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    CVec x = random_cpoint4(rng);
    CVec got = F_eval(q, x);
    CVec want = sys.evaluate(x);
    CHECK(rel_err(got, want) <= 1e-10);
  }
}

TEST_CASE("homogeneity and Euler identity") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int n : {2, 3, 5}) {
    SymmetricPencil p = SymmetricPencil::random(n, 500 + n);
    CVec x = random_cpoint4(rng);
    Complex lambda(d(rng), d(rng));
    Complex f1 = f_eval(p, x);
    Complex f2 = f_eval(p, CVec(lambda * x));
    Complex scaled = cpow_int(lambda, n) * f1;
    CHECK(std::abs(f2 - scaled) <= 1e-10 * (1.0 + std::abs(scaled)));

    CVec g = f_gradient(p, x);
    Complex euler(0, 0);
    for (int i = 0; i < 4; ++i) euler += x[i] * g[i];
    Complex nf = static_cast<double>(n) * f1;
    CHECK(std::abs(euler - nf) <= 1e-9 * (1.0 + std::abs(nf)));
  }
}

TEST_CASE("determinant homotopy matches the expanded 5-variable oracle") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int n : {2, 3}) {
    SymmetricPencil A = SymmetricPencil::random(n, 600 + n);
    SymmetricPencil B = SymmetricPencil::random(n, 700 + n);
    Polynomial h5 = expand_det(blend_entries(A, B));  // vars x0..x3, t

    std::vector<Polynomial> comp = {h5};
    for (int i = 0; i < 4; ++i) comp.push_back(h5.differentiate(i));

    DeterminantHomotopy H(A, B);
    auto ws = H.make_workspace();

    for (int rep = 0; rep < 20; ++rep) {
      CVec x = random_cpoint4(rng);
      Complex t(d(rng), d(rng));
      CVec pt(5);
      pt << x[0], x[1], x[2], x[3], t;

      CVec ev(5), dt(5), want_ev(5), want_dt(5);
      CMat J(5, 4), want_J(5, 4);
      H.eval(x, t, ev, *ws);
      H.jacobian(x, t, J, *ws);
      H.dt(x, t, dt, *ws);
      for (int i = 0; i < 5; ++i) {
        want_ev[i] = comp[i].evaluate(pt);
        want_dt[i] = comp[i].differentiate(4).evaluate(pt);
        for (int j = 0; j < 4; ++j) want_J(i, j) = comp[i].differentiate(j).evaluate(pt);
      }
      CHECK(rel_err(ev, want_ev) <= 1e-9);
      CHECK(rel_err(dt, want_dt) <= 1e-9);
      CHECK((J - want_J).norm() <= 1e-9 * (1.0 + want_J.norm()));
    }
  }
}

TEST_CASE("determinant homotopy endpoints and constant family") {
  SymmetricPencil A = SymmetricPencil::random(3, 11);
  SymmetricPencil B = SymmetricPencil::random(3, 12);
  DeterminantHomotopy H(A, B);
  auto ws = H.make_workspace();
  std::mt19937_64 rng(13);
  CVec x = random_cpoint4(rng);

  CVec ev(5);
  H.eval(x, Complex(0.0, 0.0), ev, *ws);
  CVec fa = F_eval(A, x);
  for (int i = 0; i < 5; ++i) CHECK(ev[i] == fa[i]);
  H.eval(x, Complex(1.0, 0.0), ev, *ws);
  CVec fb = F_eval(B, x);
  for (int i = 0; i < 5; ++i) CHECK(ev[i] == fb[i]);

  DeterminantHomotopy HC(A, A);
  auto ws2 = HC.make_workspace();
  CVec dt(5);
  for (double t : {0.0, 0.31, 0.77, 1.0}) {
    HC.dt(x, Complex(t, 0.0), dt, *ws2);
    CHECK(dt.norm() <= 1e-12);
  }
}

TEST_CASE("determinant homotopy eval_and_jacobian is bitwise consistent") {
  SymmetricPencil A = SymmetricPencil::random(3, 21);
  SymmetricPencil B = SymmetricPencil::random(3, 22);
  DeterminantHomotopy H(A, B);
  auto ws = H.make_workspace();
  std::mt19937_64 rng(23);
  CVec x = random_cpoint4(rng);
  Complex t(0.4, -0.2);
  CVec f1(5), f2(5);
  CMat J1(5, 4), J2(5, 4);
  H.eval(x, t, f1, *ws);
  H.jacobian(x, t, J1, *ws);
  H.eval_and_jacobian(x, t, f2, J2, *ws);
  for (int i = 0; i < 5; ++i) CHECK(f1[i] == f2[i]);
  CHECK((J1 - J2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("exactly singular pencil values take the adjugate fallback") {
  // M(e0) = diag(1,0): rank n-1, LU has an exact zero pivot
  RMat a0 = rdiag(1.0, 0.0);
  RMat a1(2, 2), a2(2, 2), a3(2, 2);
  a1 << 0.3, 0.1, 0.1, -0.6;
  a2 << -0.2, 0.5, 0.5, 0.4;
  a3 << 0.9, -0.3, -0.3, 0.2;
  SymmetricPencil p(a0, a1, a2, a3);
  Polynomial f = expand_det(pencil_entries(p));

  CVec e0 = cpoint4({1, 0}, {0, 0}, {0, 0}, {0, 0});
  CHECK(std::abs(f_eval(p, e0) - f.evaluate(e0)) <= 1e-12);
  CVec g = f_gradient(p, e0);
  CMat H = f_hessian(p, e0);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(g[i] - f.differentiate(i).evaluate(e0)) <= 1e-12);
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(H(i, j) - f.differentiate(i).differentiate(j).evaluate(e0)) <=
            1e-11);
  }

  // rank n-2 at n=3: adjugate vanishes, second derivatives stay finite
  RMat b0 = RMat::Zero(3, 3);
  b0(0, 0) = 1.0;
  SymmetricPencil q(b0, SymmetricPencil::random(3, 91).mats[1],
                    SymmetricPencil::random(3, 92).mats[2],
                    SymmetricPencil::random(3, 93).mats[3]);
  Polynomial fq = expand_det(pencil_entries(q));
  CVec e0b = cpoint4({1, 0}, {0, 0}, {0, 0}, {0, 0});
  CHECK(std::abs(f_eval(q, e0b)) <= 1e-14);
  CVec gq = f_gradient(q, e0b);
  CMat Hq = f_hessian(q, e0b);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(gq[i] - fq.differentiate(i).evaluate(e0b)) <= 1e-12);
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(Hq(i, j) - fq.differentiate(i).differentiate(j).evaluate(e0b)) <=
            1e-11);
  }
}

TEST_CASE("singular point count") {
  CHECK(singular_point_count(20) == 1330);
  CHECK(singular_point_count(3) == 4);
  CHECK(singular_point_count(2) == 1);
}

TEST_CASE("monomial count formula and brute force") {
  CHECK(monomial_count(20) == 166551);
  CHECK(monomial_count(1) == 16);

  // brute force at n=2: expand the blended system and count its monomials
  SymmetricPencil A = SymmetricPencil::random(2, 800);
  SymmetricPencil B = SymmetricPencil::random(2, 801);
  Polynomial h5 = expand_det(blend_entries(A, B));
  std::uint64_t count = h5.terms().size();
  for (int i = 0; i < 4; ++i) count += h5.differentiate(i).terms().size();
  CHECK(count == monomial_count(2));
}

TEST_CASE("spectrahedron boundary test") {
  SymmetricPencil p(RMat::Identity(2, 2), rdiag(1.0, 0.0), RMat::Zero(2, 2),
                    RMat::Zero(2, 2));
  // A(z) = I + z1*diag(1,0)
  CHECK(on_spectrahedron_boundary(p, Eigen::Vector4d(1, 0, 0, 0), 1e-10));     // I
  CHECK(on_spectrahedron_boundary(p, Eigen::Vector4d(1, -1, 0, 0), 1e-10));    // diag(0,1)
  CHECK_FALSE(on_spectrahedron_boundary(p, Eigen::Vector4d(1, -2, 0, 0), 1e-10));
  CHECK_THROWS_AS(
      on_spectrahedron_boundary(p, Eigen::Vector4d(0, 1, 0, 0), 1e-10),
      std::domain_error);
}

TEST_CASE("pencil file round trip and validation") {
  SymmetricPencil p = SymmetricPencil::random(3, 1000);
  std::ostringstream os;
  save_pencil(os, p);
  std::istringstream is(os.str());
  SymmetricPencil q = load_pencil(is);
  REQUIRE(q.n == 3);
  for (int i = 0; i < 4; ++i)
    CHECK((p.mats[i] - q.mats[i]).cwiseAbs().maxCoeff() == 0.0);

  std::istringstream bad("n: 2\n1 2\n3 4\n1 0\n0 1\n1 0\n0 1\n1 0\n0 1\n");
  CHECK_THROWS_AS(load_pencil(bad), std::invalid_argument);
}
