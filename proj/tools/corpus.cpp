#include "corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hc {

namespace {

const char* kCircleLine = R"(# intersection of the unit circle with a line
variables: x y
x^2 + y^2 - 1
3*x - 2*y
)";

// The heart-dipole problem: eight experimental moment equations in the
// dipole decomposition unknowns. Standard data set; 4 isolated solutions,
// 2 of them real.
const char* kHeart = R"(variables: a b c d t u v w
a + b - 0.63254
c + d - 1.34534
t*a + u*b - v*c - w*d - 0.8365348
v*a + w*b + t*c + u*d - 1.7345334
a*t^2 - a*v^2 - 2*c*t*v + b*u^2 - b*w^2 - 2*d*u*w - 1.352352
c*t^2 - c*v^2 + 2*a*t*v + d*u^2 - d*w^2 + 2*b*u*w - 0.843453
a*t^3 - 3*a*t*v^2 + c*v^3 - 3*c*v*t^2 + b*u^3 - 3*b*u*w^2 + d*w^3 - 3*d*w*u^2 + 0.9563453
c*t^3 - 3*c*t*v^2 - a*v^3 + 3*a*v*t^2 + d*u^3 - 3*d*u*w^2 - b*w^3 + 3*b*w*u^2 - 1.2342523
)";

}  // namespace

ParsedSystem make_cyclic(int n) {
  std::ostringstream os;
  os << "variables:";
  for (int i = 1; i <= n; ++i) os << " z" << i;
  os << "\n";
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      os << (i ? " + " : "");
      for (int j = 0; j < k; ++j) os << (j ? "*" : "") << "z" << ((i + j) % n) + 1;
    }
    os << "\n";
  }
  for (int i = 1; i <= n; ++i) os << (i > 1 ? "*" : "") << "z" << i;
  os << " - 1\n";
  return parse_system_text(os.str());
}

ParsedSystem make_katsura(int n) {
  // magnetism equations: u_m = sum_{l=-n..n} u_{|l|} u_{|m-l|}, m = 0..n-1,
  // plus the normalization sum_{l=-n..n} u_{|l|} = 1
  std::ostringstream os;
  os << "variables:";
  for (int i = 0; i <= n; ++i) os << " u" << i;
  os << "\n";
  for (int m = 0; m < n; ++m) {
    bool first = true;
    for (int l = -n; l <= n; ++l) {
      int a = std::abs(l), b = std::abs(m - l);
      if (b > n) continue;
      os << (first ? "" : " + ") << "u" << a << "*u" << b;
      first = false;
    }
    os << " - u" << m << "\n";
  }
  os << "u0";
  for (int l = 1; l <= n; ++l) os << " + 2*u" << l;
  os << " - 1\n";
  return parse_system_text(os.str());
}

namespace {

// A 6R serial-chain inverse position instance. Unknowns are the middle
// joint-axis direction vectors z2..z5 in the base frame; the base axis is
// (0,0,1), so the adjacent-angle constraint z1·z2 = c12 pins the third
// component of z2 and is eliminated up front. Remaining: four unit-norm
// constraints (one reduced), three adjacent-angle products, one linear
// tool-axis angle, and the three position-loop components. The target
// position is placed outside the reachable workspace, so no real
// configuration exists.
ParsedSystem make_ipp2_impl() {
  const double c12 = 0.3, c23 = -0.25, c34 = 0.4, c45 = 0.2, c56 = -0.35;
  const double a1 = 0.7, a2 = 1.1, a3 = 0.8, a4 = 0.9, a5 = 0.6;
  const double d2 = 0.4, d3 = 1.2, d4 = 0.5, d5 = 0.8;
  const double z6n = std::sqrt(0.2 * 0.2 + 0.4 * 0.4 + 0.7 * 0.7);
  const double z6x = 0.2 / z6n, z6y = -0.4 / z6n, z6z = 0.7 / z6n;
  const double px = 7.3, py = -6.1, pz = 8.9;

  // variable order: z2x z2y | z3x z3y z3z | z4x z4y z4z | z5x z5y z5z
  const std::vector<std::string> names = {"z2x", "z2y", "z3x", "z3y", "z3z",
                                          "z4x", "z4y", "z4z", "z5x", "z5y", "z5z"};
  const int N = 11;
  auto var = [&](int i) { return Polynomial::variable(N, i); };
  auto cst = [&](double v) { return Polynomial::constant(N, Complex(v, 0.0)); };

  // z2 has the fixed third component c12
  std::vector<Polynomial> z2 = {var(0), var(1), cst(c12)};
  std::vector<Polynomial> z3 = {var(2), var(3), var(4)};
  std::vector<Polynomial> z4 = {var(5), var(6), var(7)};
  std::vector<Polynomial> z5 = {var(8), var(9), var(10)};
  std::vector<Polynomial> z1 = {cst(0.0), cst(0.0), cst(1.0)};
  std::vector<Polynomial> z6 = {cst(z6x), cst(z6y), cst(z6z)};

  auto dot = [&](const std::vector<Polynomial>& u, const std::vector<Polynomial>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  };
  auto cross = [&](const std::vector<Polynomial>& u, const std::vector<Polynomial>& v) {
    return std::vector<Polynomial>{u[1] * v[2] - u[2] * v[1],
                                   u[2] * v[0] - u[0] * v[2],
                                   u[0] * v[1] - u[1] * v[0]};
  };
  auto axpy = [&](std::vector<Polynomial>& acc, double s, const std::vector<Polynomial>& v) {
    for (int i = 0; i < 3; ++i) acc[i] = acc[i] + v[i] * Complex(s, 0.0);
  };

  std::vector<Polynomial> eqs;
  eqs.push_back(dot(z2, z2) - cst(1.0));
  eqs.push_back(dot(z3, z3) - cst(1.0));
  eqs.push_back(dot(z4, z4) - cst(1.0));
  eqs.push_back(dot(z5, z5) - cst(1.0));
  eqs.push_back(dot(z2, z3) - cst(c23));
  eqs.push_back(dot(z3, z4) - cst(c34));
  eqs.push_back(dot(z4, z5) - cst(c45));
  eqs.push_back(dot(z5, z6) - cst(c56));

  std::vector<Polynomial> pos = {cst(-px), cst(-py), cst(-pz)};
  axpy(pos, d2, z2);
  axpy(pos, d3, z3);
  axpy(pos, d4, z4);
  axpy(pos, d5, z5);
  axpy(pos, a1, cross(z1, z2));
  axpy(pos, a2, cross(z2, z3));
  axpy(pos, a3, cross(z3, z4));
  axpy(pos, a4, cross(z4, z5));
  axpy(pos, a5, cross(z5, z6));
  eqs.push_back(pos[0]);
  eqs.push_back(pos[1]);
  eqs.push_back(pos[2]);

  return ParsedSystem{PolySystem(std::move(eqs)), names};
}

}  // namespace

const std::vector<BenchmarkEntry>& benchmark_table() {
  static const std::vector<BenchmarkEntry> table = {
      {"cyclic7", 5040, 924, 56},
      {"ipp2", 1024, 16, 0},
      {"heart", 576, 4, 2},
      {"katsura11", 2048, 2048, 326},
  };
  return table;
}

std::vector<std::string> corpus_names() {
  return {"circle_line", "heart", "cyclic7", "katsura11", "ipp2"};
}

bool has_corpus_system(const std::string& name) {
  for (const std::string& n : corpus_names())
    if (n == name) return true;
  return false;
}

ParsedSystem corpus_system(const std::string& name) {
  if (name == "circle_line") return parse_system_text(kCircleLine);
  if (name == "heart") return parse_system_text(kHeart);
  if (name == "cyclic7") return make_cyclic(7);
  if (name == "katsura11") return make_katsura(11);
  if (name == "ipp2") return make_ipp2_impl();
  throw std::invalid_argument("unknown corpus system: " + name);
}

std::string render_system(const PolySystem& F, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "variables:";
  for (const std::string& n : names) os << " " << n;
  os << "\n";
  for (const Polynomial& p : F.polys()) os << p.to_string(names) << "\n";
  return os.str();
}

}  // namespace hc
