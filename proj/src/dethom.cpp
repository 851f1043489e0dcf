#include "hc/dethom.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace hc {

namespace {

constexpr int kFallbackMaxN = 12;

// determinant with log-scaled magnitude so that products with huge traces
// stay finite while det underflows along near-singular paths
struct ScaledDet {
  double logmag = -std::numeric_limits<double>::infinity();
  Complex phase{0.0, 0.0};
  bool exact_zero = true;

  Complex value() const { return exact_zero ? Complex(0.0, 0.0) : phase * std::exp(logmag); }
  Complex times(Complex z) const {
    if (exact_zero) return Complex(0.0, 0.0);
    double zm = std::abs(z);
    if (zm == 0.0) return Complex(0.0, 0.0);
    return phase * (z / zm) * std::exp(logmag + std::log(zm));
  }
};

ScaledDet scaled_det_from_lu(const Eigen::PartialPivLU<CMat>& lu, int n) {
  ScaledDet d;
  d.logmag = 0.0;
  d.phase = Complex(static_cast<double>(lu.permutationP().determinant()), 0.0);
  d.exact_zero = false;
  for (int i = 0; i < n; ++i) {
    Complex u = lu.matrixLU()(i, i);
    double m = std::abs(u);
    if (m == 0.0) {
      d.exact_zero = true;
      d.logmag = -std::numeric_limits<double>::infinity();
      d.phase = Complex(0.0, 0.0);
      return d;
    }
    d.logmag += std::log(m);
    d.phase *= u / m;
  }
  return d;
}

Complex plain_det(const CMat& m) {
  Eigen::PartialPivLU<CMat> lu(m);
  return scaled_det_from_lu(lu, static_cast<int>(m.rows())).value();
}

Complex tr_prod(const CMat& a, const CMat& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace

SymmetricPencil::SymmetricPencil(RMat a0, RMat a1, RMat a2, RMat a3)
    : mats{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {
  n = static_cast<int>(mats[0].rows());
  if (n < 1) throw std::invalid_argument("pencil matrices must be at least 1x1");
  for (const RMat& m : mats) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("pencil matrices must all be n x n");
    double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
      throw std::invalid_argument("pencil matrix is not symmetric");
  }
}

SymmetricPencil SymmetricPencil::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::array<RMat, 4> ms;
  for (RMat& m : ms) {
    RMat r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = dist(rng);
    m = 0.5 * (r + r.transpose());
  }
  return SymmetricPencil(std::move(ms[0]), std::move(ms[1]), std::move(ms[2]),
                         std::move(ms[3]));
}

SymmetricPencil load_pencil(std::istream& in) {
  std::string tok;
  if (!(in >> tok) || tok != "n:")
    throw std::runtime_error("pencil file must start with 'n: <int>'");
  int n = 0;
  if (!(in >> n) || n < 1) throw std::runtime_error("invalid pencil size");
  std::array<RMat, 4> ms;
  for (RMat& m : ms) {
    m.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(in >> m(i, j)))
          throw std::runtime_error("pencil file ended before four matrices were read");
  }
  return SymmetricPencil(std::move(ms[0]), std::move(ms[1]), std::move(ms[2]),
                         std::move(ms[3]));
}

SymmetricPencil load_pencil_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pencil file: " + path);
  return load_pencil(in);
}

void save_pencil(std::ostream& out, const SymmetricPencil& p) {
  out << "n: " << p.n << "\n\n";
  out.precision(17);
  for (const RMat& m : p.mats) {
    for (int i = 0; i < p.n; ++i) {
      for (int j = 0; j < p.n; ++j) out << (j ? " " : "") << m(i, j);
      out << "\n";
    }
    out << "\n";
  }
}

std::uint64_t singular_point_count(int n) {
  if (n < 1) throw std::invalid_argument("pencil size must be positive");
  std::uint64_t m = static_cast<std::uint64_t>(n) + 1;
  if (m < 3) return 0;
  return m * (m - 1) * (m - 2) / 6;
}

namespace {
std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

std::uint64_t monomial_count(int n) {
  if (n < 1) throw std::invalid_argument("pencil size must be positive");
  std::uint64_t nu = static_cast<std::uint64_t>(n);
  return (nu + 1) * binom(nu + 3, 3) + 4 * (nu + 1) * binom(nu + 2, 3);
}

bool on_spectrahedron_boundary(const SymmetricPencil& p, const Eigen::Vector4d& x,
                               double tol) {
  double scale = x.cwiseAbs().maxCoeff();
  if (std::abs(x[0]) <= 1e-8 * scale || x[0] == 0.0)
    throw std::domain_error("point lies outside the affine chart x0 != 0");
  RMat a = p.mats[0];
  for (int i = 1; i < 4; ++i) a += (x[i] / x[0]) * p.mats[i];
  double anorm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (anorm == 0.0) return true;
  Eigen::SelfAdjointEigenSolver<RMat> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol * anorm;
}

// ---------------------------------------------------------------------------
// evaluation core

namespace {

// All quantities of the blended pencil at one (x,t): the pencil value M and
// its LU, the scaled determinant, the solves S_i = M⁻¹C_i with their traces,
// and the t-direction solves. Falls back to division-free adjugate/minor
// forms when M is exactly singular.
class PencilCore {
 public:
  PencilCore(const std::array<CMat, 4>& C, const CVec& x) : C_(C), n_(static_cast<int>(C[0].rows())) {
    M_ = x[0] * C_[0] + x[1] * C_[1] + x[2] * C_[2] + x[3] * C_[3];
    lu_.compute(M_);
    det_ = scaled_det_from_lu(lu_, n_);
    if (!det_.exact_zero) {
      for (int i = 0; i < 4; ++i) {
        S_[i] = lu_.solve(C_[i]);
        tau_[i] = S_[i].trace();
      }
      inverse_ok_ = std::isfinite(tau_[0].real()) && std::isfinite(tau_[0].imag()) &&
                    std::isfinite(tau_[1].real()) && std::isfinite(tau_[1].imag()) &&
                    std::isfinite(tau_[2].real()) && std::isfinite(tau_[2].imag()) &&
                    std::isfinite(tau_[3].real()) && std::isfinite(tau_[3].imag());
      for (int i = 0; inverse_ok_ && i < 4; ++i) inverse_ok_ = S_[i].allFinite();
    }
    if (!inverse_ok_ && n_ > kFallbackMaxN)
      throw std::runtime_error(
          "pencil value is numerically rank-deficient beyond the adjugate fallback");
  }

  Complex f() const { return det_.value(); }

  Eigen::Vector4cd gradient() const {
    Eigen::Vector4cd g;
    if (inverse_ok_) {
      for (int i = 0; i < 4; ++i) g[i] = det_.times(tau_[i]);
    } else {
      const CMat& adj = adjugate();
      for (int i = 0; i < 4; ++i) g[i] = tr_prod(adj, C_[i]);
    }
    return g;
  }

  Eigen::Matrix4cd hessian() const {
    Eigen::Matrix4cd h;
    if (inverse_ok_) {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          Complex v = det_.times(tau_[i] * tau_[j] - tr_prod(S_[i], S_[j]));
          h(i, j) = v;
          h(j, i) = v;
        }
    } else {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          Complex v = d2det(C_[i], C_[j]);
          h(i, j) = v;
          h(j, i) = v;
        }
    }
    return h;
  }

  // t-derivative pieces for direction matrices Delta_i (dC_i/dt) and
  // D = Σ x_i Delta_i (dM/dt):
  //   d f/dt          = det(M)·tr(M⁻¹D)
  //   d (grad_i)/dt   = det(M)·[tr(M⁻¹D)tr(M⁻¹C_i) − tr(M⁻¹DM⁻¹C_i) + tr(M⁻¹Δ_i)]
  void dt_terms(const std::array<CMat, 4>& Delta, const CVec& x, Complex& dt_f,
                Eigen::Vector4cd& dt_grad) const {
    CMat D = x[0] * Delta[0] + x[1] * Delta[1] + x[2] * Delta[2] + x[3] * Delta[3];
    if (inverse_ok_) {
      CMat SD = lu_.solve(D);
      Complex tauD = SD.trace();
      bool ok = SD.allFinite();
      if (ok) {
        dt_f = det_.times(tauD);
        for (int i = 0; i < 4; ++i) {
          CMat Ei = lu_.solve(Delta[i]);
          dt_grad[i] = det_.times(tauD * tau_[i] - tr_prod(SD, S_[i]) + Ei.trace());
        }
        return;
      }
    }
    const CMat& adj = adjugate();
    dt_f = tr_prod(adj, D);
    for (int i = 0; i < 4; ++i)
      dt_grad[i] = d2det(C_[i], D) + tr_prod(adj, Delta[i]);
  }

 private:
  const CMat& adjugate() const {
    if (!has_adj_) {
      if (n_ > kFallbackMaxN)
        throw std::runtime_error(
            "pencil value is numerically rank-deficient beyond the adjugate fallback");
      adj_.resize(n_, n_);
      if (n_ == 1) {
        adj_(0, 0) = Complex(1.0, 0.0);
      } else {
        CMat minor(n_ - 1, n_ - 1);
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j) {
            for (int r = 0, rr = 0; r < n_; ++r) {
              if (r == i) continue;
              for (int c = 0, cc = 0; c < n_; ++c) {
                if (c == j) continue;
                minor(rr, cc) = M_(r, c);
                ++cc;
              }
              ++rr;
            }
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj_(j, i) = sign * plain_det(minor);
          }
      }
      has_adj_ = true;
    }
    return adj_;
  }

  // second directional derivative of det at M: columnwise multilinearity,
  // Σ over ordered column pairs (c,c') of det(M with col c ← U_c, col c' ← V_c')
  Complex d2det(const CMat& U, const CMat& V) const {
    Complex sum(0.0, 0.0);
    CMat w(n_, n_);
    for (int c = 0; c < n_; ++c)
      for (int cp = 0; cp < n_; ++cp) {
        if (c == cp) continue;
        w = M_;
        w.col(c) = U.col(c);
        w.col(cp) = V.col(cp);
        sum += plain_det(w);
      }
    return sum;
  }

  const std::array<CMat, 4>& C_;
  int n_;
  CMat M_;
  Eigen::PartialPivLU<CMat> lu_;
  ScaledDet det_;
  std::array<CMat, 4> S_;
  std::array<Complex, 4> tau_{};
  bool inverse_ok_ = false;
  mutable CMat adj_;
  mutable bool has_adj_ = false;
};

std::array<CMat, 4> complexify(const SymmetricPencil& p) {
  std::array<CMat, 4> C;
  for (int i = 0; i < 4; ++i) C[i] = p.mats[i].cast<Complex>();
  return C;
}

void check_point(const CVec& x) {
  if (x.size() != 4) throw std::invalid_argument("pencil point must have 4 coordinates");
}

}  // namespace

CMat pencil_value(const SymmetricPencil& p, const CVec& x) {
  check_point(x);
  CMat m = x[0] * p.mats[0].cast<Complex>();
  for (int i = 1; i < 4; ++i) m += x[i] * p.mats[i].cast<Complex>();
  return m;
}

Complex f_eval(const SymmetricPencil& p, const CVec& x) {
  check_point(x);
  const std::array<CMat, 4> C = complexify(p);
  PencilCore core(C, x);
  return core.f();
}

CVec f_gradient(const SymmetricPencil& p, const CVec& x) {
  check_point(x);
  const std::array<CMat, 4> C = complexify(p);
  PencilCore core(C, x);
  return core.gradient();
}

CMat f_hessian(const SymmetricPencil& p, const CVec& x) {
  check_point(x);
  const std::array<CMat, 4> C = complexify(p);
  PencilCore core(C, x);
  return core.hessian();
}

CVec F_eval(const SymmetricPencil& p, const CVec& x) {
  check_point(x);
  const std::array<CMat, 4> C = complexify(p);
  PencilCore core(C, x);
  CVec out(5);
  out[0] = core.f();
  out.tail(4) = core.gradient();
  return out;
}

// ---------------------------------------------------------------------------
// DeterminantHomotopy

class PencilWorkspace : public HomotopyWorkspace {
 public:
  std::array<CMat, 4> C;  // blended coefficient matrices at cached t
  Complex t_cached{std::numeric_limits<double>::quiet_NaN(), 0.0};

  std::unique_ptr<PencilCore> core;
  CVec x_cached;
  Complex t_core_cached{std::numeric_limits<double>::quiet_NaN(), 0.0};
};

DeterminantHomotopy::DeterminantHomotopy(SymmetricPencil target, SymmetricPencil start)
    : Homotopy(5, 4), target_(std::move(target)), start_(std::move(start)) {
  if (target_.n != start_.n)
    throw std::invalid_argument("start and target pencils must have equal size");
}

std::unique_ptr<HomotopyWorkspace> DeterminantHomotopy::make_workspace() const {
  auto ws = std::make_unique<PencilWorkspace>();
  for (CMat& c : ws->C) c.resize(target_.n, target_.n);
  return ws;
}

namespace {

PencilCore& refresh(const SymmetricPencil& target, const SymmetricPencil& start,
                    const CVec& x, Complex t, PencilWorkspace& w) {
  if (!(t == w.t_cached)) {
    const Complex a = Complex(1.0, 0.0) - t;
    for (int i = 0; i < 4; ++i)
      w.C[i] = a * target.mats[i].cast<Complex>() + t * start.mats[i].cast<Complex>();
    w.t_cached = t;
    w.t_core_cached = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  }
  const bool same_x = w.x_cached.size() == x.size() &&
                      (w.x_cached.array() == x.array()).all();
  if (!w.core || !same_x || !(t == w.t_core_cached)) {
    w.core = std::make_unique<PencilCore>(w.C, x);
    w.x_cached = x;
    w.t_core_cached = t;
  }
  return *w.core;
}

}  // namespace

void DeterminantHomotopy::eval(const CVec& x, Complex t, CVec& out,
                               HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PencilWorkspace&>(ws);
  PencilCore& core = refresh(target_, start_, x, t, w);
  out.resize(5);
  out[0] = core.f();
  out.tail(4) = core.gradient();
}

void DeterminantHomotopy::jacobian(const CVec& x, Complex t, CMat& out,
                                   HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PencilWorkspace&>(ws);
  PencilCore& core = refresh(target_, start_, x, t, w);
  out.resize(5, 4);
  out.row(0) = core.gradient().transpose();
  out.bottomRows(4) = core.hessian();
}

void DeterminantHomotopy::dt(const CVec& x, Complex t, CVec& out,
                             HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PencilWorkspace&>(ws);
  PencilCore& core = refresh(target_, start_, x, t, w);
  std::array<CMat, 4> delta;
  for (int i = 0; i < 4; ++i)
    delta[i] = (start_.mats[i] - target_.mats[i]).cast<Complex>();
  Complex dt_f;
  Eigen::Vector4cd dt_grad;
  core.dt_terms(delta, x, dt_f, dt_grad);
  out.resize(5);
  out[0] = dt_f;
  out.tail(4) = dt_grad;
}

void DeterminantHomotopy::eval_and_jacobian(const CVec& x, Complex t, CVec& f, CMat& J,
                                            HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PencilWorkspace&>(ws);
  PencilCore& core = refresh(target_, start_, x, t, w);
  f.resize(5);
  f[0] = core.f();
  f.tail(4) = core.gradient();
  J.resize(5, 4);
  J.row(0) = core.gradient().transpose();
  J.bottomRows(4) = core.hessian();
}

}  // namespace hc
