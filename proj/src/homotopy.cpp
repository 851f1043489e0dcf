#include "hc/homotopy.hpp"

#include <cmath>
#include <random>

namespace hc {

namespace {

struct StraightLineWorkspace : HomotopyWorkspace {
  CVec fx, gx;
  CMat jf, jg;
};

struct PatchedWorkspace : HomotopyWorkspace {
  CVec inner_f;
  CMat inner_j;
  std::unique_ptr<HomotopyWorkspace> inner_ws;
};

}  // namespace

StraightLineHomotopy::StraightLineHomotopy(PolySystem target, PolySystem start,
                                           Complex gamma)
    : Homotopy(target.size(), target.nvars()),
      target_eval_(target),
      start_eval_(start),
      gamma_(gamma) {
  if (target.nvars() != start.nvars() || target.size() != start.size())
    throw std::invalid_argument("start and target systems must have equal shape");
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
    throw std::invalid_argument("gamma must have unit modulus");
}

std::unique_ptr<HomotopyWorkspace> StraightLineHomotopy::make_workspace() const {
  auto ws = std::make_unique<StraightLineWorkspace>();
  ws->fx.resize(num_equations());
  ws->gx.resize(num_equations());
  ws->jf.resize(num_equations(), num_variables());
  ws->jg.resize(num_equations(), num_variables());
  return ws;
}

void StraightLineHomotopy::eval(const CVec& x, Complex t, CVec& out,
                                HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<StraightLineWorkspace&>(ws);
  target_eval_.eval(x, w.fx);
  start_eval_.eval(x, w.gx);
  const Complex a = Complex(1.0, 0.0) - t;
  const Complex b = gamma_ * t;
  out.resize(num_equations());
  for (int i = 0; i < num_equations(); ++i) out[i] = a * w.fx[i] + b * w.gx[i];
}

void StraightLineHomotopy::jacobian(const CVec& x, Complex t, CMat& out,
                                    HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<StraightLineWorkspace&>(ws);
  target_eval_.jacobian(x, w.jf);
  start_eval_.jacobian(x, w.jg);
  const Complex a = Complex(1.0, 0.0) - t;
  const Complex b = gamma_ * t;
  out.resize(num_equations(), num_variables());
  for (int i = 0; i < num_equations(); ++i)
    for (int j = 0; j < num_variables(); ++j)
      out(i, j) = a * w.jf(i, j) + b * w.jg(i, j);
}

void StraightLineHomotopy::dt(const CVec& x, Complex /*t*/, CVec& out,
                              HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<StraightLineWorkspace&>(ws);
  target_eval_.eval(x, w.fx);
  start_eval_.eval(x, w.gx);
  out.resize(num_equations());
  for (int i = 0; i < num_equations(); ++i) out[i] = gamma_ * w.gx[i] - w.fx[i];
}

PatchedHomotopy::PatchedHomotopy(std::shared_ptr<const Homotopy> inner, AffinePatch patch)
    : Homotopy(inner->num_equations() + 1, inner->num_variables()),
      inner_(std::move(inner)),
      patch_(std::move(patch)) {
  if (patch_.v.size() != num_variables())
    throw std::invalid_argument("patch vector dimension mismatch");
  if (patch_.v.norm() == 0.0) throw std::invalid_argument("patch vector must be nonzero");
}

std::unique_ptr<HomotopyWorkspace> PatchedHomotopy::make_workspace() const {
  auto ws = std::make_unique<PatchedWorkspace>();
  ws->inner_f.resize(inner_->num_equations());
  ws->inner_j.resize(inner_->num_equations(), inner_->num_variables());
  ws->inner_ws = inner_->make_workspace();
  return ws;
}

void PatchedHomotopy::eval(const CVec& x, Complex t, CVec& out,
                           HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PatchedWorkspace&>(ws);
  inner_->eval(x, t, w.inner_f, *w.inner_ws);
  const int m = inner_->num_equations();
  out.resize(m + 1);
  out.head(m) = w.inner_f;
  Complex dot(0.0, 0.0);
  for (int j = 0; j < num_variables(); ++j) dot += patch_.v[j] * x[j];
  out[m] = dot - Complex(1.0, 0.0);
}

void PatchedHomotopy::jacobian(const CVec& x, Complex t, CMat& out,
                               HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PatchedWorkspace&>(ws);
  inner_->jacobian(x, t, w.inner_j, *w.inner_ws);
  const int m = inner_->num_equations();
  out.resize(m + 1, num_variables());
  out.topRows(m) = w.inner_j;
  out.row(m) = patch_.v.transpose();
}

void PatchedHomotopy::dt(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PatchedWorkspace&>(ws);
  inner_->dt(x, t, w.inner_f, *w.inner_ws);
  const int m = inner_->num_equations();
  out.resize(m + 1);
  out.head(m) = w.inner_f;
  out[m] = Complex(0.0, 0.0);
}

void PatchedHomotopy::eval_and_jacobian(const CVec& x, Complex t, CVec& f, CMat& J,
                                        HomotopyWorkspace& ws) const {
  check_dim(x);
  auto& w = static_cast<PatchedWorkspace&>(ws);
  inner_->eval_and_jacobian(x, t, w.inner_f, w.inner_j, *w.inner_ws);
  const int m = inner_->num_equations();
  f.resize(m + 1);
  f.head(m) = w.inner_f;
  Complex dot(0.0, 0.0);
  for (int j = 0; j < num_variables(); ++j) dot += patch_.v[j] * x[j];
  f[m] = dot - Complex(1.0, 0.0);
  J.resize(m + 1, num_variables());
  J.topRows(m) = w.inner_j;
  J.row(m) = patch_.v.transpose();
}

Complex sample_unit_gamma(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * M_PI);
  return std::polar(1.0, dist(rng));
}

}  // namespace hc
