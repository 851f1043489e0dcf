#include "hc/tracker.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

namespace hc {

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::success: return "success";
    case PathStatus::failed_start_residual: return "failed_start_residual";
    case PathStatus::failed_min_step: return "failed_min_step";
    case PathStatus::failed_max_steps: return "failed_max_steps";
    case PathStatus::failed_singular_jacobian: return "failed_singular_jacobian";
    case PathStatus::failed_endgame: return "failed_endgame";
    case PathStatus::diverged: return "diverged";
  }
  return "unknown";
}

Tracker::Tracker(const Homotopy& h, TrackerOptions opts)
    : h_(h), opts_(opts), ws_(h.make_workspace()) {
  const int m = h.num_equations(), k = h.num_variables();
  J_.resize(m, k);
  hval_.resize(m);
  rhs_.resize(m);
  dx_.resize(k);
  k1_.resize(k);
  k2_.resize(k);
  k3_.resize(k);
  k4_.resize(k);
  xs_.resize(k);
}

bool Tracker::solve_linear(const CMat& J, const CVec& rhs, CVec& out) {
  const int m = static_cast<int>(J.rows()), k = static_cast<int>(J.cols());
  double dmax = 0.0, dmin = 0.0;
  if (m == k) {
    lu_.compute(J);
    dmax = 0.0;
    dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      double d = std::abs(lu_.matrixLU()(i, i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    if (dmin == 0.0 || !(dmax / dmin < opts_.cond_limit)) {
      last_cond_ = (dmin == 0.0) ? std::numeric_limits<double>::infinity() : dmax / dmin;
      return false;
    }
    last_cond_ = dmax / dmin;
    out = lu_.solve(rhs);
  } else {
    qr_.compute(J);
    dmax = 0.0;
    dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      double d = std::abs(qr_.matrixR()(i, i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    if (dmin == 0.0 || !(dmax / dmin < opts_.cond_limit)) {
      last_cond_ = (dmin == 0.0) ? std::numeric_limits<double>::infinity() : dmax / dmin;
      return false;
    }
    last_cond_ = dmax / dmin;
    out = qr_.solve(rhs);
  }
  return out.allFinite();
}

bool Tracker::davidenko_rhs(const CVec& x, Complex t, CVec& out) {
  h_.jacobian(x, t, J_, *ws_);
  h_.dt(x, t, hval_, *ws_);
  rhs_ = -hval_;
  return solve_linear(J_, rhs_, out);
}

bool Tracker::rk4_predict(const CVec& x, Complex t_from, Complex t_to, CVec& out) {
  const Complex dt = t_to - t_from;
  if (dt == Complex(0.0, 0.0)) {
    out = x;
    return true;
  }
  const Complex half = 0.5 * dt;
  if (!davidenko_rhs(x, t_from, k1_)) return false;
  xs_ = x + half * k1_;
  if (!davidenko_rhs(xs_, t_from + half, k2_)) return false;
  xs_ = x + half * k2_;
  if (!davidenko_rhs(xs_, t_from + half, k3_)) return false;
  xs_ = x + dt * k3_;
  if (!davidenko_rhs(xs_, t_to, k4_)) return false;
  out = x + (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  return true;
}

CorrectorResult Tracker::newton_correct(CVec& x, Complex t) {
  return newton_correct(x, t, opts_.corrector_tol, opts_.max_corrector_iters);
}

CorrectorResult Tracker::newton_correct(CVec& x, Complex t, double tol, int max_iters) {
  CorrectorResult res;
  for (int it = 1; it <= max_iters; ++it) {
    h_.eval_and_jacobian(x, t, hval_, J_, *ws_);
    res.residual = hval_.norm();
    rhs_ = -hval_;
    if (!solve_linear(J_, rhs_, dx_)) {
      res.singular = true;
      res.iters = it - 1;
      return res;
    }
    x += dx_;
    res.iters = it;
    res.update_norm = dx_.norm();
    res.update_norms.push_back(res.update_norm);
    if (res.update_norm <= tol) {
      h_.eval(x, t, hval_, *ws_);
      res.residual = hval_.norm();
      res.converged = true;
      return res;
    }
  }
  h_.eval(x, t, hval_, *ws_);
  res.residual = hval_.norm();
  return res;
}

SegmentOutcome Tracker::track_segment(const CVec& x_start, Complex t_from, Complex t_to) {
  SegmentOutcome out;
  out.x_end = x_start;
  out.t_end = t_from;

  const Complex span = t_to - t_from;
  const double span_len = std::abs(span);

  CVec x = x_start;

  // start-point admission: the caller must hand in a point on the path
  h_.eval(x, t_from, hval_, *ws_);
  if (!(hval_.norm() <= 10.0 * opts_.corrector_tol)) {
    out.status = PathStatus::failed_start_residual;
    out.residual = hval_.norm();
    return out;
  }
  {
    CorrectorResult cr = newton_correct(x, t_from);
    if (!cr.converged) {
      out.status = cr.singular ? PathStatus::failed_singular_jacobian
                               : PathStatus::failed_start_residual;
      out.residual = cr.residual;
      return out;
    }
  }

  if (span_len == 0.0) {
    out.status = PathStatus::success;
    out.x_end = x;
    out.s_end = 1.0;
    h_.eval(x, t_from, hval_, *ws_);
    out.residual = hval_.norm();
    return out;
  }

  double s = 0.0;
  double step = std::min(opts_.initial_step / span_len, 1.0);  // in s-units
  const double min_step = opts_.min_step / span_len;
  const double max_step = step;
  int steps = 0;
  bool last_reject_singular = false;

  state_.x = x;
  state_.t = 0.0;
  state_.step = step * span_len;
  state_.steps_taken = 0;

  while (s < 1.0) {
    if (++steps > opts_.max_steps) {
      out.status = PathStatus::failed_max_steps;
      out.x_end = x;
      out.t_end = t_from + s * span;
      out.s_end = s;
      out.steps_taken = steps - 1;
      return out;
    }
    const double h = std::min(step, 1.0 - s);
    const Complex t_cur = t_from + s * span;
    const Complex t_next = (1.0 - s - h < 1e-16) ? t_to : t_from + (s + h) * span;

    bool accepted = false;
    if (rk4_predict(x, t_cur, t_next, xs_)) {
      CVec xp = xs_;
      CorrectorResult cr = newton_correct(xp, t_next);
      if (cr.converged) {
        x = xp;
        s += h;
        accepted = true;
        last_reject_singular = false;
        if (cr.iters <= 2) step = std::min(step * opts_.step_grow, max_step);
        state_.x = x;
        state_.t = s;
        state_.step = step * span_len;
        state_.steps_taken = steps;
        state_.last_corrector_iters = cr.iters;
        if (x.norm() > 1e14) {
          out.status = PathStatus::diverged;
          out.x_end = x;
          out.t_end = t_next;
          out.s_end = s;
          out.steps_taken = steps;
          return out;
        }
      } else {
        last_reject_singular = cr.singular;
      }
    } else {
      last_reject_singular = true;
    }

    if (!accepted) {
      step *= opts_.step_shrink;
      if (step < min_step) {
        out.status = last_reject_singular ? PathStatus::failed_singular_jacobian
                                          : PathStatus::failed_min_step;
        out.x_end = x;
        out.t_end = t_from + s * span;
        out.s_end = s;
        out.steps_taken = steps;
        return out;
      }
    }
  }

  // success invariant: residual at the endpoint within the corrector budget
  h_.eval(x, t_to, hval_, *ws_);
  double resid = hval_.norm();
  if (resid > opts_.corrector_tol) {
    CorrectorResult cr = newton_correct(x, t_to);
    resid = cr.residual;
    if (!(resid <= opts_.corrector_tol)) {
      out.status = PathStatus::failed_max_steps;
      out.x_end = x;
      out.t_end = t_to;
      out.s_end = 1.0;
      out.steps_taken = steps;
      out.residual = resid;
      return out;
    }
  }

  out.status = PathStatus::success;
  out.x_end = x;
  out.t_end = t_to;
  out.s_end = 1.0;
  out.residual = resid;
  out.steps_taken = steps;
  return out;
}

PathOutcome Tracker::track(const CVec& x_start, double t_from, double t_to) {
  SegmentOutcome seg = track_segment(x_start, Complex(t_from, 0.0), Complex(t_to, 0.0));
  PathOutcome out;
  out.status = seg.status;
  out.x_end = seg.x_end;
  out.t_end = t_from + seg.s_end * (t_to - t_from);
  out.residual = seg.residual;
  out.steps_taken = seg.steps_taken;
  return out;
}

}  // namespace hc
