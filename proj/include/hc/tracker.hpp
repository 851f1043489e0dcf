#pragma once

#include <Eigen/LU>
#include <Eigen/QR>
#include <vector>

#include "hc/homotopy.hpp"
#include "hc/types.hpp"

namespace hc {

struct TrackerOptions {
  double corrector_tol = 1e-7;
  int max_corrector_iters = 3;
  double initial_step = 0.1;   // also the step-size ceiling
  double min_step = 1e-14;
  int max_steps = 10000;       // accepted + rejected
  double step_grow = 2.0;
  double step_shrink = 0.5;
  double cond_limit = 1e12;
};

enum class PathStatus {
  success,
  failed_start_residual,
  failed_min_step,
  failed_max_steps,
  failed_singular_jacobian,
  failed_endgame,  // set by the solver when endpoint resolution fails
  diverged,
};
const char* to_string(PathStatus s);

struct TrackerState {
  CVec x;
  double t = 0.0;     // real path parameter (segment progress for complex arcs)
  double step = 0.0;  // current |Δt|
  int steps_taken = 0;
  int last_corrector_iters = 0;
};

struct PathOutcome {
  PathStatus status = PathStatus::failed_min_step;
  CVec x_end;
  double t_end = 0.0;
  double residual = 0.0;
  int steps_taken = 0;
};

struct SegmentOutcome {
  PathStatus status = PathStatus::failed_min_step;
  CVec x_end;
  Complex t_end;
  double s_end = 0.0;  // progress in [0,1] along the segment
  double residual = 0.0;
  int steps_taken = 0;
};

struct CorrectorResult {
  bool converged = false;
  bool singular = false;
  int iters = 0;
  double update_norm = 0.0;            // last ‖Δx‖
  double residual = 0.0;               // ‖H(x,t)‖ at the final iterate
  std::vector<double> update_norms;    // per-iteration ‖Δx‖, for convergence probes
};

// One path tracker: RK4 prediction on the Davidenko ODE plus Newton
// correction with adaptive step control. Owns all scratch storage; the
// homotopy is shared and immutable. Square Jacobians are solved by
// partial-pivot LU, overdetermined ones by column-pivoted QR (least squares).
class Tracker {
 public:
  explicit Tracker(const Homotopy& h, TrackerOptions opts = {});

  const TrackerOptions& options() const { return opts_; }
  TrackerOptions& options() { return opts_; }
  const Homotopy& homotopy() const { return h_; }
  const TrackerState& state() const { return state_; }

  // ẋ solving J·ẋ = -∂H/∂t (least squares when rows > cols).
  // Returns false when the solve is singular or the condition estimate
  // exceeds cond_limit.
  bool davidenko_rhs(const CVec& x, Complex t, CVec& out);

  // Classical 4-stage Runge-Kutta step from t_from to t_to.
  bool rk4_predict(const CVec& x, Complex t_from, Complex t_to, CVec& out);
  bool rk4_predict(const CVec& x, double t, double dt, CVec& out) {
    return rk4_predict(x, Complex(t, 0.0), Complex(t + dt, 0.0), out);
  }

  CorrectorResult newton_correct(CVec& x, Complex t);
  CorrectorResult newton_correct(CVec& x, Complex t, double tol, int max_iters);

  // Track along the real segment from t_from to t_to.
  PathOutcome track(const CVec& x_start, double t_from, double t_to);

  // Track along the straight chord between two complex parameter values.
  SegmentOutcome track_segment(const CVec& x_start, Complex t_from, Complex t_to);

  double last_condition_estimate() const { return last_cond_; }

 private:
  bool solve_linear(const CMat& J, const CVec& rhs, CVec& out);

  const Homotopy& h_;
  TrackerOptions opts_;
  std::unique_ptr<HomotopyWorkspace> ws_;
  TrackerState state_;
  double last_cond_ = 0.0;

  // scratch
  CMat J_;
  CVec hval_, rhs_, dx_, k1_, k2_, k3_, k4_, xs_;
  Eigen::PartialPivLU<CMat> lu_;
  Eigen::ColPivHouseholderQR<CMat> qr_;
};

}  // namespace hc
