#pragma once

#include <vector>

#include "hc/tracker.hpp"

namespace hc {

struct EndgameOptions {
  double endgame_radius = 0.1;
  int loop_samples_per_circle = 16;
  int max_winding = 12;
  double geometric_factor = 0.5;  // radius shrink between endgame rounds
  double stabilization_tol = 1e-6;
};

struct EndgameResult {
  CVec x0;                  // estimate of x at t = 0
  int winding_number = 0;
  bool converged = false;
  int samples_used = 0;
  CVec x_path;              // last path point reached (at t = r_last)
  double r_last = 0.0;
};

struct CauchyLoopResult {
  bool closed = false;
  int winding = 0;
  std::vector<CVec> samples;  // corrected points at the loop nodes
  CVec x_return;              // point after the closing circuit
};

// Cauchy endgame with a power-series-style acceptance rule: loops around
// shrinking circles |t| = r produce endpoint estimates (trapezoidal mean of
// the loop samples); two consecutive estimates agreeing within
// stabilization_tol declare convergence.
class Endgame {
 public:
  Endgame(const Homotopy& h, const TrackerOptions& topts, EndgameOptions eopts = {});

  const EndgameOptions& options() const { return eopts_; }
  Tracker& tracker() { return tracker_; }

  // Tracks around t = r·e^{iθ} (chords of a regular polygon) until the loop
  // closes, at most max_winding circuits. x_r must be a converged path point
  // at t = r.
  CauchyLoopResult cauchy_loop(const CVec& x_r, double r);

  // Trapezoidal discretization of the Cauchy integral: the arithmetic mean.
  static CVec cauchy_endpoint(const std::vector<CVec>& samples);

  EndgameResult run(const CVec& x_r, double r);

 private:
  const Homotopy& h_;
  Tracker tracker_;
  EndgameOptions eopts_;
  std::unique_ptr<HomotopyWorkspace> ws_;
  CVec h0_;
};

}  // namespace hc
