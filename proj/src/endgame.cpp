#include "hc/endgame.hpp"

#include <cmath>
#include <stdexcept>

namespace hc {

Endgame::Endgame(const Homotopy& h, const TrackerOptions& topts, EndgameOptions eopts)
    : h_(h), tracker_(h, topts), eopts_(eopts), ws_(h.make_workspace()) {
  if (eopts_.loop_samples_per_circle < 3)
    throw std::invalid_argument("need at least 3 loop samples per circle");
  if (!(eopts_.endgame_radius > 0.0 && eopts_.endgame_radius < 1.0))
    throw std::invalid_argument("endgame radius must lie in (0,1)");
  if (eopts_.max_winding < 1) throw std::invalid_argument("max_winding must be >= 1");
  if (!(eopts_.geometric_factor > 0.0 && eopts_.geometric_factor < 1.0))
    throw std::invalid_argument("geometric factor must lie in (0,1)");
}

CauchyLoopResult Endgame::cauchy_loop(const CVec& x_r, double r) {
  CauchyLoopResult out;
  const int n = eopts_.loop_samples_per_circle;
  CVec x = x_r;
  for (int circuit = 1; circuit <= eopts_.max_winding; ++circuit) {
    for (int k = 0; k < n; ++k) {
      out.samples.push_back(x);
      const Complex t_a = std::polar(r, 2.0 * M_PI * k / n);
      const Complex t_b = std::polar(r, 2.0 * M_PI * (k + 1) / n);
      SegmentOutcome seg = tracker_.track_segment(x, t_a, t_b);
      if (seg.status != PathStatus::success) {
        out.samples.clear();
        return out;  // loop tracking failed
      }
      x = seg.x_end;
    }
    if ((x - x_r).norm() <= eopts_.stabilization_tol * (1.0 + x_r.norm())) {
      out.closed = true;
      out.winding = circuit;
      out.x_return = x;
      return out;
    }
  }
  out.samples.clear();
  return out;  // winding number exceeds max_winding
}

CVec Endgame::cauchy_endpoint(const std::vector<CVec>& samples) {
  if (samples.empty()) throw std::invalid_argument("empty Cauchy sample list");
  CVec mean = CVec::Zero(samples[0].size());
  for (const CVec& s : samples) mean += s;
  return mean / static_cast<double>(samples.size());
}

EndgameResult Endgame::run(const CVec& x_r, double r) {
  EndgameResult out;
  out.x_path = x_r;
  out.r_last = r;

  CVec x = x_r;
  double radius = r;
  bool have_prev = false;
  CVec prev_estimate;
  int prev_winding = 0;
  int consecutive_loop_failures = 0;
  int rejected_stabilizations = 0;

  while (radius >= tracker_.options().min_step) {
    CauchyLoopResult loop = cauchy_loop(x, radius);
    if (loop.closed) {
      consecutive_loop_failures = 0;
      out.samples_used += static_cast<int>(loop.samples.size());
      CVec estimate = cauchy_endpoint(loop.samples);
      if (have_prev && loop.winding == prev_winding &&
          (estimate - prev_estimate).norm() <=
              eopts_.stabilization_tol * (1.0 + estimate.norm())) {
        // a loop at too large a radius can encircle branch points besides
        // t=0 and stabilize on a multi-branch average; only an estimate that
        // actually solves H(·,0) is accepted, anything else keeps shrinking
        h_.eval(estimate, Complex(0.0, 0.0), h0_, *ws_);
        // A loop with winding > 1 claims a multiple zero, whose Cauchy mean
        // sits on the zero to within sampling noise. A loop that instead
        // enclosed the paths of two nearby simple roots stabilizes on their
        // average, which misses the zero set by ~(root distance)^2; such
        // estimates must be rejected so the radii keep shrinking until the
        // loop isolates a single branch. Winding-1 loops sample only their
        // own branch and get the documented loose allowance.
        double allowance =
            loop.winding == 1
                ? (100.0 * tracker_.options().corrector_tol +
                   eopts_.stabilization_tol) *
                      (1.0 + estimate.norm())
                : 0.1 * tracker_.options().corrector_tol * (1.0 + estimate.norm());
        if (h0_.norm() <= allowance) {
          out.x0 = estimate;
          out.winding_number = loop.winding;
          out.converged = true;
          out.x_path = x;
          out.r_last = radius;
          return out;
        }
        if (++rejected_stabilizations >= 16) break;
      }
      prev_estimate = estimate;
      prev_winding = loop.winding;
      have_prev = true;
      out.x0 = estimate;
      out.winding_number = loop.winding;
    } else {
      if (++consecutive_loop_failures >= 3) break;
    }

    // shrink the radius and walk the path inward along the real axis
    double next_radius = radius * eopts_.geometric_factor;
    if (next_radius < tracker_.options().min_step) break;
    SegmentOutcome seg =
        tracker_.track_segment(x, Complex(radius, 0.0), Complex(next_radius, 0.0));
    if (seg.status != PathStatus::success) break;
    x = seg.x_end;
    radius = next_radius;
    out.x_path = x;
    out.r_last = radius;
  }

  out.converged = false;
  return out;
}

}  // namespace hc
