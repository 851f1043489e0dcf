#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hc/endgame.hpp"
#include "hc/homotopy.hpp"
#include "hc/totaldegree.hpp"
#include "hc/tracker.hpp"

namespace hc {

struct SolveOptions {
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all hardware threads
  TrackerOptions tracker{};
  EndgameOptions endgame{};
  double real_tol = 1e-6;
  double dedup_tol = 1e-6;
  double infinity_tol = 1e-8;
  bool use_endgame = true;
  // Track t through a seeded complex waypoint instead of straight down the
  // real axis. Homotopies without internal randomization (no gamma trick,
  // e.g. the determinant homotopy between real pencils) can hit real branch
  // points at intermediate t; bending the path moves it off them almost
  // surely. solve() ignores this: gamma already randomizes its paths.
  bool complex_detour = false;
};

struct Solution {
  CVec x;  // affine coordinates
  double residual = 0.0;
  int winding_number = 1;
  bool is_real = false;
  bool is_singular = false;
  bool at_infinity = false;
  int path_index = 0;
  int cluster_size = 1;  // paths merged into this solution
};

struct PathSummary {
  PathStatus status = PathStatus::failed_min_step;
  bool at_infinity = false;
  int winding = 0;
};

struct SolveResult {
  std::vector<Solution> solutions;  // finite, deduplicated, sorted by path index
  std::uint64_t n_paths = 0;
  int n_failed = 0;
  int n_at_infinity = 0;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  Complex gamma{1.0, 0.0};
  std::vector<PathSummary> paths;
};

// Solve a square polynomial system: total-degree start system, straight-line
// homotopy with the gamma trick, projective patch, path tracking, endgames,
// classification and deduplication.
SolveResult solve(const PolySystem& F, const SolveOptions& opts = {});

// Track a custom homotopy from user-provided start solutions. Starts are
// homogeneous points (coordinate 0 is the homogenizing coordinate); each path
// gets the conjugate-of-start affine patch, and the corrector switches to
// least squares automatically for overdetermined homotopies.
SolveResult solve_with_start(std::shared_ptr<const Homotopy> h,
                             const std::vector<CVec>& starts,
                             const SolveOptions& opts = {});

// Classification of one homogeneous endpoint: at-infinity test on the
// homogenizing coordinate, realness test on the affine imaginary parts,
// singularity from winding number or Jacobian conditioning.
Solution classify(const CVec& x_homogeneous, int winding_number,
                  double cond_estimate, double residual, int path_index,
                  const SolveOptions& opts);

// Greedy clustering: representatives keep the smallest residual; output is
// pairwise distinct beyond dedup_tol in relative ∞-norm.
std::vector<Solution> deduplicate(std::vector<Solution> solutions, double dedup_tol);

}  // namespace hc
