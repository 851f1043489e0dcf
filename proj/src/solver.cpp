#include "hc/solver.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace hc {

namespace {

// condition estimate of a matrix from its factorization diagonal ratio
double cond_estimate(const CMat& J) {
  if (J.rows() == J.cols()) {
    Eigen::PartialPivLU<CMat> lu(J);
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < J.cols(); ++i) {
      double d = std::abs(lu.matrixLU()(i, i));
      dmax = std::max(dmax, d);
      dmin = std::min(dmin, d);
    }
    return dmin == 0.0 ? std::numeric_limits<double>::infinity() : dmax / dmin;
  }
  Eigen::ColPivHouseholderQR<CMat> qr(J);
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < J.cols(); ++i) {
    double d = std::abs(qr.matrixR()(i, i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  return dmin == 0.0 ? std::numeric_limits<double>::infinity() : dmax / dmin;
}

struct PathRecord {
  PathSummary summary;
  bool finite = false;
  Solution solution;
};

// Classification of a stuck path by the decay law of the homogeneous ratio
// ρ = |x̂₀|/‖x̂‖ ~ t^(w/c): a path into the hyperplane at infinity decays with
// a positive exponent (possibly small, the winding c can be large), while a
// finite endpoint keeps an O(1) ratio with exponent ~0.
bool infinity_by_decay(double rho1, double t1, double rho2, double t2, double soft) {
  if (rho2 <= soft) return true;
  if (!(t2 < t1) || !(rho2 > 0.0) || !(t2 > 0.0)) return false;
  double alpha = std::log(rho2 / std::max(rho1, 1e-300)) / std::log(t2 / t1);
  if (alpha < 0.04) return false;
  if (rho2 <= 1e-3) return true;
  return rho2 <= 0.35 * rho1 && rho2 <= 0.2;
}

struct Engine {
  std::shared_ptr<const Homotopy> inner;  // homogeneous, coordinate 0 distinguished
  const SolveOptions& opts;
  // residual of the reported solution: affine target residual when solving a
  // polynomial system, homogeneous H(·,0) residual for custom homotopies
  std::function<double(const CVec& x_hat, const CVec& z_affine)> residual_fn;
  std::function<double(const CVec& x_hat, const CVec& z_affine)> cond_fn;
  Complex detour_mid{0.0, 0.0};  // nonzero imaginary part bends the t-path

  PathStatus track_chain(Tracker& tracker, CVec& x, Complex t_from, Complex t_to,
                         Complex& t_reached) const {
    t_reached = t_from;
    if (detour_mid.imag() != 0.0) {
      SegmentOutcome leg1 = tracker.track_segment(x, t_from, detour_mid);
      x = leg1.x_end;
      t_reached = leg1.t_end;
      if (leg1.status != PathStatus::success) return leg1.status;
      SegmentOutcome leg2 = tracker.track_segment(x, detour_mid, t_to);
      x = leg2.x_end;
      t_reached = leg2.t_end;
      return leg2.status;
    }
    SegmentOutcome seg = tracker.track_segment(x, t_from, t_to);
    x = seg.x_end;
    t_reached = seg.t_end;
    return seg.status;
  }

  PathRecord run_path(const CVec& start_raw, int path_index) const {
    PathRecord rec;
    if (start_raw.size() != inner->num_variables() || !(start_raw.norm() > 0.0)) {
      rec.summary.status = PathStatus::failed_start_residual;
      return rec;
    }
    CVec s = start_raw / start_raw.norm();
    AffinePatch patch{s.conjugate()};
    PatchedHomotopy ph(inner, std::move(patch));
    Tracker tracker(ph, opts.tracker);

    const double soft_infinity = std::sqrt(opts.infinity_tol);
    auto ratio0 = [](const CVec& x) { return std::abs(x[0]) / x.norm(); };

    CVec endpoint;
    int winding = 1;
    bool resolved = false;

    if (opts.use_endgame) {
      CVec x = s;
      Complex t_reached;
      PathStatus st =
          track_chain(tracker, x, Complex(1.0, 0.0),
                      Complex(opts.endgame.endgame_radius, 0.0), t_reached);
      if (st != PathStatus::success) {
        if (x.size() > 0 &&
            infinity_by_decay(ratio0(s), 1.0, ratio0(x), std::abs(t_reached),
                              soft_infinity)) {
          rec.summary.status = PathStatus::success;
          rec.summary.at_infinity = true;
        } else {
          rec.summary.status = st;
        }
        return rec;
      }
      if (ratio0(x) <= opts.infinity_tol) {
        rec.summary.status = PathStatus::success;
        rec.summary.at_infinity = true;
        return rec;
      }
      Endgame endgame(ph, opts.tracker, opts.endgame);
      EndgameResult eg = endgame.run(x, opts.endgame.endgame_radius);
      rec.summary.winding = eg.winding_number;
      if (eg.converged) {
        endpoint = eg.x0;
        winding = eg.winding_number;
        resolved = true;
      } else {
        // The endgame did not stabilize. Push the path itself as deep as it
        // will go: reaching t=0 resolves a regular endpoint whose loops were
        // merely noisy, and otherwise the homogeneous-coordinate ratio decay
        // separates paths diverging to the hyperplane at infinity from
        // genuine failures (finite endpoints keep an O(1) ratio).
        TrackerOptions deep_opts = opts.tracker;
        deep_opts.min_step = std::min(deep_opts.min_step, 1e-13);
        Tracker deep_tracker(ph, deep_opts);
        PathOutcome deep = deep_tracker.track(eg.x_path, eg.r_last, 0.0);
        if (deep.status == PathStatus::success) {
          endpoint = deep.x_end;
          winding = 1;
          resolved = true;
        } else {
          const double rho2 =
              deep.x_end.size() > 0 ? ratio0(deep.x_end) : ratio0(eg.x_path);
          if (infinity_by_decay(ratio0(x), opts.endgame.endgame_radius, rho2,
                                std::abs(deep.t_end), soft_infinity)) {
            rec.summary.status = PathStatus::success;
            rec.summary.at_infinity = true;
          } else {
            rec.summary.status = PathStatus::failed_endgame;
          }
          return rec;
        }
      }
    } else {
      CVec x = s;
      Complex t_reached;
      PathStatus st = track_chain(tracker, x, Complex(1.0, 0.0), Complex(0.0, 0.0),
                                  t_reached);
      if (st != PathStatus::success) {
        if (x.size() > 0 &&
            infinity_by_decay(ratio0(s), 1.0, ratio0(x), std::abs(t_reached),
                              soft_infinity)) {
          rec.summary.status = PathStatus::success;
          rec.summary.at_infinity = true;
        } else {
          rec.summary.status = st;
        }
        return rec;
      }
      endpoint = x;
      resolved = true;
    }

    if (!resolved) return rec;

    // sharpen regular endpoints by Newton at t = 0
    if (winding == 1) {
      CVec polished = endpoint;
      CorrectorResult cr = tracker.newton_correct(polished, Complex(0.0, 0.0),
                                                  1e-11, 8);
      if (cr.converged && polished.allFinite()) endpoint = polished;
    }

    endpoint /= endpoint.norm();
    rec.summary.status = PathStatus::success;
    rec.summary.winding = winding;

    if (std::abs(endpoint[0]) <= opts.infinity_tol) {
      rec.summary.at_infinity = true;
      return rec;
    }

    const int k = static_cast<int>(endpoint.size());
    CVec z(k - 1);
    for (int j = 1; j < k; ++j) z[j - 1] = endpoint[j] / endpoint[0];
    double resid = residual_fn(endpoint, z);

    // endpoint acceptance: a "finite solution" whose residual is far off the
    // corrector budget is either drifting to infinity or a genuine failure
    if (!(resid <= 100.0 * opts.tracker.corrector_tol * (1.0 + inf_norm(z)))) {
      if (ratio0(endpoint) <= soft_infinity) {
        rec.summary.at_infinity = true;
      } else {
        rec.summary.status = PathStatus::failed_endgame;
      }
      return rec;
    }

    double cond = cond_fn(endpoint, z);
    rec.finite = true;
    rec.solution = classify(endpoint, winding, cond, resid, path_index, opts);
    return rec;
  }
};

std::vector<PathRecord> run_all_paths(const Engine& engine,
                                      const std::function<CVec(std::uint64_t)>& start_at,
                                      std::uint64_t n_paths, int threads) {
  std::vector<PathRecord> records(n_paths);
  if (n_paths == 0) return records;
  int nw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nw < 1) nw = 1;
  nw = static_cast<int>(std::min<std::uint64_t>(nw, n_paths));
  if (nw == 1) {
    for (std::uint64_t j = 0; j < n_paths; ++j)
      records[j] = engine.run_path(start_at(j), static_cast<int>(j));
    return records;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::uint64_t j = next.fetch_add(1);
      if (j >= n_paths) break;
      records[j] = engine.run_path(start_at(j), static_cast<int>(j));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  return records;
}

SolveResult collect(std::vector<PathRecord> records, const SolveOptions& opts) {
  SolveResult result;
  result.n_paths = records.size();
  result.seed = opts.seed;
  std::vector<Solution> finite;
  for (PathRecord& rec : records) {
    result.paths.push_back(rec.summary);
    if (rec.summary.status != PathStatus::success) {
      ++result.n_failed;
    } else if (rec.summary.at_infinity) {
      ++result.n_at_infinity;
    } else if (rec.finite) {
      finite.push_back(std::move(rec.solution));
    }
  }
  result.solutions = deduplicate(std::move(finite), opts.dedup_tol);
  return result;
}

}  // namespace

Solution classify(const CVec& x_homogeneous, int winding_number, double cond,
                  double residual, int path_index, const SolveOptions& opts) {
  Solution sol;
  sol.path_index = path_index;
  sol.winding_number = winding_number;
  sol.residual = residual;

  CVec xh = x_homogeneous;
  double nrm = xh.norm();
  if (nrm > 0.0) xh /= nrm;
  sol.at_infinity = std::abs(xh[0]) <= opts.infinity_tol;
  if (sol.at_infinity) {
    sol.x = xh;  // keep the homogeneous representative; no affine limit exists
    sol.is_real = false;
    sol.is_singular = winding_number > 1;
    return sol;
  }
  const int k = static_cast<int>(xh.size());
  sol.x = CVec(k - 1);
  for (int j = 1; j < k; ++j) sol.x[j - 1] = xh[j] / xh[0];

  double xscale = inf_norm(sol.x);
  double max_imag = 0.0;
  for (int j = 0; j < k - 1; ++j) max_imag = std::max(max_imag, std::abs(sol.x[j].imag()));
  sol.is_real = max_imag <= opts.real_tol * (1.0 + xscale);
  sol.is_singular = winding_number > 1 || cond > opts.tracker.cond_limit;
  return sol;
}

std::vector<Solution> deduplicate(std::vector<Solution> solutions, double dedup_tol) {
  std::stable_sort(solutions.begin(), solutions.end(),
                   [](const Solution& a, const Solution& b) {
                     if (a.residual != b.residual) return a.residual < b.residual;
                     return a.path_index < b.path_index;
                   });
  std::vector<Solution> reps;
  for (Solution& s : solutions) {
    bool merged = false;
    for (Solution& r : reps) {
      if (r.x.size() != s.x.size()) continue;
      double dist = inf_norm(r.x - s.x) / (1.0 + inf_norm(r.x));
      if (dist <= dedup_tol) {
        ++r.cluster_size;
        if (s.winding_number > r.winding_number) {
          r.winding_number = s.winding_number;
          r.is_singular = true;
        }
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(std::move(s));
  }
  std::sort(reps.begin(), reps.end(), [](const Solution& a, const Solution& b) {
    return a.path_index < b.path_index;
  });
  return reps;
}

SolveResult solve(const PolySystem& F, const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (!F.is_square())
    throw std::invalid_argument(
        "solve() needs a square system; use solve_with_start for custom homotopies");

  TotalDegreeStart start = build_start_system(F);
  StartSolutions starts(start.degrees);

  const Complex gamma = sample_unit_gamma(opts.seed);
  auto inner = std::make_shared<StraightLineHomotopy>(
      F.homogenized(), start.system.homogenized(), gamma);

  SystemEvaluator affine_eval(F);

  Engine engine{
      inner, opts,
      [&affine_eval](const CVec&, const CVec& z) {
        CVec v(affine_eval.size());
        affine_eval.eval(z, v);
        return inf_norm(v);
      },
      [&affine_eval](const CVec&, const CVec& z) {
        CMat J(affine_eval.size(), affine_eval.nvars());
        affine_eval.jacobian(z, J);
        return cond_estimate(J);
      }};

  const int n = F.nvars();
  auto start_at = [&starts, n](std::uint64_t j) {
    CVec s = starts.solution(j);
    CVec lifted(n + 1);
    lifted[0] = Complex(1.0, 0.0);
    lifted.tail(n) = s;
    return lifted;
  };

  std::vector<PathRecord> records =
      run_all_paths(engine, start_at, starts.count(), opts.threads);
  SolveResult result = collect(std::move(records), opts);
  result.gamma = gamma;
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

SolveResult solve_with_start(std::shared_ptr<const Homotopy> h,
                             const std::vector<CVec>& starts,
                             const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();

  Complex detour(0.0, 0.0);
  if (opts.complex_detour) {
    std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
    std::uniform_real_distribution<double> height(0.25, 0.5);
    double hgt = height(rng);
    detour = Complex(0.5, (rng() & 1) ? hgt : -hgt);
  }

  Engine engine{
      h, opts,
      [&h](const CVec& x_hat, const CVec&) {
        CVec v(h->num_equations());
        auto ws = h->make_workspace();
        h->eval(x_hat, Complex(0.0, 0.0), v, *ws);
        return inf_norm(v);
      },
      [&h](const CVec& x_hat, const CVec&) {
        CMat J(h->num_equations(), h->num_variables());
        auto ws = h->make_workspace();
        h->jacobian(x_hat, Complex(0.0, 0.0), J, *ws);
        return cond_estimate(J);
      },
      detour};

  auto start_at = [&starts](std::uint64_t j) { return starts[j]; };
  std::vector<PathRecord> records =
      run_all_paths(engine, start_at, starts.size(), opts.threads);
  SolveResult result = collect(std::move(records), opts);
  result.gamma = Complex(1.0, 0.0);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace hc
