#pragma once

#include <cstdint>
#include <memory>

#include "hc/poly.hpp"
#include "hc/types.hpp"

namespace hc {

// Per-tracker scratch storage. Homotopy objects themselves are immutable and
// shared; each concurrent tracker owns one workspace.
struct HomotopyWorkspace {
  virtual ~HomotopyWorkspace() = default;
};

// The homotopy contract: H(x,t), its Jacobian in x, and its t-derivative.
// t is complex so the same contract serves both the real tracking segment
// [1,0] and the Cauchy endgame loops around t = 0.
class Homotopy {
 public:
  Homotopy(int num_equations, int num_variables)
      : neq_(num_equations), nvar_(num_variables) {}
  virtual ~Homotopy() = default;

  int num_equations() const { return neq_; }
  int num_variables() const { return nvar_; }

  virtual std::unique_ptr<HomotopyWorkspace> make_workspace() const {
    return std::make_unique<HomotopyWorkspace>();
  }

  virtual void eval(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const = 0;
  virtual void jacobian(const CVec& x, Complex t, CMat& out, HomotopyWorkspace& ws) const = 0;
  virtual void dt(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const = 0;
  virtual void eval_and_jacobian(const CVec& x, Complex t, CVec& f, CMat& J,
                                 HomotopyWorkspace& ws) const {
    eval(x, t, f, ws);
    jacobian(x, t, J, ws);
  }

 protected:
  void check_dim(const CVec& x) const {
    if (x.size() != nvar_) throw std::invalid_argument("homotopy point dimension mismatch");
  }

 private:
  int neq_;
  int nvar_;
};

// H(x,t) = (1-t)·F(x) + γ·t·G(x), tracked from the start system G at t=1
// to the target F at t=0.
class StraightLineHomotopy : public Homotopy {
 public:
  StraightLineHomotopy(PolySystem target, PolySystem start, Complex gamma);

  const PolySystem& target() const { return target_eval_.system(); }
  const PolySystem& start() const { return start_eval_.system(); }
  Complex gamma() const { return gamma_; }

  std::unique_ptr<HomotopyWorkspace> make_workspace() const override;
  void eval(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;
  void jacobian(const CVec& x, Complex t, CMat& out, HomotopyWorkspace& ws) const override;
  void dt(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;

 private:
  SystemEvaluator target_eval_;
  SystemEvaluator start_eval_;
  Complex gamma_;
};

struct AffinePatch {
  CVec v;  // patch equation v·x - 1 = 0 (plain bilinear product, no conjugation)
};

// Appends the affine-patch equation to an inner homotopy over homogeneous
// coordinates: m+1 equations over the same variables.
class PatchedHomotopy : public Homotopy {
 public:
  PatchedHomotopy(std::shared_ptr<const Homotopy> inner, AffinePatch patch);

  const Homotopy& inner() const { return *inner_; }
  const CVec& patch_vector() const { return patch_.v; }

  std::unique_ptr<HomotopyWorkspace> make_workspace() const override;
  void eval(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;
  void jacobian(const CVec& x, Complex t, CMat& out, HomotopyWorkspace& ws) const override;
  void dt(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;
  void eval_and_jacobian(const CVec& x, Complex t, CVec& f, CMat& J,
                         HomotopyWorkspace& ws) const override;

 private:
  std::shared_ptr<const Homotopy> inner_;
  AffinePatch patch_;
};

// Uniform sample from the unit circle; the seed is recorded in solver output
// so runs are reproducible.
Complex sample_unit_gamma(std::uint64_t seed);

}  // namespace hc
