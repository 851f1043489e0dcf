#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "hc/homotopy.hpp"
#include "hc/types.hpp"

namespace hc {

// Four real symmetric n×n matrices A0..A3. The associated surface is the
// vanishing locus of det(x0·A0 + x1·A1 + x2·A2 + x3·A3) in projective
// 3-space; its singular points are the zeros of that determinant together
// with its four partial derivatives.
struct SymmetricPencil {
  int n = 0;
  std::array<RMat, 4> mats;

  SymmetricPencil() = default;
  SymmetricPencil(RMat a0, RMat a1, RMat a2, RMat a3);
  static SymmetricPencil random(int n, std::uint64_t seed);
};

SymmetricPencil load_pencil(std::istream& in);
SymmetricPencil load_pencil_file(const std::string& path);
void save_pencil(std::ostream& out, const SymmetricPencil& p);

// binomial(n+1, 3): number of isolated singular points of a generic pencil's
// determinant surface
std::uint64_t singular_point_count(int n);

// (n+1)·C(n+3,n) + 4(n+1)·C(n+2,n-1): monomials of the blended determinant
// system in (x0..x3, t), summed over its five components
std::uint64_t monomial_count(int n);

// PSD membership of A0 + z1·A1 + z2·A2 + z3·A3 at z_i = x_i/x0 within
// min-eigenvalue tolerance tol·‖A‖∞. Throws when |x0| is too small for the
// affine chart.
bool on_spectrahedron_boundary(const SymmetricPencil& p, const Eigen::Vector4d& x,
                               double tol);

// Linear matrix combination Σ x_i·A_i (complex symmetric for complex x).
CMat pencil_value(const SymmetricPencil& p, const CVec& x);

// det(A(x)) via pivoted LU with log-scaled accumulation.
Complex f_eval(const SymmetricPencil& p, const CVec& x);

// Gradient and Hessian through the trace identities
//   ∂f/∂x_i   = det(A)·tr(A⁻¹A_i)
//   ∂²f/∂x_i∂x_j = det(A)·[tr(A⁻¹A_i)tr(A⁻¹A_j) − tr(A⁻¹A_iA⁻¹A_j)]
// with a division-free adjugate/minor fallback at exactly singular A(x).
CVec f_gradient(const SymmetricPencil& p, const CVec& x);
CMat f_hessian(const SymmetricPencil& p, const CVec& x);

// The 5-vector (f, ∂f/∂x0, …, ∂f/∂x3).
CVec F_eval(const SymmetricPencil& p, const CVec& x);

class PencilWorkspace;

// Homotopy between the singular-point systems of two pencils: the blended
// pencil (1-t)·target + t·start evaluated through the same trace identities,
// never expanded into monomials. 5 equations, 4 homogeneous variables.
class DeterminantHomotopy : public Homotopy {
 public:
  DeterminantHomotopy(SymmetricPencil target, SymmetricPencil start);

  const SymmetricPencil& target() const { return target_; }
  const SymmetricPencil& start() const { return start_; }
  int pencil_size() const { return target_.n; }

  std::unique_ptr<HomotopyWorkspace> make_workspace() const override;
  void eval(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;
  void jacobian(const CVec& x, Complex t, CMat& out, HomotopyWorkspace& ws) const override;
  void dt(const CVec& x, Complex t, CVec& out, HomotopyWorkspace& ws) const override;
  void eval_and_jacobian(const CVec& x, Complex t, CVec& f, CMat& J,
                         HomotopyWorkspace& ws) const override;

 private:
  SymmetricPencil target_;
  SymmetricPencil start_;
};

}  // namespace hc
