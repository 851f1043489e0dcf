#pragma once

#include <complex>
#include <Eigen/Core>

namespace hc {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// integer power by repeated multiplication; exponents here are small
inline Complex cpow_int(Complex base, int e) {
  Complex r(1.0, 0.0);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

inline double inf_norm(const CVec& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

}  // namespace hc
