#include "hc/totaldegree.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hc {

TotalDegreeStart build_start_system(const PolySystem& F) {
  if (!F.is_square())
    throw std::invalid_argument("total-degree start system requires a square system");
  std::vector<int> degrees = F.degrees();
  std::vector<Polynomial> gs;
  gs.reserve(degrees.size());
  for (size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] == 0)
      throw std::invalid_argument("system member " + std::to_string(i) +
                                  " has degree zero");
    gs.push_back(Polynomial::power_minus_one(F.nvars(), static_cast<int>(i), degrees[i]));
  }
  return TotalDegreeStart{std::move(degrees), PolySystem(std::move(gs))};
}

std::uint64_t bezout_number(const PolySystem& F) {
  if (!F.is_square())
    throw std::invalid_argument("Bezout number requires a square system");
  std::uint64_t prod = 1;
  for (int d : F.degrees()) {
    if (d == 0) throw std::invalid_argument("degree-zero system member");
    std::uint64_t du = static_cast<std::uint64_t>(d);
    if (prod > std::numeric_limits<std::uint64_t>::max() / du)
      throw std::overflow_error("Bezout number overflows 64 bits");
    prod *= du;
  }
  return prod;
}

StartSolutions::StartSolutions(std::vector<int> degrees, std::uint64_t cap)
    : degrees_(std::move(degrees)) {
  std::uint64_t prod = 1;
  for (int d : degrees_) {
    if (d <= 0) throw std::invalid_argument("degrees must be positive");
    std::uint64_t du = static_cast<std::uint64_t>(d);
    if (prod > std::numeric_limits<std::uint64_t>::max() / du)
      throw std::overflow_error("start solution count overflows 64 bits");
    prod *= du;
    if (prod > cap)
      throw std::overflow_error("start solution count exceeds the configured cap");
  }
  count_ = prod;
}

CVec StartSolutions::solution(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("start solution index");
  const int n = static_cast<int>(degrees_.size());
  CVec s(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t d = static_cast<std::uint64_t>(degrees_[i]);
    std::uint64_t k = index % d;
    index /= d;
    s[i] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(d));
  }
  return s;
}

}  // namespace hc
