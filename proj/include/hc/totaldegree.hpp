#pragma once

#include <cstdint>
#include <vector>

#include "hc/poly.hpp"
#include "hc/types.hpp"

namespace hc {

// Start system G_i = x_i^{d_i} - 1 with d_i = deg F_i.
struct TotalDegreeStart {
  std::vector<int> degrees;
  PolySystem system;
};

TotalDegreeStart build_start_system(const PolySystem& F);

// Product of the total degrees of a square system. Throws on overflow.
std::uint64_t bezout_number(const PolySystem& F);

// Lazy enumeration of the roots-of-unity start solutions. Solutions are
// addressable by index (mixed-radix decoding), so disjoint index ranges can
// be consumed in parallel without coordination.
class StartSolutions {
 public:
  explicit StartSolutions(std::vector<int> degrees,
                          std::uint64_t cap = 10'000'000);

  std::uint64_t count() const { return count_; }
  CVec solution(std::uint64_t index) const;

  class Iterator {
   public:
    Iterator(const StartSolutions* owner, std::uint64_t i) : owner_(owner), i_(i) {}
    CVec operator*() const { return owner_->solution(i_); }
    Iterator& operator++() { ++i_; return *this; }
    bool operator!=(const Iterator& o) const { return i_ != o.i_; }

   private:
    const StartSolutions* owner_;
    std::uint64_t i_;
  };
  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, count_); }

 private:
  std::vector<int> degrees_;
  std::uint64_t count_ = 0;
};

}  // namespace hc
