#include <doctest.h>

#include "corpus.hpp"
#include "hc/totaldegree.hpp"

using namespace hc;

TEST_CASE("start system for the circle/line example") {
  PolySystem F({parse_polynomial("x^2 + y^2 - 1", {"x", "y"}),
                parse_polynomial("3*x - 2*y", {"x", "y"})});
  TotalDegreeStart s = build_start_system(F);
  CHECK(s.degrees == std::vector<int>{2, 1});
  CHECK(s.system[0] == parse_polynomial("x^2 - 1", {"x", "y"}));
  CHECK(s.system[1] == parse_polynomial("y - 1", {"x", "y"}));
}

TEST_CASE("start system for a linear square system") {
  PolySystem F({parse_polynomial("x + y - 2", {"x", "y"}),
                parse_polynomial("x - y", {"x", "y"})});
  TotalDegreeStart s = build_start_system(F);
  CHECK(s.system[0] == parse_polynomial("x - 1", {"x", "y"}));
  CHECK(s.system[1] == parse_polynomial("y - 1", {"x", "y"}));
}

TEST_CASE("start system rejects bad input") {
  PolySystem wide({parse_polynomial("x + y", {"x", "y"})});
  CHECK_THROWS_AS(build_start_system(wide), std::invalid_argument);
  PolySystem with_const({parse_polynomial("x^2 - 1", {"x", "y"}),
                         parse_polynomial("5", {"x", "y"})});
  CHECK_THROWS_AS(build_start_system(with_const), std::invalid_argument);
}

TEST_CASE("start solutions: degrees (2,1)") {
  StartSolutions s({2, 1});
  REQUIRE(s.count() == 2);
  CVec a = s.solution(0), b = s.solution(1);
  CHECK(std::abs(a[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(a[1] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(b[0] - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(b[1] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("start solutions: all-linear degrees give the all-ones point") {
  StartSolutions s({1, 1, 1});
  REQUIRE(s.count() == 1);
  CVec a = s.solution(0);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == Complex(1.0, 0.0));
}

TEST_CASE("start solutions: cube roots of unity") {
  StartSolutions s({3});
  REQUIRE(s.count() == 3);
  for (int k = 0; k < 3; ++k) {
    Complex z = s.solution(k)[0];
    CHECK(std::abs(cpow_int(z, 3) - Complex(1, 0)) < 1e-14);
  }
}

TEST_CASE("every enumerated start solution satisfies G with tiny residual") {
  PolySystem F({parse_polynomial("x^3 + y - 1", {"x", "y", "z"}),
                parse_polynomial("y^4 - z", {"x", "y", "z"}),
                parse_polynomial("z^2 + x", {"x", "y", "z"})});
  TotalDegreeStart td = build_start_system(F);
  StartSolutions s(td.degrees);
  REQUIRE(s.count() == 24);
  for (const CVec& sol : s) {
    CHECK(inf_norm(td.system.evaluate(sol)) <= 1e-14);
  }
}

TEST_CASE("enumeration yields pairwise-distinct points") {
  StartSolutions s({3, 4, 2});
  std::vector<CVec> all;
  for (const CVec& sol : s) all.push_back(sol);
  REQUIRE(all.size() == 24);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      CHECK(inf_norm(all[i] - all[j]) > 1e-8);
}

TEST_CASE("start solution cap guard") {
  CHECK_THROWS_AS(StartSolutions({100, 100, 100, 100}), std::overflow_error);
  CHECK_NOTHROW(StartSolutions({100, 100, 100, 100}, 200'000'000));
}

TEST_CASE("Bezout numbers of the corpus") {
  CHECK(bezout_number(corpus_system("heart").system) == 576);
  CHECK(bezout_number(corpus_system("katsura11").system) == 2048);
  // product of the member degrees 1..7
  CHECK(bezout_number(corpus_system("cyclic7").system) == 5040);
  CHECK(bezout_number(corpus_system("ipp2").system) == 1024);
  PolySystem F({parse_polynomial("x^2 + y^2 - 1", {"x", "y"}),
                parse_polynomial("3*x - 2*y", {"x", "y"})});
  CHECK(bezout_number(F) == 2);
}
