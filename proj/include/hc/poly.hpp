#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hc/types.hpp"

namespace hc {

// Exponent vector of one monomial. Length always equals the ambient
// variable count of the polynomial that owns it.
struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}
  static Monomial zero(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }

  int nvars() const { return static_cast<int>(exponents.size()); }
  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool operator==(const Monomial& o) const { return exponents == o.exponents; }
};

// Graded lexicographic order, descending grade: returns true when a sorts
// before b (a has higher total degree, or equal degree and lex-larger
// exponent vector). Gives every polynomial a unique term order.
bool grlex_before(const Monomial& a, const Monomial& b);

struct Term {
  Complex coeff;
  Monomial mono;
};

class EvaluationScheme;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  Polynomial(int nvars, std::vector<Term> terms);

  static Polynomial constant(int nvars, Complex c);
  static Polynomial variable(int nvars, int index);   // x_index
  static Polynomial power_minus_one(int nvars, int index, int d);  // x_index^d - 1

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // 0 for the zero polynomial

  Complex evaluate(const CVec& x) const;        // uses the attached scheme if any
  Complex evaluate_naive(const CVec& x) const;  // straight term-by-term sum

  Polynomial differentiate(int var) const;
  Polynomial homogenized() const;  // new variable inserted at index 0
  Polynomial substitute(int var, Complex value) const;
  Polynomial drop_variable(int var) const;  // variable must not occur

  // Copy with a compiled evaluation scheme attached; immutable afterwards.
  Polynomial compiled() const;
  bool has_scheme() const { return scheme_ != nullptr; }
  const EvaluationScheme* scheme() const { return scheme_.get(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex c) const;
  bool operator==(const Polynomial& o) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
  std::shared_ptr<const EvaluationScheme> scheme_;
  void normalize();
};

class PolySystem {
 public:
  PolySystem() = default;
  explicit PolySystem(std::vector<Polynomial> polys);

  int nvars() const { return nvars_; }
  int size() const { return static_cast<int>(polys_.size()); }
  bool is_square() const { return size() == nvars_; }
  const std::vector<Polynomial>& polys() const { return polys_; }
  const Polynomial& operator[](int i) const { return polys_[i]; }

  std::vector<int> degrees() const;
  CVec evaluate(const CVec& x) const;
  CMat jacobian(const CVec& x) const;  // rows = polys, cols = vars
  PolySystem homogenized() const;

 private:
  std::vector<Polynomial> polys_;
  int nvars_ = 0;
};

// Variable-factored Horner evaluation plan. Construction factors out the
// variable occurring in the most remaining terms, recursively.
class EvaluationScheme {
 public:
  explicit EvaluationScheme(const Polynomial& p);
  Complex evaluate(const CVec& x) const;
  int nvars() const { return nvars_; }

 private:
  struct Node {
    int var = -1;        // split variable (split nodes)
    int power = 0;       // factored power
    int factored = -1;   // node index of the factored part
    int rest = -1;       // node index of the remainder, -1 if none
    bool leaf = false;
    Complex coeff;       // leaf payload
    std::vector<int> mono;
  };
  int compile(std::vector<Term> terms);
  Complex eval_node(int idx, const CVec& x) const;
  std::vector<Node> nodes_;
  int root_ = -1;
  int nvars_ = 0;
};

// Precompiled evaluator for a whole system: value and Jacobian schemes.
// Immutable and safe to share across threads.
class SystemEvaluator {
 public:
  explicit SystemEvaluator(const PolySystem& F);
  int nvars() const { return system_.nvars(); }
  int size() const { return system_.size(); }
  const PolySystem& system() const { return system_; }
  void eval(const CVec& x, CVec& out) const;
  void jacobian(const CVec& x, CMat& out) const;

 private:
  PolySystem system_;                  // compiled member polynomials
  std::vector<Polynomial> dpolys_;     // row-major [i*nvars+j] compiled partials
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int line_, int column_)
      : std::runtime_error(std::move(msg)), line(line_), column(column_) {}
};

Polynomial parse_polynomial(std::string_view text,
                            const std::vector<std::string>& variables);

struct ParsedSystem {
  PolySystem system;
  std::vector<std::string> variables;
};

// File grammar: a `variables: x y z` header, then one polynomial per line;
// `#` starts a comment.
ParsedSystem parse_system_text(std::string_view text);
ParsedSystem parse_system_file(const std::string& path);

}  // namespace hc
