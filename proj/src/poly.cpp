#include "hc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace hc {

bool grlex_before(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exponents > b.exponents;
}

void Polynomial::normalize() {
  for (const Term& t : terms_) {
    if (t.mono.nvars() != nvars_)
      throw std::invalid_argument("term monomial length does not match nvars");
    for (int e : t.mono.exponents)
      if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    return grlex_before(a.mono, b.mono);
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (Term& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) {
                                return t.coeff.real() == 0.0 && t.coeff.imag() == 0.0;
                              }),
               merged.end());
  terms_ = std::move(merged);
}

Polynomial::Polynomial(int nvars, std::vector<Term> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
  if (nvars < 0) throw std::invalid_argument("nvars must be non-negative");
  normalize();
}

Polynomial Polynomial::constant(int nvars, Complex c) {
  std::vector<Term> ts;
  if (c != Complex(0.0, 0.0)) ts.push_back({c, Monomial::zero(nvars)});
  return Polynomial(nvars, std::move(ts));
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw std::out_of_range("variable index");
  Monomial m = Monomial::zero(nvars);
  m.exponents[index] = 1;
  return Polynomial(nvars, {{Complex(1.0, 0.0), std::move(m)}});
}

Polynomial Polynomial::power_minus_one(int nvars, int index, int d) {
  if (index < 0 || index >= nvars) throw std::out_of_range("variable index");
  Monomial m = Monomial::zero(nvars);
  m.exponents[index] = d;
  return Polynomial(nvars, {{Complex(1.0, 0.0), std::move(m)},
                            {Complex(-1.0, 0.0), Monomial::zero(nvars)}});
}

int Polynomial::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Complex Polynomial::evaluate(const CVec& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
  if (scheme_) return scheme_->evaluate(x);
  return evaluate_naive(x);
}

Complex Polynomial::evaluate_naive(const CVec& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
  Complex sum(0.0, 0.0);
  for (const Term& t : terms_) {
    Complex v = t.coeff;
    for (int j = 0; j < nvars_; ++j) {
      int e = t.mono.exponents[j];
      if (e > 0) v *= cpow_int(x[j], e);
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::differentiate(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("variable index");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    int e = t.mono.exponents[var];
    if (e == 0) continue;
    Term d = t;
    d.coeff *= static_cast<double>(e);
    d.mono.exponents[var] = e - 1;
    out.push_back(std::move(d));
  }
  return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::homogenized() const {
  int d = degree();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Term h = t;
    std::vector<int> e;
    e.reserve(nvars_ + 1);
    e.push_back(d - t.mono.degree());
    e.insert(e.end(), t.mono.exponents.begin(), t.mono.exponents.end());
    h.mono.exponents = std::move(e);
    out.push_back(std::move(h));
  }
  return Polynomial(nvars_ + 1, std::move(out));
}

Polynomial Polynomial::substitute(int var, Complex value) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("variable index");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Term s = t;
    int e = t.mono.exponents[var];
    if (e > 0) s.coeff *= cpow_int(value, e);
    s.mono.exponents[var] = 0;
    out.push_back(std::move(s));
  }
  return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::drop_variable(int var) const {
  if (var < 0 || var >= nvars_) throw std::out_of_range("variable index");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    if (t.mono.exponents[var] != 0)
      throw std::invalid_argument("drop_variable: variable occurs in a term");
    Term s = t;
    s.mono.exponents.erase(s.mono.exponents.begin() + var);
    out.push_back(std::move(s));
  }
  return Polynomial(nvars_ - 1, std::move(out));
}

Polynomial Polynomial::compiled() const {
  Polynomial p = *this;
  p.scheme_ = std::make_shared<EvaluationScheme>(*this);
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  std::vector<Term> ts = terms_;
  ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial(nvars_, std::move(ts));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o * Complex(-1.0, 0.0);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
  std::vector<Term> ts;
  ts.reserve(terms_.size() * o.terms_.size());
  for (const Term& a : terms_)
    for (const Term& b : o.terms_) {
      Term p;
      p.coeff = a.coeff * b.coeff;
      p.mono.exponents.resize(nvars_);
      for (int j = 0; j < nvars_; ++j)
        p.mono.exponents[j] = a.mono.exponents[j] + b.mono.exponents[j];
      ts.push_back(std::move(p));
    }
  return Polynomial(nvars_, std::move(ts));
}

Polynomial Polynomial::operator*(Complex c) const {
  std::vector<Term> ts = terms_;
  for (Term& t : ts) t.coeff *= c;
  return Polynomial(nvars_, std::move(ts));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const Term& t : terms_) {
    Complex c = t.coeff;
    bool negate = false;
    if (c.imag() == 0.0 && c.real() < 0.0) {
      negate = true;
      c = -c;
    }
    os << (first ? (negate ? "-" : "") : (negate ? " - " : " + "));
    first = false;
    std::vector<std::string> factors;
    if (c.imag() != 0.0) {
      std::ostringstream cs;
      cs.precision(17);
      cs << "(" << c.real() << (c.imag() >= 0 ? "+" : "-") << std::abs(c.imag()) << "i)";
      factors.push_back(cs.str());
    } else if (c.real() != 1.0 || t.mono.degree() == 0) {
      std::ostringstream cs;
      cs.precision(17);
      cs << c.real();
      factors.push_back(cs.str());
    }
    for (int j = 0; j < nvars_; ++j) {
      int e = t.mono.exponents[j];
      if (e == 0) continue;
      std::ostringstream vs;
      if (j < static_cast<int>(names.size()))
        vs << names[j];
      else
        vs << "x" << j;
      if (e > 1) vs << "^" << e;
      factors.push_back(vs.str());
    }
    for (size_t k = 0; k < factors.size(); ++k) {
      if (k) os << "*";
      os << factors[k];
    }
  }
  return os.str();
}

PolySystem::PolySystem(std::vector<Polynomial> polys) : polys_(std::move(polys)) {
  if (polys_.empty()) throw std::invalid_argument("empty polynomial system");
  nvars_ = polys_[0].nvars();
  for (const Polynomial& p : polys_)
    if (p.nvars() != nvars_)
      throw std::invalid_argument("system members disagree on variable count");
}

std::vector<int> PolySystem::degrees() const {
  std::vector<int> d;
  d.reserve(polys_.size());
  for (const Polynomial& p : polys_) d.push_back(p.degree());
  return d;
}

CVec PolySystem::evaluate(const CVec& x) const {
  CVec out(size());
  for (int i = 0; i < size(); ++i) out[i] = polys_[i].evaluate(x);
  return out;
}

CMat PolySystem::jacobian(const CVec& x) const {
  CMat J(size(), nvars_);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < nvars_; ++j)
      J(i, j) = polys_[i].differentiate(j).evaluate(x);
  return J;
}

PolySystem PolySystem::homogenized() const {
  std::vector<Polynomial> out;
  out.reserve(polys_.size());
  for (const Polynomial& p : polys_) out.push_back(p.homogenized());
  return PolySystem(std::move(out));
}

// ---------------------------------------------------------------------------
// EvaluationScheme

EvaluationScheme::EvaluationScheme(const Polynomial& p) : nvars_(p.nvars()) {
  root_ = compile(p.terms());
}

int EvaluationScheme::compile(std::vector<Term> terms) {
  if (terms.size() <= 1) {
    Node leaf;
    leaf.leaf = true;
    if (terms.empty()) {
      leaf.coeff = Complex(0.0, 0.0);
      leaf.mono.assign(nvars_, 0);
    } else {
      leaf.coeff = terms[0].coeff;
      leaf.mono = terms[0].mono.exponents;
    }
    nodes_.push_back(std::move(leaf));
    return static_cast<int>(nodes_.size()) - 1;
  }
  // variable occurring in the most terms
  std::vector<int> count(nvars_, 0);
  for (const Term& t : terms)
    for (int j = 0; j < nvars_; ++j)
      if (t.mono.exponents[j] > 0) ++count[j];
  int var = 0;
  for (int j = 1; j < nvars_; ++j)
    if (count[j] > count[var]) var = j;
  if (count[var] == 0) {
    // all-constant duplicate terms cannot occur after normalization
    Node leaf;
    leaf.leaf = true;
    leaf.coeff = terms[0].coeff;
    leaf.mono = terms[0].mono.exponents;
    nodes_.push_back(std::move(leaf));
    return static_cast<int>(nodes_.size()) - 1;
  }
  std::vector<Term> with, without;
  int emin = 0;
  for (const Term& t : terms) {
    if (t.mono.exponents[var] > 0)
      with.push_back(t);
    else
      without.push_back(t);
  }
  emin = with[0].mono.exponents[var];
  for (const Term& t : with) emin = std::min(emin, t.mono.exponents[var]);
  for (Term& t : with) t.mono.exponents[var] -= emin;

  int f = compile(std::move(with));
  int r = without.empty() ? -1 : compile(std::move(without));
  Node split;
  split.var = var;
  split.power = emin;
  split.factored = f;
  split.rest = r;
  nodes_.push_back(std::move(split));
  return static_cast<int>(nodes_.size()) - 1;
}

Complex EvaluationScheme::eval_node(int idx, const CVec& x) const {
  const Node& n = nodes_[idx];
  if (n.leaf) {
    Complex v = n.coeff;
    for (int j = 0; j < nvars_; ++j)
      if (n.mono[j] > 0) v *= cpow_int(x[j], n.mono[j]);
    return v;
  }
  Complex v = cpow_int(x[n.var], n.power) * eval_node(n.factored, x);
  if (n.rest >= 0) v += eval_node(n.rest, x);
  return v;
}

Complex EvaluationScheme::evaluate(const CVec& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
  return eval_node(root_, x);
}

// ---------------------------------------------------------------------------
// SystemEvaluator

SystemEvaluator::SystemEvaluator(const PolySystem& F) {
  std::vector<Polynomial> compiled;
  compiled.reserve(F.size());
  for (const Polynomial& p : F.polys()) compiled.push_back(p.compiled());
  system_ = PolySystem(std::move(compiled));
  dpolys_.reserve(static_cast<size_t>(F.size()) * F.nvars());
  for (const Polynomial& p : F.polys())
    for (int j = 0; j < F.nvars(); ++j) {
      Polynomial d = p.differentiate(j);
      dpolys_.push_back(d.is_zero() ? d : d.compiled());
    }
}

void SystemEvaluator::eval(const CVec& x, CVec& out) const {
  out.resize(system_.size());
  for (int i = 0; i < system_.size(); ++i) out[i] = system_[i].evaluate(x);
}

void SystemEvaluator::jacobian(const CVec& x, CMat& out) const {
  const int m = system_.size(), n = system_.nvars();
  out.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const Polynomial& d = dpolys_[static_cast<size_t>(i) * n + j];
      out(i, j) = d.is_zero() ? Complex(0.0, 0.0) : d.evaluate(x);
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;
  int line;

  explicit Lexer(std::string_view t, int line_) : text(t), line(line_) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  int column() const { return static_cast<int>(pos) + 1; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, column());
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }

  double number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos == start || (pos == start + 1 && text[start] == '.'))
      fail("expected a number");
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      size_t mark = pos;
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      } else {
        pos = mark;  // 'e' belongs to an identifier, not this number
      }
    }
    return std::stod(std::string(text.substr(start, pos - start)));
  }

  bool number_ahead() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                   text[pos] == '_'))
        ++pos;
    }
    if (pos == start) fail("expected an identifier");
    return std::string(text.substr(start, pos - start));
  }

  bool ident_ahead() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer exponent");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }
};

// (a), (a+bi), (a-bi), (bi): a complex literal in parentheses
Complex parse_complex_literal(Lexer& lx) {
  lx.expect('(', "'('");
  double sign = 1.0;
  if (lx.accept('-')) sign = -1.0;
  else lx.accept('+');
  double first = lx.number();
  if (lx.ident_ahead()) {
    std::string id = lx.ident();
    if (id != "i") lx.fail("expected 'i' in complex literal");
    lx.expect(')', "')'");
    return Complex(0.0, sign * first);
  }
  if (lx.peek() == '+' || lx.peek() == '-') {
    double isign = lx.accept('+') ? 1.0 : (lx.accept('-'), -1.0);
    double second = lx.number_ahead() ? lx.number() : 1.0;
    std::string id = lx.ident();
    if (id != "i") lx.fail("expected 'i' in complex literal");
    lx.expect(')', "')'");
    return Complex(sign * first, isign * second);
  }
  lx.expect(')', "')'");
  return Complex(sign * first, 0.0);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text,
                            const std::vector<std::string>& variables) {
  return [&]() {
    Lexer lx(text, 1);
    const int nv = static_cast<int>(variables.size());
    std::vector<Term> terms;

    auto var_index = [&](const std::string& name, int col) {
      for (int j = 0; j < nv; ++j)
        if (variables[j] == name) return j;
      throw ParseError("unknown variable '" + name + "'", lx.line, col);
    };

    bool first_term = true;
    while (true) {
      double sign = 1.0;
      if (lx.accept('-')) sign = -1.0;
      else if (lx.accept('+')) sign = 1.0;
      else if (!first_term)
        lx.fail("expected '+' or '-' between terms");
      if (lx.eof()) lx.fail("expected a term");
      first_term = false;

      Complex coeff(sign, 0.0);
      Monomial mono = Monomial::zero(nv);
      bool want_factor = true;
      while (want_factor) {
        if (lx.number_ahead()) {
          coeff *= lx.number();
        } else if (lx.peek() == '(') {
          coeff *= parse_complex_literal(lx);
        } else if (lx.ident_ahead()) {
          int col = lx.column();
          std::string name = lx.ident();
          int j = var_index(name, col);
          int e = 1;
          if (lx.accept('^')) e = lx.integer();
          mono.exponents[j] += e;
        } else {
          lx.fail("expected a coefficient or variable");
        }
        want_factor = lx.accept('*');
      }
      terms.push_back({coeff, std::move(mono)});

      if (lx.eof()) break;
      char c = lx.peek();
      if (c != '+' && c != '-') lx.fail("unexpected character");
    }
    return Polynomial(nv, std::move(terms));
  }();
}

ParsedSystem parse_system_text(std::string_view text) {
  std::vector<std::string> variables;
  std::vector<Polynomial> polys;
  int lineno = 0;
  size_t start = 0;
  bool have_header = false;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a != std::string_view::npos) {
      size_t b = line.find_last_not_of(" \t\r");
      std::string_view body = line.substr(a, b - a + 1);
      if (!have_header) {
        if (body.substr(0, 10) != "variables:")
          throw ParseError("expected 'variables:' header line", lineno, 1);
        std::istringstream is{std::string(body.substr(10))};
        std::string name;
        while (is >> name) variables.push_back(name);
        if (variables.empty())
          throw ParseError("no variables declared", lineno, 1);
        have_header = true;
      } else {
        try {
          polys.push_back(parse_polynomial(body, variables));
        } catch (ParseError& e) {
          throw ParseError(e.what(), lineno, e.column + static_cast<int>(a));
        }
      }
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (!have_header) throw ParseError("missing 'variables:' header", lineno, 1);
  if (polys.empty()) throw ParseError("no polynomials in input", lineno, 1);
  return ParsedSystem{PolySystem(std::move(polys)), std::move(variables)};
}

ParsedSystem parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system_text(ss.str());
}

}  // namespace hc
