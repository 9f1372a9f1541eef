#include "ramplane/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ramplane {

namespace {
constexpr const char kVarNames[kNumVars + 1] = "xyzuv";
}

char var_name(Var v) { return kVarNames[static_cast<int>(v)]; }

std::optional<Var> var_from_name(char c) {
  for (int i = 0; i < kNumVars; ++i)
    if (kVarNames[i] == c) return static_cast<Var>(i);
  return std::nullopt;
}

Poly::Poly(const Rat& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(Var v) {
  Monomial m;
  m[v] = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(m, c);
  p.check_degree_cap();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

bool Poly::is_integer_constant() const {
  return is_constant() && denominator(constant_term()) == 1;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total_degree();  // grlex leader has max degree
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[v]);
  return d;
}

std::vector<Var> Poly::used_vars() const {
  std::vector<Var> out;
  for (int i = 0; i < kNumVars; ++i)
    if (degree_in(static_cast<Var>(i)) > 0) out.push_back(static_cast<Var>(i));
  return out;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.total_degree();
  for (const auto& [m, c] : terms_)
    if (m.total_degree() != d) return false;
  return true;
}

const Rat& Poly::coeff(const Monomial& m) const {
  static const Rat zero = 0;
  auto it = terms_.find(m);
  return it == terms_.end() ? zero : it->second;
}

Rat Poly::constant_term() const { return coeff(Monomial{}); }

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Rat& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.begin()->second;
}

void Poly::insert_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_degree_cap() const {
  if (total_degree() > kMaxTotalDegree)
    throw degree_cap_error("total degree " + std::to_string(total_degree()) +
                           " exceeds the cap of " +
                           std::to_string(kMaxTotalDegree));
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.insert_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.insert_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.insert_term(ma * mb, ca * cb);
  r.check_degree_cap();
  return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p.scaled(c); }

Poly Poly::scaled(const Rat& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
  return r;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  Poly r(Rat(1));
  Poly base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = (n >>= 1) ? base * base : base;
  }
  return r;
}

Poly Poly::derivative(Var v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = m[v];
    if (e == 0) continue;
    Monomial d = m;
    d[v] = int16_t(e - 1);
    r.insert_term(d, c * e);
  }
  return r;
}

Poly Poly::substitute(const std::map<Var, Poly>& repl) const {
  Poly result;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    for (int i = 0; i < kNumVars; ++i) {
      const int e = m.e[i];
      if (e == 0) continue;
      const Var v = static_cast<Var>(i);
      auto it = repl.find(v);
      const Poly base = (it != repl.end()) ? it->second : Poly::variable(v);
      term = term * base.pow(e);
    }
    result += term;
  }
  return result;
}

Poly Poly::substitute(Var v, const Poly& p) const {
  return substitute(std::map<Var, Poly>{{v, p}});
}

Rat Poly::evaluate(const std::map<Var, Rat>& point) const {
  Rat acc = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < kNumVars; ++i) {
      const int e = m.e[i];
      if (e == 0) continue;
      auto it = point.find(static_cast<Var>(i));
      if (it == point.end())
        throw std::invalid_argument("evaluate: missing value for variable");
      Rat p = it->second;
      for (int k = 0; k < e; ++k) t *= p;
    }
    acc += t;
  }
  return acc;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
  std::vector<Poly> out(size_t(degree_in(v)) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    const int e = m[v];
    rest[v] = 0;
    out[size_t(e)] += Poly::monomial(rest, c);
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

Poly Poly::from_coeffs_in(Var v, const std::vector<Poly>& coeffs) {
  Poly r;
  Poly xv = Poly::variable(v);
  for (size_t i = 0; i < coeffs.size(); ++i)
    r += coeffs[i] * xv.pow(int(i));
  return r;
}

Rat Poly::rational_content() const {
  if (terms_.empty()) return 0;
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    num_gcd = boost::multiprecision::gcd(num_gcd, numerator(c));
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
  }
  return Rat(num_gcd, den_lcm);
}

Poly Poly::normalized() const {
  if (terms_.empty()) return *this;
  Rat c = rational_content();
  if (leading_coeff() < 0) c = -c;
  return scaled(Rat(1) / c);
}

// --- printing ---------------------------------------------------------------

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string monomial_str(const Monomial& m) {
  std::string s;
  for (int i = 0; i < kNumVars; ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += kVarNames[i];
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    const Rat a = neg ? Rat(-c) : c;
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    const std::string ms = monomial_str(m);
    if (ms.empty()) {
      s += rat_str(a);
    } else if (a == 1) {
      s += ms;
    } else {
      s += rat_str(a) + "*" + ms;
    }
  }
  return s;
}

size_t Poly::hash() const { return std::hash<std::string>()(str()); }

// --- parsing ----------------------------------------------------------------
//
// Grammar ("+"/"-"-joined terms, whitespace insignificant):
//   term   := [coef ["*"]] varpow ("*" varpow)*  |  coef
//   varpow := var ["^" exp]
//   coef   := int | int "/" int

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& text) : s(text) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char next() {
    skip_ws();
    return s[i++];
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw parse_error("expected integer at position " +
                                      std::to_string(start) + " in '" + s + "'");
    return Int(s.substr(start, i - start));
  }
};

}  // namespace

Poly Poly::parse(const std::string& text) {
  Lexer lx(text);
  Poly result;
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    if (lx.accept('+')) {
      if (first) { /* leading plus allowed */ }
    } else if (lx.accept('-')) {
      sign = -1;
    } else if (!first) {
      throw parse_error("expected '+' or '-' between terms in '" + text + "'");
    }
    first = false;

    Rat coef = 1;
    bool saw_coef = false;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      Int num = lx.integer();
      if (lx.accept('/')) {
        Int den = lx.integer();
        if (den == 0) throw parse_error("zero denominator in '" + text + "'");
        coef = Rat(num, den);
      } else {
        coef = Rat(num);
      }
      saw_coef = true;
      lx.accept('*');
    }

    Monomial mono;
    bool saw_var = false;
    for (;;) {
      char c = lx.peek();
      auto var = var_from_name(c);
      if (!var) break;
      lx.next();
      int exp = 1;
      if (lx.accept('^')) {
        Int e = lx.integer();
        if (e < 0 || e > kMaxTotalDegree)
          throw parse_error("exponent out of range in '" + text + "'");
        exp = int(e);
      }
      mono[*var] = int16_t(mono[*var] + exp);
      saw_var = true;
      if (!lx.accept('*')) {
        // Implicit product: allow "2xy" style adjacency as well.
        auto nv = var_from_name(lx.peek());
        if (!nv) break;
      }
    }
    if (!saw_coef && !saw_var)
      throw parse_error("malformed term in '" + text + "'");
    result.insert_term(mono, sign * coef);
  }
  result.check_degree_cap();
  return result;
}

}  // namespace ramplane
