#include "dzeros/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dzeros {
namespace {

using Monomial = StieltjesPolynomial::Monomial;

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Display order: lower total degree first; within a degree, monomials that
// involve higher-index variables come first.
bool display_before(const Monomial& a, const Monomial& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = n; i-- > 0;) {
    const int ea = i < a.size() ? a[i] : 0;
    const int eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "g" + std::to_string(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// Joins signed terms "c*m" as "a + b - c".
std::string join_terms(const std::vector<std::pair<Rational, Monomial>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [coef, mono] : terms) {
    const bool negative = coef < 0;
    const Rational mag = negative ? Rational(-coef) : coef;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string ms = monomial_string(mono);
    if (ms.empty()) {
      out += rational_string(mag);
    } else if (mag == 1) {
      out += ms;
    } else {
      out += rational_string(mag) + "*" + ms;
    }
  }
  return out;
}

std::vector<std::pair<Rational, Monomial>> sorted_terms(const std::map<Monomial, Rational>& terms) {
  std::vector<std::pair<Rational, Monomial>> out;
  for (const auto& [m, c] : terms) out.emplace_back(c, m);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return display_before(a.second, b.second); });
  return out;
}

}  // namespace

StieltjesPolynomial::StieltjesPolynomial(int constant) : StieltjesPolynomial(Rational(constant)) {}

StieltjesPolynomial::StieltjesPolynomial(Rational constant) {
  if (constant != 0) terms_.emplace(Monomial{}, std::move(constant));
}

StieltjesPolynomial StieltjesPolynomial::variable(int index) {
  StieltjesPolynomial p;
  Monomial m(static_cast<std::size_t>(index) + 1, 0);
  m.back() = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

bool StieltjesPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational StieltjesPolynomial::constant_term() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int StieltjesPolynomial::max_variable() const {
  int top = -1;
  for (const auto& [m, c] : terms_) top = std::max(top, static_cast<int>(m.size()) - 1);
  return top;
}

int StieltjesPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

double StieltjesPolynomial::evaluate(std::span<const double> gammas) const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = static_cast<double>(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      term *= std::pow(gammas[i], m[i]);
    }
    total += term;
  }
  return total;
}

std::string StieltjesPolynomial::to_string() const { return join_terms(sorted_terms(terms_)); }

std::string StieltjesPolynomial::to_string_over_pi() const {
  if (terms_.empty()) return "0";
  boost::multiprecision::cpp_int common = 1;
  for (const auto& [m, c] : terms_) {
    const auto d = denominator(c);
    common = common / boost::multiprecision::gcd(common, d) * d;
  }
  std::vector<std::pair<Rational, Monomial>> scaled;
  for (const auto& [c, m] : sorted_terms(terms_)) scaled.emplace_back(c * Rational(common), m);
  const std::string body = join_terms(scaled);
  const std::string denom = common == 1 ? std::string("pi") : (common.str() + "*pi");
  return "(" + body + ")/(" + denom + ")";
}

void StieltjesPolynomial::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  trim(m);
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

StieltjesPolynomial& StieltjesPolynomial::operator+=(const StieltjesPolynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

StieltjesPolynomial& StieltjesPolynomial::operator-=(const StieltjesPolynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

StieltjesPolynomial& StieltjesPolynomial::operator*=(const StieltjesPolynomial& rhs) {
  StieltjesPolynomial out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      out.add_term(std::move(m), ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

}  // namespace dzeros
