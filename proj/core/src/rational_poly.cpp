#include "dualpair/rational_poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dualpair/error.hpp"

namespace dualpair::poly {

namespace {

int total_degree(const Monomial& m) {
  return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

std::string var_name(std::size_t dof, std::size_t index) {
  return (index < dof ? "q" : "p") + std::to_string((index % dof) + 1);
}

}  // namespace

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

RationalPoly::RationalPoly(std::size_t dof) : dof_(dof) {
  if (dof == 0) throw ArgumentError("RationalPoly: need at least one degree of freedom");
}

RationalPoly RationalPoly::constant(std::size_t dof, const Rational& c) {
  RationalPoly r(dof);
  r.add_term(Monomial(2 * dof, 0), c);
  return r;
}

RationalPoly RationalPoly::variable(std::size_t dof, std::size_t index) {
  if (index >= 2 * dof) throw ArgumentError("RationalPoly::variable: index out of range");
  Monomial m(2 * dof, 0);
  m[index] = 1;
  return monomial(dof, std::move(m), 1);
}

RationalPoly RationalPoly::monomial(std::size_t dof, Monomial exps, const Rational& c) {
  if (exps.size() != 2 * dof) throw ArgumentError("RationalPoly::monomial: wrong exponent count");
  RationalPoly r(dof);
  r.add_term(exps, c);
  return r;
}

void RationalPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void RationalPoly::require_same(const RationalPoly& o) const {
  if (o.dof_ != dof_) throw ArgumentError("RationalPoly: variable-count mismatch");
}

bool RationalPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int RationalPoly::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

Rational RationalPoly::constant_term() const {
  auto it = terms_.find(Monomial(num_vars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

RationalPoly RationalPoly::derivative(std::size_t var) const {
  if (var >= num_vars()) throw ArgumentError("RationalPoly::derivative: index out of range");
  RationalPoly r(dof_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

Rational RationalPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars()) throw ArgumentError("RationalPoly::evaluate: dimension mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

double RationalPoly::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars()) throw ArgumentError("RationalPoly::evaluate: dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

std::string RationalPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    Rational c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = total_degree(m) == 0;
    bool need_star = false;
    if (is_const || c != 1) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << '*';
      os << var_name(dof_, i);
      if (m[i] > 1) os << '^' << m[i];
      need_star = true;
    }
  }
  return os.str();
}

RationalPoly RationalPoly::parse(std::string_view text, std::size_t dof) {
  RationalPoly result(dof);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> void {
    throw ArgumentError("polynomial parse error at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_uint = [&]() -> std::string {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };

  skip_ws();
  if (pos == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff = 1;
    Monomial mono(2 * dof, 0);
    bool have_factor = false;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      const char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num = read_uint();
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          const std::string den = read_uint();
          if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
          num += "/" + den;
        }
        Rational value(num);
        value.canonicalize();
        coeff *= value;
      } else if (ch == 'q' || ch == 'p') {
        ++pos;
        const unsigned long idx = std::stoul(read_uint());
        if (idx == 0 || idx > dof) fail("variable index out of range");
        std::uint32_t exp = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          exp = static_cast<std::uint32_t>(std::stoul(read_uint()));
        }
        mono[(ch == 'q' ? 0 : dof) + idx - 1] += exp;
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      have_factor = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!have_factor) fail("empty term");
    result.add_term(mono, sign * coeff);
  }
  return result;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  require_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  require_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  a.require_same(b);
  RationalPoly r(a.dof_);
  Monomial m(a.num_vars());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
  return a.dof_ == b.dof_ && a.terms_ == b.terms_;
}

RationalPoly random_poly(std::mt19937_64& rng, std::size_t dof, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> n_terms(1, max_terms);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, 2 * dof - 1);
  RationalPoly r(dof);
  const int count = n_terms(rng);
  for (int t = 0; t < count; ++t) {
    Monomial m(2 * dof, 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m[var(rng)] += 1;
    Rational c(num(rng), den(rng));
    c.canonicalize();
    r += RationalPoly::monomial(dof, m, c);
  }
  return r;
}

}  // namespace dualpair::poly
