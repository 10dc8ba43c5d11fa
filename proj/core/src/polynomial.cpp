#include "nilbm/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nilbm {

// ---------------------------------------------------------------- intervals

Interval operator+(const Interval& a, const Interval& b) {
  return {Rat(a.lo + b.lo), Rat(a.hi + b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {Rat(a.lo - b.hi), Rat(a.hi - b.lo)};
}

Interval operator-(const Interval& a) { return {Rat(-a.hi), Rat(-a.lo)}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rat p1(a.lo * b.lo), p2(a.lo * b.hi), p3(a.hi * b.lo), p4(a.hi * b.hi);
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

Interval operator*(const Rat& c, const Interval& a) {
  if (c >= 0) return {Rat(c * a.lo), Rat(c * a.hi)};
  return {Rat(c * a.hi), Rat(c * a.lo)};
}

Interval pow(const Interval& a, int e) {
  if (e < 0) throw std::domain_error("interval pow: negative exponent");
  if (e == 0) return Interval::point(Rat(1));
  Rat plo = pow_rat(a.lo, e), phi = pow_rat(a.hi, e);
  if (e % 2 == 1) return {plo, phi};
  if (a.lo >= 0) return {plo, phi};
  if (a.hi <= 0) return {phi, plo};
  return {Rat(0), std::max(plo, phi)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// -------------------------------------------------------------- polynomials

std::string var_name(const Var& v) {
  switch (v.kind) {
    case Var::Kind::Z:
      return "z" + std::to_string(v.index);
    case Var::Kind::W:
      return "w" + std::to_string(v.index);
    case Var::Kind::U:
      return "u" + std::to_string(v.index);
    case Var::Kind::Scale:
      return "s";
  }
  return "?";
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : factors) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a.factors < b.factors;
}

Polynomial::Polynomial(const Rat& c) {
  if (c != 0) terms_[Monomial{}] = c;
}

Polynomial Polynomial::variable(const Var& v) {
  Polynomial p;
  p.terms_[Monomial{{{v, 1}}}] = 1;
  return p;
}

Polynomial Polynomial::monomial(const Rat& coeff, const Monomial& m) {
  Polynomial p;
  p.add_term(m, coeff);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
}

Rat Polynomial::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = Rat(-c);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, Rat(-c));
  return out;
}

namespace {

Monomial merge_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  auto ia = a.factors.begin(), ib = b.factors.begin();
  while (ia != a.factors.end() || ib != b.factors.end()) {
    if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
      out.factors.push_back(*ia++);
    } else if (ia == a.factors.end() || ib->first < ia->first) {
      out.factors.push_back(*ib++);
    } else {
      out.factors.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(merge_monomials(ma, mb), Rat(ca * cb));
  return out;
}

Polynomial Polynomial::operator*(const Rat& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_[m] = Rat(k * c);
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::domain_error("polynomial pow: negative exponent");
  Polynomial out(Rat(1));
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::subst(const std::map<Var, Polynomial>& map) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    for (const auto& [v, e] : m.factors) {
      auto it = map.find(v);
      Polynomial base = (it != map.end()) ? it->second : Polynomial::variable(v);
      term = term * base.pow(e);
    }
    out = out + term;
  }
  return out;
}

Polynomial Polynomial::derivative(const Var& v) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (m.factors[i].first == v) {
        Monomial dm = m;
        Rat coeff(c * m.factors[i].second);
        if (dm.factors[i].second == 1)
          dm.factors.erase(dm.factors.begin() + i);
        else
          dm.factors[i].second -= 1;
        out.add_term(dm, coeff);
        break;
      }
    }
  }
  return out;
}

Rat Polynomial::eval(const std::map<Var, Rat>& point) const {
  Rat acc(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const auto& [v, e] : m.factors) {
      auto it = point.find(v);
      if (it == point.end()) throw std::invalid_argument("eval: unassigned variable " + var_name(v));
      t *= pow_rat(it->second, e);
    }
    acc += t;
  }
  return acc;
}

Interval Polynomial::eval_interval(const std::map<Var, Interval>& box) const {
  Interval acc = Interval::point(Rat(0));
  for (const auto& [m, c] : terms_) {
    Interval t = Interval::point(Rat(1));
    for (const auto& [v, e] : m.factors) {
      auto it = box.find(v);
      if (it == box.end())
        throw std::invalid_argument("eval_interval: unassigned variable " + var_name(v));
      t = t * nilbm::pow(it->second, e);
    }
    acc = acc + c * t;
  }
  return acc;
}

std::set<Var> Polynomial::vars() const {
  std::set<Var> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors) out.insert(v);
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = rat_abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (a != 1 || m.factors.empty()) {
      os << rat_str(a);
      printed = true;
    }
    for (const auto& [v, e] : m.factors) {
      if (printed) os << "*";
      os << var_name(v);
      if (e > 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

}  // namespace nilbm
