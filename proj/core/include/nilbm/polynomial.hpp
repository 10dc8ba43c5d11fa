#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nilbm/interval.hpp"
#include "nilbm/rational.hpp"

namespace nilbm {

/// Variables of the product-law polynomials. Kinds: the two factors z and w,
/// a third vector u for associativity checks, and a scale variable for the
/// dilation identity. Order z1 < ... < zd < w1 < ... < wd < u... < scale,
/// which fixes the graded-lex serialization order.
struct Var {
  enum class Kind : std::uint8_t { Z = 0, W = 1, U = 2, Scale = 3 };
  Kind kind = Kind::Z;
  int index = 0;  // 1-based coordinate; 0 for Scale

  auto operator<=>(const Var&) const = default;
};

inline Var var_z(int i) { return {Var::Kind::Z, i}; }
inline Var var_w(int i) { return {Var::Kind::W, i}; }
inline Var var_u(int i) { return {Var::Kind::U, i}; }
inline Var var_scale() { return {Var::Kind::Scale, 0}; }

std::string var_name(const Var& v);

/// Sorted (variable, exponent) pairs, exponents positive.
struct Monomial {
  std::vector<std::pair<Var, int>> factors;

  int total_degree() const;
  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic: total degree first, then lex on factor sequences.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients, kept in
/// canonical form (grlex-sorted monomials, no zero coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rat& c);

  static Polynomial variable(const Var& v);
  static Polynomial monomial(const Rat& coeff, const Monomial& m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()
  int total_degree() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rat& c) const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial pow(int e) const;

  /// Simultaneous substitution; variables absent from the map are kept.
  Polynomial subst(const std::map<Var, Polynomial>& map) const;

  Polynomial derivative(const Var& v) const;

  /// Full evaluation; every variable present must be assigned.
  Rat eval(const std::map<Var, Rat>& point) const;

  /// Interval extension, monomial-wise.
  Interval eval_interval(const std::map<Var, Interval>& box) const;

  std::set<Var> vars() const;

  const std::map<Monomial, Rat, GrlexLess>& terms() const { return terms_; }

  /// Canonical text, e.g. "1/2*z1*w2 - 1/2*z2*w1".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  std::map<Monomial, Rat, GrlexLess> terms_;
};

}  // namespace nilbm
