#include "nilbm/product_law.hpp"

#include <algorithm>

#include "nilbm/rng.hpp"

namespace nilbm {

namespace {

using PolyVec = std::vector<Polynomial>;

PolyVec poly_vec_add(const PolyVec& a, const PolyVec& b) {
  PolyVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

PolyVec poly_vec_scale(const PolyVec& a, const Rat& c) {
  PolyVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}

bool poly_vec_zero(const PolyVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Polynomial& p) { return p.is_zero(); });
}

/// Right-nested bracket of the word X^(p1) Y^(q1) ... X^(pn) Y^(qn), where a
/// single-letter word is the letter itself.
PolyVec nested_bracket(const StructureConstants& sc, const PolyVec& X, const PolyVec& Y,
                       const std::vector<std::pair<int, int>>& blocks) {
  std::vector<const PolyVec*> letters;
  for (const auto& [p, q] : blocks) {
    for (int t = 0; t < p; ++t) letters.push_back(&X);
    for (int t = 0; t < q; ++t) letters.push_back(&Y);
  }
  PolyVec acc = *letters.back();
  for (int i = static_cast<int>(letters.size()) - 2; i >= 0; --i) {
    if (poly_vec_zero(acc)) break;
    acc = sc.bracket(*letters[i], acc);
  }
  return acc;
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Enumerates block sequences ((p1,q1),...,(pn,qn)), p_i + q_i >= 1, of total
/// weight exactly `weight`, accumulating each Dynkin term into `acc`.
void dynkin_accumulate(const StructureConstants& sc, const PolyVec& X, const PolyVec& Y, int weight,
                       PolyVec& acc) {
  struct Frame {
    std::vector<std::pair<int, int>> blocks;
    int remaining;
  };
  std::vector<Frame> stack;
  stack.push_back({{}, weight});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.remaining == 0) {
      const int n = static_cast<int>(f.blocks.size());
      long denom_fact = weight;
      for (const auto& [p, q] : f.blocks) denom_fact *= factorial(p) * factorial(q);
      Rat coeff(((n % 2) == 1) ? 1 : -1, static_cast<long>(n) * denom_fact);
      coeff.canonicalize();
      PolyVec term = nested_bracket(sc, X, Y, f.blocks);
      acc = poly_vec_add(acc, poly_vec_scale(term, coeff));
      continue;
    }
    for (int p = 0; p <= f.remaining; ++p) {
      for (int q = 0; p + q <= f.remaining; ++q) {
        if (p + q == 0) continue;
        Frame next = f;
        next.blocks.emplace_back(p, q);
        next.remaining -= p + q;
        stack.push_back(std::move(next));
      }
    }
  }
}

std::optional<int> coordinate_of(const Var& v) {
  if (v.kind == Var::Kind::Z || v.kind == Var::Kind::W) return v.index;
  return std::nullopt;
}

void check_triangular_or_throw(const std::vector<Polynomial>& polys) {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const Var& v : polys[i].vars()) {
      auto c = coordinate_of(v);
      if (!c || *c >= static_cast<int>(i) + 1)
        throw std::invalid_argument("law coordinate " + std::to_string(i + 1) +
                                    " depends on variable " + var_name(v));
    }
  }
  if (!polys.empty() && !polys[0].is_constant())
    throw std::invalid_argument("first law coordinate must be constant");
}

}  // namespace

ProductLaw derive_bch(const StructureConstants& sc) {
  const int d = sc.dim();
  CentralSeries series = lower_central_series(sc);  // throws NotNilpotentError
  PolyVec X(d), Y(d);
  for (int i = 1; i <= d; ++i) {
    X[i - 1] = Polynomial::variable(var_z(i));
    Y[i - 1] = Polynomial::variable(var_w(i));
  }
  PolyVec H(d);
  for (int weight = 1; weight <= series.step; ++weight) dynkin_accumulate(sc, X, Y, weight, H);

  ProductLaw law;
  law.dim = d;
  law.n1 = series.dims.size() > 1 ? series.dims[1] : 0;
  law.kind = ProductLaw::Kind::Group;
  law.polys.resize(d);
  for (int i = 0; i < d; ++i) law.polys[i] = H[i] - X[i] - Y[i];

  check_triangular_or_throw(law.polys);
  if (!verify_identity_at_zero(law))
    throw std::logic_error("derived law violates the identity at zero");
  return law;
}

ProductLaw make_custom_law(int dim, std::vector<Polynomial> polys) {
  if (static_cast<int>(polys.size()) != dim)
    throw std::invalid_argument("custom law needs one polynomial per coordinate");
  check_triangular_or_throw(polys);
  ProductLaw law;
  law.dim = dim;
  law.n1 = 0;
  law.kind = ProductLaw::Kind::Custom;
  law.polys = std::move(polys);
  return law;
}

TriangularReport verify_triangular(const ProductLaw& law) {
  for (int i = 0; i < law.dim; ++i) {
    for (const Var& v : law.polys[i].vars()) {
      auto c = coordinate_of(v);
      if (!c || *c >= i + 1) return {false, i + 1, var_name(v)};
    }
  }
  return {};
}

FirstLayerReport verify_first_layer(const ProductLaw& law, int n1) {
  for (int i = 0; i < law.dim - n1; ++i)
    if (!law.polys[i].is_zero()) return {false, i + 1};
  return {};
}

RatVec eval(const ProductLaw& law, const RatVec& z, const RatVec& w) {
  if (static_cast<int>(z.size()) != law.dim || static_cast<int>(w.size()) != law.dim)
    throw DimensionMismatchError("eval: vector dimension does not match the law");
  std::map<Var, Rat> point;
  for (int i = 0; i < law.dim; ++i) {
    point[var_z(i + 1)] = z[i];
    point[var_w(i + 1)] = w[i];
  }
  RatVec out(law.dim);
  for (int i = 0; i < law.dim; ++i) out[i] = Rat(z[i] + w[i] + law.polys[i].eval(point));
  return out;
}

IntervalBox eval_interval(const ProductLaw& law, const IntervalBox& Z, const IntervalBox& W) {
  if (static_cast<int>(Z.size()) != law.dim || static_cast<int>(W.size()) != law.dim)
    throw DimensionMismatchError("eval_interval: box dimension does not match the law");
  std::map<Var, Interval> box;
  for (int i = 0; i < law.dim; ++i) {
    box[var_z(i + 1)] = Z[i];
    box[var_w(i + 1)] = W[i];
  }
  IntervalBox out(law.dim);
  for (int i = 0; i < law.dim; ++i)
    out[i] = Z[i] + W[i] + law.polys[i].eval_interval(box);
  return out;
}

namespace {

/// Coordinates of (z*w) as polynomials in the z/w variables.
std::vector<Polynomial> law_coordinates(const ProductLaw& law) {
  std::vector<Polynomial> out(law.dim);
  for (int i = 0; i < law.dim; ++i)
    out[i] = Polynomial::variable(var_z(i + 1)) + Polynomial::variable(var_w(i + 1)) +
             law.polys[i];
  return out;
}

}  // namespace

AssociativityReport verify_associativity(const ProductLaw& law, long samples, std::uint64_t seed) {
  AssociativityReport rep;
  int max_deg = 1;
  for (const Polynomial& p : law.polys) max_deg = std::max(max_deg, p.total_degree());
  // Composition multiplies degrees; expand symbolically only while small.
  if (max_deg * max_deg <= 6) {
    rep.symbolic = true;
    std::vector<Polynomial> s = law_coordinates(law);  // z*w
    std::map<Var, Polynomial> into_zw, w_to_u, z_to_w;
    for (int i = 1; i <= law.dim; ++i) {
      into_zw[var_z(i)] = s[i - 1];
      into_zw[var_w(i)] = Polynomial::variable(var_u(i));
      z_to_w[var_z(i)] = Polynomial::variable(var_w(i));
      w_to_u[var_w(i)] = Polynomial::variable(var_u(i));
    }
    std::vector<Polynomial> coords = law_coordinates(law);
    std::vector<Polynomial> v(law.dim);  // w*u
    for (int i = 0; i < law.dim; ++i) {
      std::map<Var, Polynomial> m;
      for (int k = 1; k <= law.dim; ++k) {
        m[var_z(k)] = Polynomial::variable(var_w(k));
        m[var_w(k)] = Polynomial::variable(var_u(k));
      }
      v[i] = coords[i].subst(m);
    }
    for (int i = 0; i < law.dim; ++i) {
      Polynomial left = coords[i].subst(into_zw);  // (z*w)*u
      std::map<Var, Polynomial> m;
      for (int k = 1; k <= law.dim; ++k) {
        m[var_z(k)] = Polynomial::variable(var_z(k));
        m[var_w(k)] = v[k - 1];
      }
      Polynomial right = coords[i].subst(m);  // z*(w*u)
      Polynomial diff = left - right;
      if (!diff.is_zero()) {
        rep.pass = false;
        rep.counterexample = "coordinate " + std::to_string(i + 1) + ": " + diff.str();
        return rep;
      }
    }
    return rep;
  }

  Rng rng(seed);
  for (long t = 0; t < samples; ++t) {
    RatVec z(law.dim), w(law.dim), u(law.dim);
    for (int i = 0; i < law.dim; ++i) {
      z[i] = rng.rat_on_grid(-2, 2, 8);
      w[i] = rng.rat_on_grid(-2, 2, 8);
      u[i] = rng.rat_on_grid(-2, 2, 8);
    }
    RatVec left = eval(law, eval(law, z, w), u);
    RatVec right = eval(law, z, eval(law, w, u));
    if (left != right) {
      rep.pass = false;
      rep.samples_checked = t + 1;
      std::string cx = "z=(";
      for (int i = 0; i < law.dim; ++i) cx += rat_str(z[i]) + (i + 1 < law.dim ? "," : ")");
      rep.counterexample = cx;
      return rep;
    }
  }
  rep.samples_checked = samples;
  return rep;
}

bool verify_identity_at_zero(const ProductLaw& law) {
  std::map<Var, Polynomial> z_zero, w_zero;
  for (int i = 1; i <= law.dim; ++i) {
    z_zero[var_z(i)] = Polynomial(Rat(0));
    w_zero[var_w(i)] = Polynomial(Rat(0));
  }
  for (const Polynomial& p : law.polys) {
    if (!p.subst(z_zero).is_zero()) return false;
    if (!p.subst(w_zero).is_zero()) return false;
  }
  return true;
}

DilationSpec dilation_spec(const Stratification& s) { return {s.weights, s.Q}; }

RatVec dilate(const DilationSpec& spec, const Rat& lambda, const RatVec& x) {
  if (lambda <= 0) throw NonpositiveLambdaError("dilation factor must be positive");
  RatVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Rat(x[i] * pow_rat(lambda, spec.weights[i]));
  return out;
}

DilationAutomorphismReport verify_dilation_automorphism(const ProductLaw& law,
                                                        const DilationSpec& spec) {
  Polynomial lam = Polynomial::variable(var_scale());
  std::map<Var, Polynomial> scaled;
  for (int i = 1; i <= law.dim; ++i) {
    scaled[var_z(i)] = lam.pow(spec.weights[i - 1]) * Polynomial::variable(var_z(i));
    scaled[var_w(i)] = lam.pow(spec.weights[i - 1]) * Polynomial::variable(var_w(i));
  }
  for (int i = 0; i < law.dim; ++i) {
    // delta(z*w)_i = scale^{w_i} (z_i + w_i + P_i); the linear parts match
    // automatically, so the identity reduces to P_i(delta z, delta w) =
    // scale^{w_i} P_i(z, w).
    Polynomial lhs = law.polys[i].subst(scaled);
    Polynomial rhs = lam.pow(spec.weights[i]) * law.polys[i];
    Polynomial diff = lhs - rhs;
    if (!diff.is_zero())
      return {false, i + 1, diff.str()};
  }
  return {};
}

Rat translation_jacobian(const ProductLaw& law, const RatVec& z) {
  if (static_cast<int>(z.size()) != law.dim)
    throw DimensionMismatchError("translation_jacobian: bad point dimension");
  // d(z*w)_i/dw_j = delta_ij + dP_i/dw_j; the second term vanishes
  // symbolically for j >= i, so the matrix is unit lower-triangular and the
  // determinant is the product of the diagonal.
  for (int i = 0; i < law.dim; ++i)
    for (int j = i; j < law.dim; ++j)
      if (!law.polys[i].derivative(var_w(j + 1)).is_zero())
        throw std::logic_error("translation Jacobian is not unit triangular");
  return Rat(1);
}

ProductLaw freeze_first_coordinate(const ProductLaw& law, const Rat& z1, const Rat& w1) {
  if (law.dim < 2) throw std::invalid_argument("freeze_first_coordinate: dimension must be >= 2");
  std::map<Var, Polynomial> m;
  m[var_z(1)] = Polynomial(z1);
  m[var_w(1)] = Polynomial(w1);
  for (int i = 2; i <= law.dim; ++i) {
    m[var_z(i)] = Polynomial::variable(var_z(i - 1));
    m[var_w(i)] = Polynomial::variable(var_w(i - 1));
  }
  std::vector<Polynomial> polys(law.dim - 1);
  for (int i = 1; i < law.dim; ++i) polys[i - 1] = law.polys[i].subst(m);
  return make_custom_law(law.dim - 1, std::move(polys));
}

}  // namespace nilbm
