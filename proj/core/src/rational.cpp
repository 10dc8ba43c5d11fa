#include "nilbm/rational.hpp"

#include <cctype>
#include <sstream>

namespace nilbm {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw ParseError("bad character in rational literal: '" + text + "'");
  }
  mpq_t raw;
  mpq_init(raw);
  if (mpq_set_str(raw, text.c_str(), 10) != 0) {
    mpq_clear(raw);
    throw ParseError("unparsable rational literal: '" + text + "'");
  }
  if (mpz_sgn(mpq_denref(raw)) == 0) {
    mpq_clear(raw);
    throw ParseError("zero denominator in rational literal: '" + text + "'");
  }
  mpq_canonicalize(raw);
  Rat out(raw);
  mpq_clear(raw);
  return out;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string rat_decimal(const Rat& q, int digits) {
  if (q == 0) return "0";
  mpf_class f(q, 256);
  std::ostringstream os;
  os.precision(digits);
  os << f;
  return os.str();
}

Rat pow_rat(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  bool neg = e < 0;
  unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num().get_mpz_t(), n);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den().get_mpz_t(), n);
  out.canonicalize();
  if (neg) {
    if (out == 0) throw std::domain_error("pow_rat: negative power of zero");
    out = 1 / out;
  }
  return out;
}

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Int rat_ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

std::optional<Rat> rational_mth_root(const Rat& x, unsigned m) {
  if (m == 0) throw std::domain_error("rational_mth_root: m == 0");
  if (x < 0) return std::nullopt;
  if (x == 0) return Rat(0);
  Int rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), x.get_num().get_mpz_t(), m);
  if (!exact_n) return std::nullopt;
  int exact_d = mpz_root(rd.get_mpz_t(), x.get_den().get_mpz_t(), m);
  if (!exact_d) return std::nullopt;
  Rat out(rn, rd);
  out.canonicalize();
  return out;
}

std::pair<Rat, Rat> mth_root_bracket(const Rat& x, unsigned m, unsigned t) {
  if (x < 0) throw std::domain_error("mth_root_bracket: negative radicand");
  if (x == 0) return {Rat(0), Rat(0)};
  // floor-root of num*den^(m-1)*2^(m*t) over denominator den*2^t.
  Int scaled;
  mpz_pow_ui(scaled.get_mpz_t(), x.get_den().get_mpz_t(), m - 1);
  scaled *= x.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(m) * t);
  Int root;
  int exact = mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), m);
  Int den = x.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), t);
  Rat lo(root, den);
  lo.canonicalize();
  if (exact) return {lo, lo};
  Rat hi(root + 1, den);
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace nilbm
