#include "heightlab/algebra.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "heightlab/errors.hpp"

namespace heightlab {

// ---------------------------------------------------------------- BiForm

BiForm::BiForm(int degree, std::vector<Poly> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree_ < 1) throw DomainError("binary form degree must be at least 1");
  if (coeffs_.size() != static_cast<std::size_t>(degree_) + 1) {
    throw DomainError("binary form of degree " + std::to_string(degree_) + " needs " +
                      std::to_string(degree_ + 1) + " coefficients");
  }
  bool any = false;
  for (const auto& c : coeffs_) any = any || !c.is_zero();
  if (!any) throw DomainError("binary form is identically zero");
}

int BiForm::coeff_degree() const {
  int e = 0;
  for (const auto& c : coeffs_) e = std::max(e, c.degree());
  return e;
}

std::vector<Poly> powers(const Poly& p, int d) {
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(d) + 1);
  out.emplace_back(1);
  for (int k = 1; k <= d; ++k) out.push_back(out.back() * p);
  return out;
}

Poly BiForm::eval(const std::vector<Poly>& pow1, const std::vector<Poly>& pow2) const {
  Poly acc;
  for (int j = 0; j <= degree_; ++j) {
    const Poly& c = coeff(j);
    if (c.is_zero()) continue;
    const Poly& x = pow1[static_cast<std::size_t>(degree_ - j)];
    const Poly& y = pow2[static_cast<std::size_t>(j)];
    if (x.is_zero() || y.is_zero()) continue;
    acc += c * (x * y);
  }
  return acc;
}

Poly BiForm::eval(const Poly& a1, const Poly& a2) const {
  return eval(powers(a1, degree_), powers(a2, degree_));
}

// ------------------------------------------------------------- division

namespace {

// Integer pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, content removed.
zpoly::Coeffs prem_primitive(zpoly::Coeffs a, const zpoly::Coeffs& b) {
  const std::size_t db = b.size() - 1;
  const mpz_class& lc = b.back();
  while (a.size() >= b.size()) {
    mpz_class top = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lc;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(a[shift + j].get_mpz_t(), top.get_mpz_t(), b[j].get_mpz_t());
    }
    zpoly::trim(a);
  }
  mpz_class g = zpoly::content(a);
  if (g > 1) {
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return a;
}

}  // namespace

DivMod divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.degree() < b.degree()) return {Poly(), a};
  auto r = a.coeffs();
  auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  Rational inv_lc = Rational(1) / bc.back();
  std::vector<Rational> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = r[k + db] * inv_lc;
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= c * bc[j];
  }
  r.resize(db);
  return {Poly::from_coeffs(q), Poly::from_coeffs(r)};
}

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return a;
  if (a.degree() < b.degree()) throw InternalError("exact division with remainder", a.to_string());
  Poly bp = b.primitive();
  const auto& B = bp.numerators();
  const mpz_class& lc = B.back();
  zpoly::Coeffs r = a.numerators();
  const std::size_t db = B.size() - 1;
  zpoly::Coeffs q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    mpz_class& top = r[k + db];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) {
      throw InternalError("exact division left a remainder", b.to_string());
    }
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), B[j].get_mpz_t());
  }
  for (const auto& c : r) {
    if (sgn(c) != 0) throw InternalError("exact division left a remainder", b.to_string());
  }
  // b = beta * bp, so a / b = (q / den_a) / beta.
  Rational beta = b.leading() / Rational(lc);
  Poly out = Poly::from_integers(std::move(q), a.denominator());
  out *= Rational(1) / beta;
  return out;
}

Poly poly_gcd(const Poly& p, const Poly& q) {
  if (p.is_zero() && q.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.is_constant() || q.is_constant()) return Poly(1);
  zpoly::Coeffs a = p.primitive().numerators();
  zpoly::Coeffs b = q.primitive().numerators();
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    zpoly::Coeffs r = prem_primitive(a, b);
    a = std::move(b);
    b = std::move(r);
    if (a.size() == 1) return Poly(1);
  }
  return Poly::from_integers(std::move(a)).monic();
}

Poly scaled_remainder(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (b.is_constant()) return Poly();
  if (a.degree() < b.degree()) return a.primitive();
  const auto B = b.primitive().numerators();
  const auto& A = a.numerators();
  const std::size_t db = B.size() - 1;
  const mpz_class& lc = B.back();
  // Horner from the top: R holds lc^k * (high part of A) mod B.
  zpoly::Coeffs R(db);
  mpz_class scale = 1;
  mpz_class top;
  for (std::size_t i = A.size(); i-- > 0;) {
    // S = R * t + scale * A_i, degree <= db.
    top = R[db - 1];
    for (std::size_t j = db - 1; j > 0; --j) R[j] = R[j - 1];
    R[0] = scale * A[i];
    if (sgn(top) == 0) continue;
    // R' = lc * S - top * B (leading terms cancel).
    if (lc != 1) {
      for (auto& c : R) c *= lc;
      scale *= lc;
    }
    for (std::size_t j = 0; j < db; ++j) mpz_submul(R[j].get_mpz_t(), top.get_mpz_t(), B[j].get_mpz_t());
  }
  return Poly::from_integers(std::move(R)).primitive();
}

Poly gcd_within(const Poly& x, const Poly& y, const Poly& divisor) {
  if (x.is_zero() && y.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (divisor.is_zero()) return poly_gcd(x, y);
  if (divisor.is_constant()) return Poly(1);
  Poly g = divisor.monic();
  for (const Poly* v : {&x, &y}) {
    if (v->is_zero()) continue;
    Poly r = scaled_remainder(*v, g);
    if (!r.is_zero()) g = poly_gcd(g, r);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

std::size_t ord_at(const Poly& p, const Rational& c) {
  if (p.is_zero()) throw DomainError("order of vanishing of the zero polynomial");
  if (sgn(c) == 0) return p.trailing_zeros();
  // Divide by the primitive linear factor (den*t - num) while it divides.
  Poly linear = Poly::from_integers({-c.get_num(), c.get_den()});
  std::size_t k = 0;
  Poly cur = p;
  while (cur.degree() >= 1 && sgn(cur(c)) == 0) {
    cur = exact_div(cur, linear);
    ++k;
  }
  return k;
}

std::vector<SquarefreeFactor> squarefree_factorization(const Poly& p) {
  if (p.is_zero()) throw DomainError("squarefree factorization of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (p.is_constant()) return out;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a0 = poly_gcd(f, fp);
  Poly b = exact_div(f, a0);
  Poly c = exact_div(fp, a0);
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Poly a = d.is_zero() ? b.monic() : poly_gcd(b, d);
    if (a.degree() >= 1) out.push_back({a, i});
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// ------------------------------------------------- modular squarefree test

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) { return powmod(a, m - 2, m); }

void trim_mod(std::vector<u64>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 m) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    u64 inv = invmod(b.back(), m);
    while (a.size() >= b.size()) {
      u64 f = mulmod(a.back(), inv, m);
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        u64 s = mulmod(f, b[j], m);
        a[shift + j] = (a[shift + j] + m - s) % m;
      }
      trim_mod(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

}  // namespace

bool certify_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  if (p.degree() <= 1) return true;
  const auto prim = p.primitive().numerators();
  for (u64 m : {2305843009213693951ULL, 4611686018427387847ULL, 1000000007ULL}) {
    if (mpz_fdiv_ui(prim.back().get_mpz_t(), m) == 0) continue;
    std::vector<u64> f(prim.size());
    for (std::size_t i = 0; i < prim.size(); ++i) {
      f[i] = mpz_fdiv_ui(prim[i].get_mpz_t(), m);
    }
    std::vector<u64> df(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) df[i - 1] = mulmod(f[i], i % m, m);
    if (gcd_degree_mod(f, df, m) == 0) return true;
  }
  return false;
}

// ------------------------------------------------------------- resultant

Poly determinant(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  for (const auto& row : m) {
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  }
  bool negate = false;
  Poly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < n && m[i][k].is_zero()) ++i;
      if (i == n) return Poly();
      std::swap(m[i], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(v, prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Poly resultant_forms(const BiForm& p, const BiForm& q) {
  if (p.degree() != q.degree()) {
    throw DomainError("resultant of forms of degrees " + std::to_string(p.degree()) + " and " +
                      std::to_string(q.degree()));
  }
  const auto d = static_cast<std::size_t>(p.degree());
  std::vector<std::vector<Poly>> sylvester(2 * d, std::vector<Poly>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) {
      sylvester[i][i + j] = p.coeffs()[j];
      sylvester[d + i][i + j] = q.coeffs()[j];
    }
  }
  return determinant(std::move(sylvester));
}

std::optional<Rational> rationalize_root(const Poly& p, std::complex<double> z) {
  if (p.is_zero()) return std::nullopt;
  double x = z.real();
  if (!std::isfinite(x) || std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) return std::nullopt;
  // Continued-fraction convergents of x with denominators up to 1e9.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 40; ++iter) {
    Rational cand(h, k);
    cand.canonicalize();
    if (std::abs(cand.get_d() - x) <= 1e-7 * (1.0 + std::abs(x)) && sgn(p(cand)) == 0) return cand;
    if (frac < 1e-12 || k > 1000000000) break;
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

}  // namespace heightlab
