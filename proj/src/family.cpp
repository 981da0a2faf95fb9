#include "heightlab/family.hpp"

#include "heightlab/algebra.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/roots.hpp"

namespace heightlab {

namespace {

/// Divide out the joint content and fix the scalar.
void normalize_coefficients(std::vector<Poly>& all) {
  Poly g;
  for (const Poly& c : all) {
    if (!c.is_zero()) g = g.is_zero() ? c.monic() : poly_gcd(g, c);
  }
  if (g.degree() > 0) {
    for (Poly& c : all) c = exact_div(c, g);
  }
  // Common denominator and integer content.
  Integer lcm = 1;
  for (const Poly& c : all) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  Integer content = 0;
  for (const Poly& c : all) {
    Integer part = zpoly::content(c.numerators()) * (lcm / c.denominator());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), part.get_mpz_t());
  }
  Rational scale(lcm, content);
  scale.canonicalize();
  for (const Poly& c : all) {
    if (!c.is_zero()) {
      if (c.leading() < 0) scale = -scale;
      break;
    }
  }
  for (Poly& c : all) c *= scale;
}

std::string term(const Poly& c, int k) {
  std::string zs = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
  if (c.is_constant()) {
    Rational v = c.coeff(0);
    if (k == 0) return c.to_string();
    if (v == 1) return zs;
    if (v == -1) return "-" + zs;
    return c.to_string() + "*" + zs;
  }
  return "(" + c.to_string() + ")" + (k == 0 ? "" : "*" + zs);
}

/// Dehomogenized form sum_j coeffs[j] z^(d-j), highest power first.
std::string chart_string(const BiForm& f) {
  std::string out;
  const int d = f.degree();
  for (int j = 0; j <= d; ++j) {
    const Poly& c = f.coeff(j);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += term(c, d - j);
  }
  return out.empty() ? "0" : out;
}

int flipped_q(const BiForm& p, const BiForm& q, int e) {
  auto rev = [e](const BiForm& f) {
    std::vector<Poly> c;
    for (const Poly& x : f.coeffs()) c.push_back(x.is_zero() ? x : x.reversed(static_cast<std::size_t>(e)));
    return BiForm(f.degree(), std::move(c));
  };
  Poly r = resultant_forms(rev(p), rev(q));
  return static_cast<int>(r.trailing_zeros());
}

}  // namespace

RationalMapFamily RationalMapFamily::make(const BiForm& p, const BiForm& q) {
  if (p.degree() != q.degree()) throw DomainError("P and Q have different degrees");
  const int d = p.degree();
  if (d < 2) throw DomainError("family degree must be at least 2");
  std::vector<Poly> all = p.coeffs();
  all.insert(all.end(), q.coeffs().begin(), q.coeffs().end());
  normalize_coefficients(all);
  const auto split = all.begin() + d + 1;
  RationalMapFamily f;
  f.p_ = BiForm(d, std::vector<Poly>(all.begin(), split));
  f.q_ = BiForm(d, std::vector<Poly>(split, all.end()));
  f.res_ = resultant_forms(f.p_, f.q_);
  if (f.res_.is_zero()) throw DomainError("degenerate family: P and Q share a factor identically");
  f.coeff_degree_ = std::max(f.p_.coeff_degree(), f.q_.coeff_degree());
  f.q_inf_ = f.coeff_degree_ == 0 ? 0 : flipped_q(f.p_, f.q_, f.coeff_degree_);
  return f;
}

std::string RationalMapFamily::to_string() const {
  std::string num = chart_string(p_);
  std::string den = chart_string(q_);
  if (den == "1") return num;
  return "(" + num + ")/(" + den + ")";
}

ApplyResult apply(const RationalMapFamily& f, const ProjPointK& a) {
  const int d = f.degree();
  const auto pow1 = powers(a.a1(), d);
  const auto pow2 = powers(a.a2(), d);
  Poly x = f.P().eval(pow1, pow2);
  Poly y = f.Q().eval(pow1, pow2);
  if (x.is_zero() && y.is_zero()) {
    throw InternalError("image of a point is (0, 0)", a.to_string());
  }
  Poly g = gcd_within(x, y, f.resultant());
  if (g.degree() > 0) {
    x = exact_div(x, g);
    y = exact_div(y, g);
  }
  return {ProjPointK::from_coprime(std::move(x), std::move(y)), std::move(g)};
}

RationalMapFamily shift(const RationalMapFamily& f, const Rational& t0) {
  auto move = [&t0](const BiForm& b) {
    std::vector<Poly> c;
    for (const Poly& x : b.coeffs()) c.push_back(x.taylor_shift(t0));
    return BiForm(b.degree(), std::move(c));
  };
  return RationalMapFamily::make(move(f.P()), move(f.Q()));
}

RationalMapFamily flip(const RationalMapFamily& f) {
  const auto e = static_cast<std::size_t>(f.coeff_degree());
  auto rev = [e](const BiForm& b) {
    std::vector<Poly> c;
    for (const Poly& x : b.coeffs()) c.push_back(x.is_zero() ? x : x.reversed(e));
    return BiForm(b.degree(), std::move(c));
  };
  return RationalMapFamily::make(rev(f.P()), rev(f.Q()));
}

PlaceReport degenerate_places(const RationalMapFamily& f) {
  PlaceReport rep;
  rep.q_infinity = f.q_infinity();
  rep.d_total = f.d_total();
  if (f.resultant().degree() < 1) return rep;
  for (const auto& [factor, mult] : squarefree_factorization(f.resultant())) {
    if (factor.degree() == 1) {
      Rational r = -factor.coeff(0) / factor.coeff(1);
      rep.finite_places.push_back({cd(r.get_d(), 0.0), r, mult});
      continue;
    }
    RootList roots = complex_roots(factor);
    for (const Root& r : roots.roots) {
      rep.finite_places.push_back({r.value, rationalize_root(factor, r.value), mult});
    }
  }
  return rep;
}

}  // namespace heightlab
