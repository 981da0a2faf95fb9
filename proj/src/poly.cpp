#include "heightlab/poly.hpp"

#include <algorithm>
#include <sstream>

#include "heightlab/errors.hpp"

namespace heightlab {

Poly::Poly(long c) {
  if (c != 0) num_.emplace_back(c);
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) {
    num_.push_back(c.get_num());
    den_ = c.get_den();
  }
}

Poly::Poly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) num_.emplace_back(c);
  canonicalize();
}

Poly Poly::from_coeffs(std::span<const Rational> coeffs) {
  Integer den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  Poly p;
  p.num_.reserve(coeffs.size());
  for (const auto& c : coeffs) p.num_.push_back(c.get_num() * (den / c.get_den()));
  p.den_ = den;
  p.canonicalize();
  return p;
}

Poly Poly::from_integers(zpoly::Coeffs numerators, Integer denominator) {
  if (sgn(denominator) == 0) throw DomainError("polynomial with zero denominator");
  Poly p;
  p.num_ = std::move(numerators);
  p.den_ = std::move(denominator);
  p.canonicalize();
  return p;
}

Poly Poly::monomial(const Rational& c, std::size_t k) {
  Poly p;
  if (sgn(c) == 0) return p;
  p.num_.resize(k + 1);
  p.num_[k] = c.get_num();
  p.den_ = c.get_den();
  return p;
}

void Poly::canonicalize() {
  zpoly::trim(num_);
  if (num_.empty()) {
    den_ = 1;
    return;
  }
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rational Poly::coeff(std::size_t i) const {
  if (i >= num_.size()) return 0;
  Rational r(num_[i], den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> Poly::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

Rational Poly::leading() const { return is_zero() ? Rational(0) : coeff(num_.size() - 1); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size());
    for (std::size_t i = 0; i < o.num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
    Integer sa = l / den_;
    Integer sb = l / o.den_;
    if (num_.size() < o.num_.size()) num_.resize(o.num_.size());
    for (auto& c : num_) c *= sa;
    for (std::size_t i = 0; i < o.num_.size(); ++i) {
      mpz_addmul(num_[i].get_mpz_t(), o.num_[i].get_mpz_t(), sb.get_mpz_t());
    }
    den_ = l;
  }
  canonicalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.num_ = zpoly::mul(a.num_, b.num_);
  r.den_ = a.den_ * b.den_;
  r.canonicalize();
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    num_.clear();
    den_ = 1;
    return *this;
  }
  for (auto& x : num_) x *= c.get_num();
  den_ *= c.get_den();
  canonicalize();
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::derivative() const {
  if (num_.size() <= 1) return {};
  zpoly::Coeffs d(num_.size() - 1);
  for (std::size_t i = 1; i < num_.size(); ++i) d[i - 1] = num_[i] * static_cast<unsigned long>(i);
  return from_integers(std::move(d), den_);
}

Rational Poly::operator()(const Rational& x) const {
  // Homogenized Horner over Z: sum num_i p^i q^(n-i).
  if (is_zero()) return 0;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer acc = num_.back();
  Integer qpow = 1;
  for (std::size_t i = num_.size() - 1; i-- > 0;) {
    qpow *= q;
    acc *= p;
    acc += num_[i] * qpow;
  }
  Rational r(acc, den_ * qpow);
  r.canonicalize();
  return r;
}

std::vector<double> Poly::to_doubles() const {
  std::vector<double> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i).get_d());
  return out;
}

std::complex<double> Poly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  auto c = to_doubles();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational lc = leading();
  Poly r = *this;
  r *= Rational(1) / lc;
  return r;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  Poly r;
  r.num_ = num_;
  Integer g = zpoly::content(r.num_);
  if (sgn(r.num_.back()) < 0) g = -g;
  for (auto& c : r.num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

Poly Poly::taylor_shift(const Rational& t0) const {
  if (sgn(t0) == 0 || num_.size() <= 1) return *this;
  // Horner: acc = acc * (t + t0) + c_i over the rationals.
  std::vector<Rational> acc;
  auto c = coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    std::vector<Rational> next(acc.size() + 1);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += acc[j];
      next[j] += acc[j] * t0;
    }
    next[0] += c[i];
    acc = std::move(next);
  }
  return from_coeffs(acc);
}

Poly Poly::reversed(std::size_t n) const {
  if (is_zero()) return *this;
  if (static_cast<std::size_t>(degree()) > n) throw DomainError("reversal length below degree");
  zpoly::Coeffs r(n + 1);
  for (std::size_t i = 0; i < num_.size(); ++i) r[n - i] = num_[i];
  return from_integers(std::move(r), den_);
}

Poly Poly::truncated(std::size_t len) const {
  if (num_.size() <= len) return *this;
  zpoly::Coeffs r(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(len));
  return from_integers(std::move(r), den_);
}

Poly Poly::divided_by_t_power(std::size_t k) const {
  if (k == 0 || is_zero()) return *this;
  if (trailing_zeros() < k) throw InternalError("division by t^k is not exact");
  zpoly::Coeffs r(num_.begin() + static_cast<std::ptrdiff_t>(k), num_.end());
  Poly p;
  p.num_ = std::move(r);
  p.den_ = den_;
  return p;
}

std::size_t Poly::trailing_zeros() const {
  std::size_t k = 0;
  while (k < num_.size() && sgn(num_[k]) == 0) ++k;
  return k == num_.size() ? 0 : k;
}

std::size_t Poly::hash() const {
  constexpr unsigned long kMod = 4294967291UL;
  std::size_t h = num_.size() * 0x9E3779B97F4A7C15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
  mix(mpz_fdiv_ui(den_.get_mpz_t(), kMod));
  for (const auto& c : num_) {
    mix(mpz_fdiv_ui(c.get_mpz_t(), kMod));
    mix(static_cast<std::size_t>(sgn(c) + 1));
  }
  return h;
}

std::size_t Poly::bit_size() const {
  std::size_t bits = mpz_sizeinbase(den_.get_mpz_t(), 2);
  for (const auto& c : num_) bits += mpz_sizeinbase(c.get_mpz_t(), 2);
  return bits;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = num_.size(); i-- > 0;) {
    Rational c = coeff(i);
    if (sgn(c) == 0) continue;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace heightlab
