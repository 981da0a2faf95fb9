#include "heightlab/zpoly.hpp"

#include <algorithm>
#include <bit>

namespace heightlab::zpoly {

namespace {

constexpr std::size_t kKroneckerThreshold = 24;

// Signed sum of a[i] * 2^(slot*i) over [lo, hi).
mpz_class pack(std::span<const mpz_class> a, std::size_t lo, std::size_t hi,
               mp_bitcnt_t slot) {
  if (hi - lo <= 8) {
    mpz_class x = a[hi - 1];
    for (std::size_t i = hi - 1; i-- > lo;) {
      x <<= slot;
      x += a[i];
    }
    return x;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  mpz_class high = pack(a, mid, hi, slot);
  high <<= slot * (mid - lo);
  high += pack(a, lo, mid, slot);
  return high;
}

// Inverse of pack for `count` slots whose values satisfy |c| < 2^(slot-2).
void unpack(mpz_class value, Coeffs& out, std::size_t lo, std::size_t count,
            mp_bitcnt_t slot) {
  if (count == 1) {
    out[lo] = std::move(value);
    return;
  }
  std::size_t m = count / 2;
  mp_bitcnt_t split = slot * m;
  mpz_class low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), value.get_mpz_t(), split);
  if (mpz_tstbit(low.get_mpz_t(), split - 1)) {
    mpz_class wrap;
    mpz_setbit(wrap.get_mpz_t(), split);
    low -= wrap;
  }
  value -= low;
  mpz_tdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), split);
  unpack(std::move(low), out, lo, m, slot);
  unpack(std::move(value), out, lo + m, count - m, slot);
}

}  // namespace

void trim(Coeffs& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

std::size_t max_bits(std::span<const mpz_class> a) {
  std::size_t bits = 0;
  for (const auto& c : a) {
    if (sgn(c) != 0) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  }
  return bits;
}

mpz_class content(std::span<const mpz_class> a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Coeffs mul_schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(r);
  return r;
}

Coeffs mul_kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (a.empty() || b.empty()) return {};
  std::size_t ba = max_bits(a);
  std::size_t bb = max_bits(b);
  if (ba == 0 || bb == 0) return {};
  std::size_t shortest = std::min(a.size(), b.size());
  auto slot = static_cast<mp_bitcnt_t>(ba + bb + std::bit_width(shortest) + 2);

  mpz_class pa = pack(a, 0, a.size(), slot);
  mpz_class pb = pack(b, 0, b.size(), slot);
  mpz_class prod = pa * pb;

  Coeffs r(a.size() + b.size() - 1);
  unpack(std::move(prod), r, 0, r.size(), slot);
  trim(r);
  return r;
}

Coeffs mul(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) return mul_schoolbook(a, b);
  return mul_kronecker(a, b);
}

Coeffs mul_truncated(std::span<const mpz_class> a, std::span<const mpz_class> b,
                     std::size_t len) {
  auto ta = a.first(std::min(a.size(), len));
  auto tb = b.first(std::min(b.size(), len));
  if (std::min(ta.size(), tb.size()) >= kKroneckerThreshold) {
    Coeffs r = mul_kronecker(ta, tb);
    if (r.size() > len) r.resize(len);
    trim(r);
    return r;
  }
  if (ta.empty() || tb.empty()) return {};
  Coeffs r(std::min(len, ta.size() + tb.size() - 1));
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (sgn(ta[i]) == 0) continue;
    for (std::size_t j = 0; j < tb.size() && i + j < len; ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), ta[i].get_mpz_t(), tb[j].get_mpz_t());
    }
  }
  trim(r);
  return r;
}

}  // namespace heightlab::zpoly
