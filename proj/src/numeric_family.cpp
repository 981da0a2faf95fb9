#include "heightlab/numeric_family.hpp"

#include <cmath>

namespace heightlab {

cd horner(const std::vector<double>& c, cd z) {
  cd acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

namespace {

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  return d;
}

cd horner_derivative(const std::vector<double>& c, cd z) {
  cd acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * static_cast<double>(i);
  return acc;
}

}  // namespace

NumericFamily::NumericFamily(const RationalMapFamily& f) : d_(f.degree()) {
  for (const auto& c : f.P().coeffs()) p_.push_back(c.to_doubles());
  for (const auto& c : f.Q().coeffs()) q_.push_back(c.to_doubles());
  res_ = f.resultant().to_doubles();
}

void NumericFamily::specialize(cd t, Specialized& out) const {
  const auto n = static_cast<std::size_t>(d_) + 1;
  out.p.resize(n);
  out.q.resize(n);
  out.dp.resize(n);
  out.dq.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.p[j] = horner(p_[j], t);
    out.q[j] = horner(q_[j], t);
    out.dp[j] = horner_derivative(p_[j], t);
    out.dq[j] = horner_derivative(q_[j], t);
  }
}

void NumericFamily::apply(const Specialized& s, cd z1, cd z2, cd& w1, cd& w2) {
  // Homogeneous Horner: sum_j c_j z1^(d-j) z2^j.
  const std::size_t n = s.p.size();
  cd acc_p = s.p[0];
  cd acc_q = s.q[0];
  cd y = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    y *= z2;
    acc_p = acc_p * z1 + s.p[j] * y;
    acc_q = acc_q * z1 + s.q[j] * y;
  }
  w1 = acc_p;
  w2 = acc_q;
}

void NumericFamily::apply_with_tangent(const Specialized& s, cd z1, cd z2, cd dz1, cd dz2, cd& w1,
                                       cd& w2, cd& dw1, cd& dw2) {
  const std::size_t n = s.p.size();
  const int d = static_cast<int>(n) - 1;
  // Powers of both coordinates.
  cd px[16], py[16];
  std::vector<cd> heap_x, heap_y;
  cd* xs = px;
  cd* ys = py;
  if (n > 16) {
    heap_x.resize(n);
    heap_y.resize(n);
    xs = heap_x.data();
    ys = heap_y.data();
  }
  xs[0] = ys[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    xs[k] = xs[k - 1] * z1;
    ys[k] = ys[k - 1] * z2;
  }
  cd vp = 0.0, vq = 0.0, tp = 0.0, tq = 0.0, xp = 0.0, xq = 0.0, yp = 0.0, yq = 0.0;
  for (int j = 0; j <= d; ++j) {
    const auto a = static_cast<std::size_t>(d - j);
    const auto b = static_cast<std::size_t>(j);
    cd mono = xs[a] * ys[b];
    vp += s.p[b] * mono;
    vq += s.q[b] * mono;
    tp += s.dp[b] * mono;
    tq += s.dq[b] * mono;
    if (a > 0) {
      cd m = static_cast<double>(a) * xs[a - 1] * ys[b];
      xp += s.p[b] * m;
      xq += s.q[b] * m;
    }
    if (b > 0) {
      cd m = static_cast<double>(b) * xs[a] * ys[b - 1];
      yp += s.p[b] * m;
      yq += s.q[b] * m;
    }
  }
  w1 = vp;
  w2 = vq;
  dw1 = tp + xp * dz1 + yp * dz2;
  dw2 = tq + xq * dz1 + yq * dz2;
}

cd NumericFamily::resultant(cd t) const { return horner(res_, t); }

NumericPoint::NumericPoint(const ProjPointK& a) : NumericPoint(a.a1(), a.a2()) {}

NumericPoint::NumericPoint(const Poly& a1, const Poly& a2)
    : a1_(a1.to_doubles()), a2_(a2.to_doubles()) {
  da1_ = derivative_coeffs(a1_);
  da2_ = derivative_coeffs(a2_);
}

void NumericPoint::eval(cd t, cd& z1, cd& z2) const {
  z1 = horner(a1_, t);
  z2 = horner(a2_, t);
}

void NumericPoint::eval_with_derivative(cd t, cd& z1, cd& z2, cd& dz1, cd& dz2) const {
  eval(t, z1, z2);
  dz1 = horner(da1_, t);
  dz2 = horner(da2_, t);
}

double chordal_distance(cd z1, cd z2, cd w1, cd w2) {
  double num = std::abs(z1 * w2 - z2 * w1);
  double den = std::sqrt((std::norm(z1) + std::norm(z2)) * (std::norm(w1) + std::norm(w2)));
  return num / den;
}

}  // namespace heightlab
