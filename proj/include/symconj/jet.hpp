#pragma once

// Truncated Taylor jets: value and derivatives up to a fixed order, carried
// through arithmetic exactly. Eigenfunction recurrences evaluated on jets
// give analytic derivatives without finite differencing.

#include <array>
#include <cmath>
#include <cstddef>

namespace symconj {

template <int Order>
struct Jet {
  static_assert(Order >= 0 && Order <= 3, "jets are implemented up to order 3");
  static constexpr int order = Order;

  // d[k] is the k-th derivative with respect to the base variable.
  std::array<double, Order + 1> d{};

  constexpr Jet() = default;
  constexpr explicit Jet(double value) { d[0] = value; }

  static constexpr Jet constant(double c) { return Jet(c); }
  static constexpr Jet variable(double x) {
    Jet j(x);
    if constexpr (Order >= 1) j.d[1] = 1.0;
    return j;
  }

  constexpr double value() const { return d[0]; }
  constexpr double operator[](std::size_t k) const { return d[k]; }

  // Drops the highest-order term and shifts: (f, f', f'') -> (f', f'').
  constexpr Jet<Order - 1> derivative() const
    requires(Order >= 1)
  {
    Jet<Order - 1> r;
    for (int k = 0; k < Order; ++k) r.d[k] = d[k + 1];
    return r;
  }

  template <int Lower>
  constexpr Jet<Lower> truncate() const {
    static_assert(Lower <= Order);
    Jet<Lower> r;
    for (int k = 0; k <= Lower; ++k) r.d[k] = d[k];
    return r;
  }

  // Jet of g(x) = f(-x) evaluated at x, given the jet of f at -x.
  constexpr Jet reflected() const {
    Jet r = *this;
    for (int k = 1; k <= Order; k += 2) r.d[k] = -r.d[k];
    return r;
  }

  constexpr Jet operator-() const {
    Jet r;
    for (int k = 0; k <= Order; ++k) r.d[k] = -d[k];
    return r;
  }

  constexpr Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= Order; ++k) d[k] += o.d[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= Order; ++k) d[k] -= o.d[k];
    return *this;
  }
  constexpr Jet& operator*=(double s) {
    for (auto& v : d) v *= s;
    return *this;
  }
  constexpr Jet& operator/=(double s) {
    for (auto& v : d) v /= s;
    return *this;
  }
  constexpr Jet& operator+=(double s) {
    d[0] += s;
    return *this;
  }
  constexpr Jet& operator-=(double s) {
    d[0] -= s;
    return *this;
  }
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

template <int O>
constexpr Jet<O> operator+(Jet<O> a, const Jet<O>& b) { return a += b; }
template <int O>
constexpr Jet<O> operator-(Jet<O> a, const Jet<O>& b) { return a -= b; }
template <int O>
constexpr Jet<O> operator+(Jet<O> a, double s) { return a += s; }
template <int O>
constexpr Jet<O> operator+(double s, Jet<O> a) { return a += s; }
template <int O>
constexpr Jet<O> operator-(Jet<O> a, double s) { return a -= s; }
template <int O>
constexpr Jet<O> operator-(double s, const Jet<O>& a) { return (-a) += s; }
template <int O>
constexpr Jet<O> operator*(Jet<O> a, double s) { return a *= s; }
template <int O>
constexpr Jet<O> operator*(double s, Jet<O> a) { return a *= s; }
template <int O>
constexpr Jet<O> operator/(Jet<O> a, double s) { return a /= s; }

// Leibniz rule.
template <int O>
constexpr Jet<O> operator*(const Jet<O>& a, const Jet<O>& b) {
  Jet<O> r;
  r.d[0] = a.d[0] * b.d[0];
  if constexpr (O >= 1) r.d[1] = a.d[1] * b.d[0] + a.d[0] * b.d[1];
  if constexpr (O >= 2) r.d[2] = a.d[2] * b.d[0] + 2.0 * a.d[1] * b.d[1] + a.d[0] * b.d[2];
  if constexpr (O >= 3)
    r.d[3] = a.d[3] * b.d[0] + 3.0 * a.d[2] * b.d[1] + 3.0 * a.d[1] * b.d[2] + a.d[0] * b.d[3];
  return r;
}

namespace detail {

// g(f(x)) given g, g', g'', g''' at f(x) (Faa di Bruno to third order).
template <int O>
constexpr Jet<O> compose(const Jet<O>& f, double g0, double g1, double g2, double g3) {
  Jet<O> r;
  r.d[0] = g0;
  if constexpr (O >= 1) r.d[1] = g1 * f.d[1];
  if constexpr (O >= 2) r.d[2] = g2 * f.d[1] * f.d[1] + g1 * f.d[2];
  if constexpr (O >= 3)
    r.d[3] = g3 * f.d[1] * f.d[1] * f.d[1] + 3.0 * g2 * f.d[1] * f.d[2] + g1 * f.d[3];
  return r;
}

}  // namespace detail

template <int O>
constexpr Jet<O> reciprocal(const Jet<O>& f) {
  const double v = f.d[0];
  const double inv = 1.0 / v;
  return detail::compose(f, inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv);
}

template <int O>
constexpr Jet<O> operator/(const Jet<O>& a, const Jet<O>& b) {
  return a * reciprocal(b);
}

template <int O>
constexpr Jet<O> operator/(double s, const Jet<O>& b) {
  return s * reciprocal(b);
}

template <int O>
Jet<O> sin(const Jet<O>& f) {
  const double s = std::sin(f.d[0]), c = std::cos(f.d[0]);
  return detail::compose(f, s, c, -s, -c);
}

template <int O>
Jet<O> cos(const Jet<O>& f) {
  const double s = std::sin(f.d[0]), c = std::cos(f.d[0]);
  return detail::compose(f, c, -s, -c, s);
}

template <int O>
Jet<O> exp(const Jet<O>& f) {
  const double e = std::exp(f.d[0]);
  return detail::compose(f, e, e, e, e);
}

template <int O>
Jet<O> sqrt(const Jet<O>& f) {
  const double s = std::sqrt(f.d[0]);
  const double v = f.d[0];
  return detail::compose(f, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

}  // namespace symconj
