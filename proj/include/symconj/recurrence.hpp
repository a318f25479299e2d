#pragma once

// Three-term recurrences for orthonormal polynomials,
//   x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1},
// shared by eigenfunction evaluation and Gauss rule construction. Evaluation
// is generic over the scalar so the same loop runs on doubles and jets.

#include <cmath>
#include <vector>

namespace symconj {

struct Recurrence {
  // a(k) for k >= 0, b(k) for k >= 1 (b(0) is never used).
  virtual double a(int k) const = 0;
  virtual double b(int k) const = 0;
  virtual ~Recurrence() = default;
};

// Hermite, weight e^{-x^2} on R.
struct HermiteRecurrence final : Recurrence {
  double a(int) const override { return 0.0; }
  double b(int k) const override { return std::sqrt(0.5 * k); }
};

// Generalized Laguerre, weight t^alpha e^{-t} on (0, inf).
struct LaguerreRecurrence final : Recurrence {
  explicit LaguerreRecurrence(double alpha) : alpha(alpha) {}
  double a(int k) const override { return 2.0 * k + alpha + 1.0; }
  double b(int k) const override { return std::sqrt(k * (k + alpha)); }
  double alpha;
};

// Jacobi, weight (1-x)^alpha (1+x)^beta on (-1, 1).
struct JacobiRecurrence final : Recurrence {
  JacobiRecurrence(double alpha, double beta) : alpha(alpha), beta(beta) {}
  double a(int k) const override {
    const double s = alpha + beta;
    if (k == 0) return (beta - alpha) / (s + 2.0);
    return (beta * beta - alpha * alpha) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
  }
  double b(int k) const override {
    const double s = alpha + beta;
    // The general expression is 0/0 at k = 1 when alpha + beta = -1.
    if (k == 1) return std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s)));
    const double t = 2.0 * k + s;
    return std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + s) / (t * t * (t + 1.0) * (t - 1.0)));
  }
  double alpha;
  double beta;
};

// p_n(x) given p_0 (which may carry a non-polynomial factor such as e^{-x^2/2}).
template <typename T>
T recurrence_eval(const Recurrence& rc, int n, const T& x, const T& p0) {
  if (n == 0) return p0;
  T prev = p0;
  T cur = ((x - rc.a(0)) * p0) / rc.b(1);
  for (int k = 1; k < n; ++k) {
    T next = ((x - rc.a(k)) * cur - rc.b(k) * prev) / rc.b(k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

// All of p_0..p_{n-1} at a scalar point.
inline std::vector<double> recurrence_table(const Recurrence& rc, int n, double x, double p0) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  out[0] = p0;
  if (n > 1) out[1] = (x - rc.a(0)) * p0 / rc.b(1);
  for (int k = 1; k + 1 < n; ++k) out[k + 1] = ((x - rc.a(k)) * out[k] - rc.b(k) * out[k - 1]) / rc.b(k + 1);
  return out;
}

}  // namespace symconj
