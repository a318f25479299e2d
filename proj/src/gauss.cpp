#include "symconj/gauss.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "symconj/jet.hpp"

namespace symconj {

GaussRule gauss_rule(const Recurrence& rc, int n, double p0) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag(k) = rc.a(k);
  for (int k = 1; k < n; ++k) off(k - 1) = rc.b(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver failed");

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    // Newton on p_n; the eigenvalues are already close, so two or three steps suffice.
    for (int it = 0; it < 4; ++it) {
      const Jet1 p = recurrence_eval(rc, n, Jet1::variable(x), Jet1(1.0));
      if (p[1] == 0.0) break;
      const double step = p[0] / p[1];
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const std::vector<double> table = recurrence_table(rc, n, x, p0);
    double s = 0.0;
    for (double v : table) s += v * v;
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 1.0 / s;
  }
  return rule;
}

}  // namespace symconj
