#pragma once

// Gauss rules from three-term recurrences (Golub–Welsch, then Newton polish on
// the recurrence and Christoffel weights).

#include <vector>

#include "symconj/recurrence.hpp"

namespace symconj {

struct GaussRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // for the recurrence's measure normalized so that p_0 = p0
};

// n-point rule for the measure in which p_0 ≡ p0 is the normalized constant.
GaussRule gauss_rule(const Recurrence& rc, int n, double p0);

}  // namespace symconj
