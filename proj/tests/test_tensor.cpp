#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "symconj/tensor.hpp"

using namespace symconj;
using doctest::Approx;

namespace {

std::vector<std::vector<std::size_t>> members(const LevelTable& t) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& l : t.levels()) out.push_back(l.members);
  return out;
}

std::vector<double> values(const LevelTable& t) {
  std::vector<double> out;
  for (const auto& l : t.levels()) out.push_back(l.value);
  return out;
}

}  // namespace

TEST_CASE("multi-indices") {
  const MultiIndex n{2, 0, 3};
  CHECK(n.dim() == 3);
  CHECK(n.order() == 5);
  CHECK(n.str() == "(2,0,3)");
  CHECK(MultiIndex::zero(2).is_zero());
  CHECK(MultiIndex::unit(3, 1) == MultiIndex{0, 1, 0});
  CHECK_THROWS_AS(MultiIndex::unit(2, 2), std::invalid_argument);
  const auto order2 = multi_indices_of_order(2, 2);
  CHECK(order2 == std::vector<MultiIndex>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(multi_indices_of_order(3, 2).size() == 6);
  CHECK(multi_indices_of_order(1, 0) == std::vector<MultiIndex>{{0}});
}

TEST_CASE("box flattening") {
  const Box box(3, 4);
  CHECK(box.size() == 125);
  CHECK(box.stride(0) == 25);
  CHECK(box.stride(2) == 1);
  CHECK(box.flatten({1, 2, 3}) == 25 + 10 + 3);
  for (std::size_t i = 0; i < box.size(); ++i) CHECK(box.flatten(box.unflatten(i)) == i);
  CHECK(box.component(38, 1) == 2);
  CHECK_THROWS_AS(box.flatten({5, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(box.flatten({0, 0}), std::out_of_range);
  CHECK_THROWS_AS(Box(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Box(1, -1), std::invalid_argument);
}

TEST_CASE("coefficient vector arithmetic") {
  const FamilySpec f = FamilySpec::trigonometric();
  const Box box(2, 2);
  CoeffVector a = CoeffVector::basis_vector(f, box, {1, 2});
  CoeffVector b = CoeffVector::basis_vector(f, box, {0, 0});
  CHECK(a.at({1, 2}) == 1.0);
  const CoeffVector c = 3.0 * a + b;
  CHECK(c.norm() == Approx(std::sqrt(10.0)));
  CHECK(c.dot(a) == 3.0);
  CHECK((c - b).max_abs_diff(3.0 * a) == 0.0);
  CHECK_THROWS_AS(a.dot(CoeffVector(f, Box(2, 3))), std::invalid_argument);
  CHECK_THROWS_AS(a.dot(CoeffVector(FamilySpec::hermite_even(), box)), std::invalid_argument);
}

TEST_CASE("tensor basis values and eigenvalues") {
  const SymmetrizedBasis trig(FamilySpec::trigonometric());
  const std::array<double, 2> x{0.4, -1.1};
  CHECK(eval_Phi_multi(trig, {2, 1}, x) == Approx(std::cos(0.4) * std::sin(-1.1)));
  const std::array<double, 2> bad{0.4, 0.0};
  CHECK_THROWS_AS(eval_Phi_multi(trig, {2, 1}, bad), DomainError);
  const std::array<double, 1> short_x{0.4};
  CHECK_THROWS_AS(eval_Phi_multi(trig, {2, 1}, short_x), std::invalid_argument);
  CHECK(lambda_multi(trig, {3, 4}) == 8);
  const SymmetrizedBasis herm(FamilySpec::hermite_even());
  CHECK(lambda_multi(herm, {5}) == 13);
  CHECK(lambda_multi(herm, {1, 2, 0}) == 11);
}

TEST_CASE("levels of the one-dimensional trigonometric box") {
  const SymmetrizedBasis b(FamilySpec::trigonometric());
  const LevelTable t = build_levels(b, 4, 1);
  CHECK(values(t) == std::vector<double>{0, 1, 4});
  CHECK(members(t) == std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {3, 4}});
  CHECK(t.level_of(3) == 2);
  CHECK(t.warnings().empty());
}

TEST_CASE("levels of the two-dimensional trigonometric box") {
  const SymmetrizedBasis b(FamilySpec::trigonometric());
  const LevelTable t = build_levels(b, 2, 2);
  CHECK(values(t) == std::vector<double>{0, 1, 2});
  const Box& box = t.box();
  CHECK(t.level(1).members == std::vector<std::size_t>{box.flatten({0, 1}), box.flatten({0, 2}),
                                                       box.flatten({1, 0}), box.flatten({2, 0})});
  CHECK(t.level(2).members.size() == 4);
}

TEST_CASE("levels of the Hermite box") {
  const SymmetrizedBasis b(FamilySpec::hermite_even());
  const LevelTable t = build_levels(b, 2, 1);
  CHECK(values(t) == std::vector<double>{1, 5});
  CHECK(members(t) == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
}

TEST_CASE("levels partition the box for every family") {
  for (const FamilySpec& fam : {FamilySpec::trigonometric(), FamilySpec::jacobi(0.3, 0.7), FamilySpec::laguerre(0.5),
                                FamilySpec::jacobi(0.17, -0.41)}) {
    CAPTURE(fam.name());
    const SymmetrizedBasis b(fam);
    const LevelTable t = build_levels(b, 6, 2);
    std::vector<int> seen(t.box().size(), 0);
    double prev = -1.0;
    for (std::size_t m = 0; m < t.count(); ++m) {
      CHECK(t.level(m).value > prev);
      prev = t.level(m).value;
      for (std::size_t i : t.level(m).members) {
        ++seen[i];
        CHECK(t.eigenvalues()[i] == Approx(t.level(m).value).epsilon(1e-12));
      }
    }
    for (int s : seen) CHECK(s == 1);
    CHECK(t.warnings().empty());
  }
}

TEST_CASE("sine convention removes slots with a zero component") {
  const SymmetrizedBasis b(FamilySpec::sine_augmented());
  CHECK_FALSE(is_member(b, {0, 3}));
  CHECK(is_member(b, {1, 3}));
  const LevelTable t = build_levels(b, 2, 2);
  CHECK(t.level_of(t.box().flatten({0, 1})) == -1);
  CHECK(values(t) == std::vector<double>{2});
  CHECK(t.level(0).members.size() == 4);
}

TEST_CASE("level projections") {
  const FamilySpec fam = FamilySpec::jacobi(0.3, 0.7);
  const SymmetrizedBasis b(fam);
  const LevelTable t = build_levels(b, 5, 2);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  CoeffVector f(fam, t.box());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g(rng);

  CoeffVector sum(fam, t.box());
  for (std::size_t m = 0; m < t.count(); ++m) {
    const CoeffVector p = project_level(t, m, f);
    CHECK(project_level(t, m, p).max_abs_diff(p) == 0.0);
    if (m + 1 < t.count()) CHECK(project_level(t, m + 1, p).norm() == 0.0);
    sum += p;
  }
  CHECK(sum.max_abs_diff(f) == 0.0);
  CHECK_THROWS_AS(project_level(t, t.count(), f), std::out_of_range);
  CHECK_THROWS_AS(project_level(t, 0, CoeffVector(fam, Box(2, 4))), std::invalid_argument);

  // 𝒫_m e_n = e_n exactly when n sits in level m.
  const MultiIndex n{3, 4};
  const CoeffVector e = CoeffVector::basis_vector(fam, t.box(), n);
  const int m = t.level_of(t.box().flatten(n));
  CHECK(project_level(t, static_cast<std::size_t>(m), e).max_abs_diff(e) == 0.0);
}
