#include "nullcone/algebra.hpp"
#include "nullcone/frame.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace nullcone;
using testing_support::tensor;

namespace {

StructureTensor s21() { return tensor(2, {{1, 2, 2, "1"}}); }

StructureTensor s545() {
  return tensor(5, {{2, 3, 2, "2"}, {4, 5, 2, "-1"}, {1, 5, 4, "-1"}, {3, 4, 4, "-1"}, {3, 5, 5, "-1"}, {1, 4, 5, "1"}});
}

StructureTensor sl2_semidirect_r2() {
  return tensor(5, {{1, 3, 1, "2"}, {3, 5, 5, "2"}, {1, 5, 3, "1"}, {3, 2, 2, "1"}, {4, 3, 4, "1"}, {5, 4, 2, "1"}, {2, 1, 4, "1"}});
}

std::vector<Rational> cls(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST(Metric, NullPairsAndTransverseBlock) {
  Matrix g11 = metric_components(FrameLayout::canonical(1, 0)).matrix();
  EXPECT_EQ(g11(0, 1), Rational(1));
  EXPECT_EQ(g11(1, 0), Rational(1));
  EXPECT_EQ(g11(0, 0), Rational(0));
  EXPECT_EQ(metric_components(FrameLayout::canonical(0, 3)).matrix(), Matrix::identity(3));
  Matrix g = metric_components(FrameLayout::canonical(2, 1)).matrix();
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b) {
      bool one = (a == 0 && b == 1) || (a == 1 && b == 0) || (a == 2 && b == 3) || (a == 3 && b == 2) || (a == 4 && b == 4);
      EXPECT_EQ(g(a, b), Rational(one ? 1 : 0));
    }
  EXPECT_EQ(g * g, Matrix::identity(5));
}

TEST(Layout, RejectsBrokenRoleMaps) {
  EXPECT_THROW(FrameLayout({{Role::NMinus, 1}, {Role::NMinus, 1}}), std::invalid_argument);
  EXPECT_THROW(FrameLayout({{Role::NMinus, 1}, {Role::Transverse, 0}}), std::invalid_argument);
  FrameLayout explicit_layout({{Role::NPlus, 1}, {Role::Transverse, 0}, {Role::NMinus, 1}});
  EXPECT_EQ(explicit_layout.partner(1), 3);
  EXPECT_EQ(explicit_layout.partner(2), 2);
  EXPECT_EQ(Role::parse("N-2"), (Role{Role::NMinus, 2}));
  EXPECT_THROW(Role::parse("X1"), std::invalid_argument);
}

TEST(Weights, IndexAndComponentWeights) {
  auto L = FrameLayout::canonical(2, 1);
  EXPECT_EQ(index_weight(L, 1), (BoostWeight{-1, 0}));
  EXPECT_EQ(index_weight(L, 4), (BoostWeight{0, 1}));
  EXPECT_EQ(index_weight(L, 5), (BoostWeight{0, 0}));
  EXPECT_EQ(component_weight(FrameLayout::canonical(1, 0), 1, 2, 2), (BoostWeight{-1}));
  EXPECT_EQ(component_weight(L, 2, 1, 4), (BoostWeight{0, -1}));
  EXPECT_EQ(component_weight(L, 3, 5, 5), (BoostWeight{0, -1}));
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int c = 1; c <= 5; ++c) EXPECT_EQ(component_weight(L, a, b, c), component_weight(L, b, a, c));
}

TEST(Weights, Support) {
  EXPECT_TRUE(weight_support(FrameLayout::canonical(2, 0), StructureTensor(4)).empty());
  EXPECT_EQ(weight_support(FrameLayout::canonical(1, 0), s21()), (std::set<BoostWeight>{{-1}}));
  // C^2_{23}, C^4_{34}, C^5_{35} -> (0,-1); C^2_{45}, C^5_{14} -> (-1,1);
  // C^4_{15} -> (-1,-1), which pairs with [2,1] to -3.
  auto sup = weight_support(FrameLayout::canonical(2, 1), s545());
  EXPECT_EQ(sup, (std::set<BoostWeight>{{0, -1}, {-1, 1}, {-1, -1}}));
  Rational worst = -100;
  for (const auto& b : sup) {
    Rational m = pairing({2, 1}, b);
    EXPECT_LE(m, Rational(-1));
    worst = std::max(worst, m);
  }
  EXPECT_EQ(worst, Rational(-1));
  EXPECT_THROW(weight_support(FrameLayout::canonical(2, 0), s545()), DimensionMismatch);
}

TEST(Certify, PublishedClasses) {
  auto L = FrameLayout::canonical(2, 1);
  auto r = certify_class(L, s545(), cls({2, 1}));
  EXPECT_TRUE(r.certified);
  EXPECT_EQ(*r.worst_margin, Rational(-1));
  EXPECT_TRUE(certify_class(L, sl2_semidirect_r2(), cls({2, 1})).certified);

  auto half = certify_class(FrameLayout::canonical(1, 0), s21(), cls({Rational(1, 2)}));
  EXPECT_FALSE(half.certified);
  EXPECT_EQ(*half.worst_margin, Rational(-1, 2));
  EXPECT_EQ(half.violating_weights, (std::vector<BoostWeight>{{-1}}));

  auto empty = certify_class(FrameLayout::canonical(1, 1), StructureTensor(3), cls({1}));
  EXPECT_TRUE(empty.certified);
  EXPECT_FALSE(empty.worst_margin.has_value());
}

TEST(Certify, TransverseOnlyComponentsAlwaysViolate) {
  auto t = tensor(4, {{3, 4, 3, "1"}});
  auto r = certify_class(FrameLayout::canonical(1, 2), t, cls({5}));
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.violating_weights, (std::vector<BoostWeight>{{0}}));
}

TEST(Certify, InvariantUnderSimultaneousSlotPermutation) {
  auto L = FrameLayout::canonical(2, 1);
  auto swapped = L.permute_slots({2, 1});
  for (const auto& x : {cls({2, 1}), cls({1, 2}), cls({3, 1})}) {
    std::vector<Rational> xs{x[1], x[0]};
    auto a = certify_class(L, s545(), x);
    auto b = certify_class(swapped, s545(), xs);
    EXPECT_EQ(a.certified, b.certified);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
  }
}

TEST(Flow, ScalingLaw) {
  auto L1 = FrameLayout::canonical(1, 0);
  auto f = boost_flow(L1, s21(), cls({1}), Rational(1), Rational(2));
  ASSERT_TRUE(f.exact());
  EXPECT_EQ(f.exact()->coefficient(1, 2, 2), Rational(1, 2));

  auto L = FrameLayout::canonical(2, 1);
  EXPECT_EQ(*boost_flow(L, s545(), cls({2, 1}), Rational(0), Rational(3)).exact(), s545());

  // 2^{-1/2} is kept as 1/2 · 2^{1/2}.
  auto h = boost_flow(L1, s21(), cls({Rational(1, 2)}), Rational(1), Rational(2));
  EXPECT_FALSE(h.is_exact());
  EXPECT_EQ(h.components()[0].coefficient, Rational(1, 2));
  EXPECT_EQ(h.components()[0].exponent, Rational(1, 2));
  EXPECT_EQ(boost_flow(L1, h, cls({Rational(1, 2)}), Rational(1)).exact()->coefficient(1, 2, 2), Rational(1, 2));
}

TEST(Flow, GroupLawAndDecay) {
  auto L = FrameLayout::canonical(2, 1);
  for (const auto& t : {s545(), sl2_semidirect_r2()}) {
    auto x = cls({2, 1});
    for (auto [t1, t2] : {std::pair{Rational(1), Rational(2)}, {Rational(1, 3), Rational(-5, 6)}, {Rational(3, 2), Rational(0)}}) {
      auto two_step = boost_flow(L, boost_flow(L, t, x, t2, Rational(2)), x, t1);
      auto one_step = boost_flow(L, t, x, t1 + t2, Rational(2));
      EXPECT_EQ(two_step, one_step);
    }
    Rational prev = t.max_abs();
    for (int step : {1, 2, 4}) {
      auto flowed = *boost_flow(L, t, x, Rational(step), Rational(2)).exact();
      EXPECT_TRUE(jacobi_check(flowed).empty());
      EXPECT_LE(flowed.max_abs(), t.max_abs() * Rational(2).pow(-step));
      EXPECT_LT(flowed.max_abs(), prev);
      prev = flowed.max_abs();
    }
  }
}

TEST(FrameMap, Examples) {
  auto L1 = FrameLayout::canonical(1, 0);
  EXPECT_EQ(apply_frame_map(L1, s21(), {1, 2}, {1, 1}), s21());
  auto swapped = apply_frame_map(L1, s21(), {2, 1}, {1, 1}, true);
  EXPECT_EQ(weight_support(L1, swapped), (std::set<BoostWeight>{{1}}));

  auto L = FrameLayout::canonical(2, 1);
  auto moved = apply_frame_map(L, s545(), {3, 4, 1, 2, 5}, {1, 1, 1, 1, 1}, true);
  std::set<BoostWeight> expected;
  for (auto b : weight_support(L, s545())) expected.insert({b[1], b[0]});
  EXPECT_EQ(weight_support(L, moved), expected);
  EXPECT_TRUE(jacobi_check(moved).empty());

  EXPECT_THROW(apply_frame_map(L1, s21(), {1, 2}, {-1, 1}, true), std::invalid_argument);
  EXPECT_THROW(apply_frame_map(L, s545(), {1, 3, 2, 4, 5}, {1, 1, 1, 1, 1}, true), std::invalid_argument);
  EXPECT_NO_THROW(apply_frame_map(L, s545(), {1, 3, 2, 4, 5}, {1, 1, 1, 1, 1}));
}

TEST(FrameMap, PreservesJacobi) {
  std::mt19937_64 rng(23);
  auto L = FrameLayout::canonical(2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> perm{1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> signs(5);
    for (auto& s : signs) s = rng() % 2 ? 1 : -1;
    EXPECT_TRUE(jacobi_check(apply_frame_map(L, sl2_semidirect_r2(), perm, signs)).empty());
  }
}

TEST(Normalize, SortsDescendingAndRecordsOrder) {
  auto n = normalize_class(cls({1, 3, 2}));
  EXPECT_EQ(n.values, cls({3, 2, 1}));
  EXPECT_EQ(n.order, (std::vector<int>{2, 3, 1}));
}
