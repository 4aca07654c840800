#include "nullcone/classifier.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nullcone;
using testing_support::tensor;

namespace {

std::set<BoostWeight> random_weights(std::mt19937_64& rng, int p, int count) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::set<BoostWeight> w;
  for (int i = 0; i < count; ++i) {
    BoostWeight b(p);
    for (auto& v : b) v = coef(rng);
    w.insert(b);
  }
  return w;
}

bool satisfies(const std::set<BoostWeight>& ws, const std::vector<Rational>& x) {
  for (const auto& xi : x)
    if (xi.sign() < 0) return false;
  for (const auto& b : ws)
    if (pairing(x, b) > Rational(-1)) return false;
  return true;
}

/// Brute force over x in {0, 1/2, ..., 6}^p.
bool grid_feasible(const std::set<BoostWeight>& ws, int p) {
  std::vector<int> idx(p, 0);
  while (true) {
    std::vector<Rational> x;
    for (int v : idx) x.emplace_back(v, 2);
    if (satisfies(ws, x)) return true;
    int i = 0;
    while (i < p && ++idx[i] > 12) idx[i++] = 0;
    if (i == p) return false;
  }
}

StructureTensor s33(const std::string& alpha) {
  return tensor(3, {{2, 1, 2, alpha}, {2, 1, 3, "-1"}, {3, 1, 2, "1"}, {3, 1, 3, alpha}});
}

StructureTensor s412() { return tensor(4, {{1, 2, 2, "1"}, {1, 4, 4, "1"}, {3, 4, 2, "1"}, {2, 3, 4, "1"}}); }

}  // namespace

TEST(FindClass, Examples) {
  auto one = find_class({1, {{-1}}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->values, (std::vector<Rational>{1}));

  // Hand elimination: x1 ≥ 1 + 2x2 and x1 ≥ 1 - 2x2 with x2 ≥ 0, so the
  // lexicographically least point is (1, 0).
  auto two = find_class({2, {{-1, 2}, {-1, -2}, {-1, 0}}});
  ASSERT_TRUE(two);
  EXPECT_EQ(two->values, (std::vector<Rational>{1, 0}));
  EXPECT_TRUE(grid_feasible({{-1, 2}, {-1, -2}, {-1, 0}}, 2));

  EXPECT_FALSE(find_class({2, {{1, 0}}}));
  auto empty = find_class({3, {}});
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->values, (std::vector<Rational>{1, 1, 1}));
}

TEST(FindClass, SoundAndCompleteAgainstGrid) {
  std::mt19937_64 rng(29);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int p = 1 + trial % 3;
    auto ws = random_weights(rng, p, 1 + trial % 5);
    auto fm = feasibility::fourier_motzkin(p, ws);
    if (fm) {
      ++feasible;
      EXPECT_TRUE(satisfies(ws, *fm));
    }
    bool grid = grid_feasible(ws, p);
    if (grid) {
      EXPECT_TRUE(fm.has_value());
    }
    // A certificate with half-integer entries inside the box must be found by the grid.
    if (fm) {
      bool on_grid = true;
      for (const auto& v : *fm) on_grid = on_grid && v <= Rational(6) && (v * Rational(2)).is_integer();
      if (on_grid) {
        EXPECT_TRUE(grid);
      }
    }
  }
  EXPECT_GT(feasible, 30);
}

TEST(FindClass, FourierMotzkinAndSimplexAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    int p = 1 + trial % 6;
    auto ws = random_weights(rng, p, 1 + trial % 8);
    auto fm = feasibility::fourier_motzkin(p, ws);
    auto sx = feasibility::simplex(p, ws);
    ASSERT_EQ(fm.has_value(), sx.has_value());
    if (sx) {
      EXPECT_TRUE(satisfies(ws, *sx));
    }
  }
}

TEST(FindClass, SimplexPathForLargeP) {
  // Chain weights e_{i+1} - e_i - e_1 style: x_i ≥ x_{i+1} + 1 forces a staircase.
  const int p = 9;
  std::set<BoostWeight> ws;
  for (int i = 0; i + 1 < p; ++i) {
    BoostWeight b(p, 0);
    b[i] = -1;
    b[i + 1] = 1;
    ws.insert(b);
  }
  BoostWeight last(p, 0);
  last[p - 1] = -1;
  ws.insert(last);
  auto x = find_class({p, ws});
  ASSERT_TRUE(x);
  EXPECT_TRUE(satisfies(ws, x->values));
  EXPECT_EQ(x->values.front(), Rational(9));
}

TEST(SearchFrame, PermutedTableTwoAlgebraCertifies) {
  auto t = s412();
  auto L = FrameLayout::canonical(2, 0);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<int> perm{1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    auto shuffled = apply_frame_map(L, t, perm, {1, 1, 1, 1});
    auto r = search_frame(shuffled, 2, 0);
    ASSERT_EQ(r.verdict, Verdict::certified);
    EXPECT_EQ(*r.class_vector, (std::vector<Rational>{1, 1}));
    EXPECT_TRUE(certify_class(*r.layout, *r.witness, *r.class_vector).certified);
    EXPECT_EQ(apply_frame_map(L, shuffled, r.permutation, r.signs), *r.witness);
  }
}

TEST(SearchFrame, NegativeControlsInLowDimension) {
  for (const char* alpha : {"0", "2"}) {
    auto r = search_frame(s33(alpha), 1, 1);
    EXPECT_EQ(r.verdict, Verdict::infeasible_for_all_searched_frames) << alpha;
    EXPECT_EQ(r.frames_searched, 6u * 8u);
  }
}

TEST(SearchFrame, AbelianCertifiesWithAllOnes) {
  auto r = search_frame(StructureTensor(4), 2, 0);
  ASSERT_EQ(r.verdict, Verdict::certified);
  EXPECT_EQ(*r.class_vector, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(r.frames_searched, 1u);
  EXPECT_EQ(r.permutation, (std::vector<int>{1, 2, 3, 4}));
}

TEST(SearchFrame, PruningAndThreadsDoNotChangeTheWitness) {
  std::vector<std::pair<StructureTensor, std::pair<int, int>>> cases = {
      {s412(), {2, 0}},
      {s33("1"), {1, 1}},
      {tensor(4, {{1, 3, 1, "2"}, {3, 4, 4, "2"}, {1, 4, 3, "1"}}), {2, 0}},
      {tensor(4, {{1, 2, 1, "1"}, {1, 3, 3, "-1"}, {2, 3, 2, "2"}}), {1, 2}},
  };
  for (const auto& [t, sig] : cases) {
    auto base = search_frame(t, sig.first, sig.second);
    auto unpruned = search_frame(t, sig.first, sig.second, {false, 1});
    auto threaded = search_frame(t, sig.first, sig.second, {true, 4});
    EXPECT_EQ(base.verdict, unpruned.verdict);
    EXPECT_EQ(base.permutation, unpruned.permutation);
    EXPECT_EQ(base.frames_searched, unpruned.frames_searched);
    EXPECT_EQ(base.verdict, threaded.verdict);
    EXPECT_EQ(base.permutation, threaded.permutation);
    EXPECT_EQ(base.signs, threaded.signs);
    EXPECT_EQ(base.frames_searched, threaded.frames_searched);
    EXPECT_EQ(base.pruned_by_nilpotency, threaded.pruned_by_nilpotency);
  }
}

TEST(SearchFrame, VerdictInvariantUnderBasisPermutation) {
  auto sl2r2 = tensor(5, {{1, 3, 1, "2"}, {3, 5, 5, "2"}, {1, 5, 3, "1"}, {3, 2, 2, "1"}, {4, 3, 4, "1"}, {5, 4, 2, "1"}, {2, 1, 4, "1"}});
  auto L = FrameLayout::canonical(2, 1);
  auto base = search_frame(sl2r2, 2, 1);
  ASSERT_EQ(base.verdict, Verdict::certified);
  auto moved = apply_frame_map(L, sl2r2, {5, 3, 1, 4, 2}, {1, -1, 1, 1, -1});
  EXPECT_EQ(search_frame(moved, 2, 1).verdict, Verdict::certified);
}

TEST(SearchFrame, RejectsWrongSignature) { EXPECT_THROW(search_frame(s412(), 1, 1), DimensionMismatch); }

TEST(MembershipReport, KillingNilpotencyReported) {
  auto sl2r = tensor(4, {{1, 3, 1, "2"}, {3, 4, 4, "2"}, {1, 4, 3, "1"}});
  auto reps = membership_report(sl2r, {{2, 0}});
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].verdict, Verdict::certified);
  EXPECT_EQ(reps[0].killing_nilpotent, true);
  auto su2r = tensor(4, {{1, 2, 3, "1"}, {2, 3, 1, "1"}, {3, 1, 2, "1"}});
  auto neg = membership_report(su2r, {{1, 2}, {2, 0}});
  EXPECT_EQ(neg[0].verdict, Verdict::infeasible_for_all_searched_frames);
  EXPECT_EQ(neg[1].verdict, Verdict::infeasible_for_all_searched_frames);
  EXPECT_FALSE(neg[0].killing_nilpotent.has_value());
}
