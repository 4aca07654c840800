#include "nullcone/algebra.hpp"
#include "nullcone/rootsystem.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace nullcone;

namespace {

std::vector<int> heights(const std::vector<Root>& rs) {
  std::vector<int> out;
  for (const auto& r : rs) out.push_back(r.height());
  return out;
}

/// Brute-force root oracle: orbit of the simple roots under simple
/// reflections s_i(β) = β - ⟨β, α_i^∨⟩α_i.
std::set<std::vector<int>> reflection_orbit(const CartanMatrix& C) {
  const int n = C.rank();
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> todo;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v(n, 0);
    v[i] = 1;
    todo.push_back(v);
  }
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    if (!seen.insert(v).second) continue;
    for (int i = 0; i < n; ++i) {
      int ip = 0;
      for (int j = 0; j < n; ++j) ip += v[j] * C.gram()[j][i];
      auto w = v;
      w[i] -= 2 * ip / C.gram()[i][i];
      todo.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST(Cartan, Matrices) {
  auto g2 = CartanMatrix::make('G', 2);
  EXPECT_EQ(g2.entries(), (std::vector<std::vector<int>>{{2, -1}, {-3, 2}}));
  auto b3 = CartanMatrix::make('B', 3);
  EXPECT_EQ(b3.entries(), (std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}));
  auto c3 = CartanMatrix::make('C', 3);
  EXPECT_EQ(c3.entries(), (std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}));
  auto f4 = CartanMatrix::make('F', 4);
  EXPECT_EQ(f4.entries(), (std::vector<std::vector<int>>{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}));
  for (char t : std::string("ABCDEFG"))
    for (int r = 1; r <= 8; ++r) {
      std::optional<CartanMatrix> c;
      try {
        c = CartanMatrix::make(t, r);
      } catch (const std::invalid_argument&) {
        continue;
      }
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          if (i == j)
            EXPECT_EQ(c->entries()[i][j], 2);
          else
            EXPECT_TRUE(c->entries()[i][j] <= 0 && c->entries()[i][j] >= -3);
        }
    }
  EXPECT_THROW(CartanMatrix::make('D', 2), std::invalid_argument);
  EXPECT_THROW(CartanMatrix::make('E', 5), std::invalid_argument);
  EXPECT_THROW(CartanMatrix::make('F', 3), std::invalid_argument);
  EXPECT_THROW(CartanMatrix::make('G', 3), std::invalid_argument);
  EXPECT_THROW(CartanMatrix::make('X', 3), std::invalid_argument);
  EXPECT_THROW(CartanMatrix::parse("E"), std::invalid_argument);
  EXPECT_EQ(CartanMatrix::parse("e8").name(), "E8");
}

TEST(Roots, Examples) {
  auto a2 = positive_roots(CartanMatrix::make('A', 2));
  EXPECT_EQ(heights(a2), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(a2[0].coeffs, (std::vector<int>{1, 0}));
  EXPECT_EQ(positive_roots(CartanMatrix::make('G', 2)).size(), 6u);
  EXPECT_EQ(positive_roots(CartanMatrix::make('E', 8)).size(), 120u);
}

TEST(Roots, MatchReflectionOrbit) {
  for (auto name : {"A4", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
    auto C = CartanMatrix::parse(name);
    std::set<std::vector<int>> positive;
    for (const auto& v : reflection_orbit(C))
      if (std::accumulate(v.begin(), v.end(), 0) > 0) positive.insert(v);
    std::set<std::vector<int>> got;
    for (const auto& r : positive_roots(C)) got.insert(r.coeffs);
    EXPECT_EQ(got, positive) << name;
  }
}

TEST(Roots, ClassicalCounts) {
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(positive_roots(CartanMatrix::make('A', n)).size(), static_cast<std::size_t>(n * (n + 1) / 2));
    EXPECT_EQ(positive_roots(CartanMatrix::make('B', n)).size(), static_cast<std::size_t>(n * n));
    EXPECT_EQ(positive_roots(CartanMatrix::make('C', n)).size(), static_cast<std::size_t>(n * n));
    if (n >= 3) {
      EXPECT_EQ(positive_roots(CartanMatrix::make('D', n)).size(), static_cast<std::size_t>(n * (n - 1)));
    }
  }
}

TEST(Grading, Examples) {
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('F', 4))), (std::vector<int>{4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1}));
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('G', 2))), (std::vector<int>{2, 1, 1, 1, 1}));
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('E', 6))), (std::vector<int>{6, 5, 5, 5, 4, 3, 3, 2, 1, 1, 1}));
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('D', 4))), (std::vector<int>{4, 3, 3, 1, 1}));
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('D', 5))), (std::vector<int>{5, 4, 4, 3, 2, 1, 1}));
  EXPECT_EQ(height_grading(positive_roots(CartanMatrix::make('E', 7))),
            (std::vector<int>{7, 6, 6, 6, 6, 5, 5, 4, 4, 3, 3, 2, 2, 1, 1, 1, 1}));
  EXPECT_THROW(height_grading({Root{{1, 1}}}), std::logic_error);
}

TEST(Grading, LcsDims) {
  EXPECT_EQ(lcs_dims(height_grading(positive_roots(CartanMatrix::make('G', 2)))), (std::vector<int>{6, 4, 3, 2, 1, 0}));
  EXPECT_EQ(lcs_dims(height_grading(positive_roots(CartanMatrix::make('F', 4)))),
            (std::vector<int>{24, 20, 17, 14, 11, 8, 6, 4, 3, 2, 1, 0}));
  EXPECT_EQ(lcs_dims(height_grading(positive_roots(CartanMatrix::make('E', 8)))),
            (std::vector<int>{120, 112, 105, 98, 91, 84, 77, 70, 64, 58, 52, 46, 41, 36, 32, 28, 24, 20, 17, 14, 12, 10, 8, 6, 5, 4, 3, 2, 1, 0}));
  EXPECT_EQ(lcs_dims(height_grading(positive_roots(CartanMatrix::make('E', 7)))),
            (std::vector<int>{63, 56, 50, 44, 38, 32, 27, 22, 18, 14, 11, 8, 6, 4, 3, 2, 1, 0}));
  EXPECT_EQ(lcs_dims(height_grading(positive_roots(CartanMatrix::make('E', 6)))),
            (std::vector<int>{36, 30, 25, 20, 15, 11, 8, 5, 3, 2, 1, 0}));
}

TEST(Chevalley, A1IsSl2) {
  auto g = chevalley_split_form(CartanMatrix::make('A', 1));
  // basis E, H, F
  EXPECT_EQ(*g.bracket, testing_support::tensor(3, {{2, 1, 1, "2"}, {2, 3, 3, "-2"}, {1, 3, 2, "1"}}));
  EXPECT_EQ(g.delta, 1);
  EXPECT_EQ(g.dims.at(0), 1);
}

namespace {

void check_split_form(const std::string& name) {
  SCOPED_TRACE(name);
  auto C = CartanMatrix::parse(name);
  auto g = chevalley_split_form(C);
  const auto& t = *g.bracket;
  const int np = static_cast<int>(positive_roots(C).size());
  EXPECT_EQ(t.dim(), C.rank() + 2 * np);
  EXPECT_TRUE(jacobi_check(t).empty());
  // grading respected; brackets of two root vectors are bounded integers
  auto grade = g.grade_of();
  for (const auto& e : t.entries()) {
    EXPECT_EQ(grade[e.c], grade[e.a] + grade[e.b]);
    EXPECT_TRUE(e.value.is_integer());
    if (grade[e.a] != 0 && grade[e.b] != 0 && grade[e.c] != 0) {
      EXPECT_FALSE(e.value.is_zero());
      EXPECT_LE(e.value.abs(), Rational(4));
    }
  }
  for (int l = 1; l <= g.delta; ++l) EXPECT_EQ(g.dim(l), g.dim(-l));
  // positive part: its LCS dims equal the tail sums of the height grading
  std::vector<int> idx;
  for (int l = 1; l <= g.delta; ++l)
    for (int a : g.pieces.at(l)) idx.push_back(a);
  auto closure = subalgebra_closure_check(t, Subspace::coordinate(t.dim(), idx));
  ASSERT_TRUE(closure.closed);
  auto series = lower_central_series(*closure.restricted, true);
  auto expected = lcs_dims(g.positive_dims());
  std::vector<std::size_t> want(expected.begin(), expected.end());
  EXPECT_EQ(series.dims, want);
}

}  // namespace

TEST(Chevalley, SplitFormsSatisfyJacobiAndGrading) {
  for (auto name : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"}) check_split_form(name);
}

TEST(Chevalley, KillingFormNondegenerate) {
  for (auto name : {"A2", "B2", "G2", "C3"}) {
    auto g = chevalley_split_form(CartanMatrix::parse(name));
    EXPECT_FALSE(determinant(killing_form(*g.bracket).matrix()).is_zero()) << name;
  }
}

TEST(Chevalley, E8) {
  auto g = chevalley_split_form(CartanMatrix::make('E', 8));
  EXPECT_EQ(g.bracket->dim(), 248);
  EXPECT_TRUE(jacobi_check(*g.bracket).empty());
}

TEST(Chevalley, Deterministic) {
  auto a = chevalley_split_form(CartanMatrix::make('F', 4));
  auto b = chevalley_split_form(CartanMatrix::make('F', 4));
  EXPECT_EQ(*a.bracket, *b.bracket);
}

TEST(Tabulated, Forms) {
  auto sp = tabulated_graded_form("Sp(8,4)");
  EXPECT_EQ(sp.positive_dims(), (std::vector<int>{16, 7, 4, 3}));
  EXPECT_EQ(lcs_dims(sp.positive_dims()), (std::vector<int>{30, 14, 7, 3, 0}));
  EXPECT_EQ(sp.dim(0), 18);
  EXPECT_FALSE(sp.bracket);
  auto f4 = tabulated_graded_form("F4^{-20}");
  EXPECT_EQ(f4.positive_dims(), (std::vector<int>{8, 7}));
  EXPECT_EQ(f4.dim(0), 22);
  EXPECT_EQ(lcs_dims(f4.positive_dims()), (std::vector<int>{15, 7, 0}));
  auto e8 = tabulated_graded_form("E8^{-24}");
  EXPECT_EQ(e8.positive_dims(), (std::vector<int>{18, 17, 17, 17, 10, 9, 9, 8, 1, 1, 1}));
  EXPECT_EQ(e8.dim(0), 32);
  EXPECT_EQ(e8.total_dim(), 248);
  EXPECT_EQ(tabulated_graded_form("E7^{-25}").total_dim(), 133);
  for (int p = 2; p <= 7; ++p) {
    auto so = tabulated_graded_form("SO(p+1,2)", p);
    EXPECT_EQ(so.total_dim(), (p + 3) * (p + 2) / 2);
    EXPECT_EQ(lcs_dims(so.positive_dims()), (std::vector<int>{2 * p, p, 1, 0}));
  }
  EXPECT_THROW(tabulated_graded_form("G2^{x}"), std::invalid_argument);
  EXPECT_THROW(tabulated_graded_form("SO(p+1,2)", 1), std::invalid_argument);
  EXPECT_THROW(sp.piece(1), std::logic_error);
}
