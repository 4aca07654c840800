#ifndef NULLCONE_FEASIBILITY_HPP
#define NULLCONE_FEASIBILITY_HPP

#include "nullcone/frame.hpp"
#include "nullcone/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace nullcone {

/// Exact solvers for the polyhedron {x ≥ 0, ⟨x, b⟩ ≤ -1 for every b}.
namespace feasibility {

/// One inequality coeffs·x ≤ rhs; history marks the input rows it was
/// combined from.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
  boost::dynamic_bitset<> history;
};

inline std::vector<Inequality> constraints(int p, const std::set<BoostWeight>& weights) {
  std::vector<Inequality> rows;
  const std::size_t total = weights.size() + static_cast<std::size_t>(p);
  for (const auto& b : weights) {
    if (static_cast<int>(b.size()) != p) throw DimensionMismatch("boost weight length differs from p");
    Inequality r{std::vector<Rational>(p), Rational(-1), boost::dynamic_bitset<>(total)};
    for (int i = 0; i < p; ++i) r.coeffs[i] = b[i];
    r.history.set(rows.size());
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < p; ++i) {
    Inequality r{std::vector<Rational>(p), Rational(0), boost::dynamic_bitset<>(total)};
    r.coeffs[i] = -1;
    r.history.set(rows.size());
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Scales a row so its first nonzero coefficient is ±1 and drops rows
/// dominated by one with the same coefficients, a tighter or equal
/// right-hand side and a history contained in theirs. The history condition
/// keeps the Chernikov test below valid.
inline std::vector<Inequality> deduplicate(const std::vector<Inequality>& rows) {
  std::map<std::vector<Rational>, std::vector<std::pair<Rational, boost::dynamic_bitset<>>>> groups;
  std::optional<Inequality> contradiction;
  for (const auto& r : rows) {
    std::size_t lead = 0;
    while (lead < r.coeffs.size() && r.coeffs[lead].is_zero()) ++lead;
    if (lead == r.coeffs.size()) {
      // Constant rows only matter when violated; keep one witness of that.
      if (r.rhs.sign() < 0 && !contradiction) contradiction = r;
      continue;
    }
    Rational s = r.coeffs[lead].abs().reciprocal();
    std::vector<Rational> c = r.coeffs;
    for (auto& v : c) v *= s;
    Rational rhs = r.rhs * s;
    auto& group = groups[c];
    bool dominated = false;
    for (const auto& [orhs, oh] : group)
      if (orhs <= rhs && oh.is_subset_of(r.history)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    std::erase_if(group, [&](const auto& e) { return rhs <= e.first && r.history.is_subset_of(e.second); });
    group.emplace_back(rhs, r.history);
  }
  std::vector<Inequality> out;
  if (contradiction) out.push_back(*contradiction);
  for (auto& [c, group] : groups)
    for (auto& [rhs, h] : group) out.push_back({c, rhs, h});
  return out;
}

/// Fourier–Motzkin elimination. Returns the lexicographically least feasible
/// point (x_1 minimal, then x_2, ...), or nothing when the system is empty.
/// Combinations built from more than s+1 input rows after s eliminations are
/// redundant (Chernikov) and dropped.
inline std::optional<std::vector<Rational>> fourier_motzkin(int p, const std::set<BoostWeight>& weights) {
  // stages[j] holds the system in the variables x_1..x_j.
  std::vector<std::vector<Inequality>> stages(p + 1);
  stages[p] = deduplicate(constraints(p, weights));
  for (int j = p - 1; j >= 0; --j) {
    std::vector<Inequality> next, pos, neg;
    for (const auto& r : stages[j + 1]) {
      int s = r.coeffs[j].sign();
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    const std::size_t eliminated = static_cast<std::size_t>(p - j);
    for (const auto& u : pos)
      for (const auto& l : neg) {
        boost::dynamic_bitset<> h = u.history | l.history;
        if (h.count() > eliminated + 1) continue;
        Rational fu = u.coeffs[j].reciprocal();
        Rational fl = (-l.coeffs[j]).reciprocal();
        Inequality c{std::vector<Rational>(p), u.rhs * fu + l.rhs * fl, std::move(h)};
        for (int i = 0; i < p; ++i) c.coeffs[i] = u.coeffs[i] * fu + l.coeffs[i] * fl;
        c.coeffs[j] = 0;
        next.push_back(std::move(c));
      }
    stages[j] = deduplicate(next);
  }
  for (const auto& r : stages[0])
    if (r.rhs.sign() < 0) return std::nullopt;

  std::vector<Rational> x(p);
  for (int j = 0; j < p; ++j) {
    std::optional<Rational> lower;
    for (const auto& r : stages[j + 1]) {
      if (r.coeffs[j].sign() >= 0) continue;
      Rational rest = r.rhs;
      for (int i = 0; i < j; ++i) rest -= r.coeffs[i] * x[i];
      Rational bound = rest / r.coeffs[j];
      if (!lower || bound > *lower) lower = bound;
    }
    x[j] = lower.value_or(Rational(0));
  }
  return x;
}

/// Phase-one simplex with Bland's rule on  -B x - s + a = 1,  x, s, a ≥ 0.
/// Returns a basic feasible x, or nothing when the artificial optimum is
/// positive.
inline std::optional<std::vector<Rational>> simplex(int p, const std::set<BoostWeight>& weights) {
  const int m = static_cast<int>(weights.size());
  if (m == 0) return std::vector<Rational>(p);
  const int nv = p + 2 * m;  // x, surplus, artificial
  // Tableau rows 0..m-1 are constraints, row m is the phase-one objective
  // (reduced costs); the last column is the right-hand side.
  std::vector<std::vector<Rational>> tab(m + 1, std::vector<Rational>(nv + 1));
  std::vector<int> basis(m);
  int row = 0;
  for (const auto& b : weights) {
    for (int i = 0; i < p; ++i) tab[row][i] = -b[i];
    tab[row][p + row] = -1;
    tab[row][p + m + row] = 1;
    tab[row][nv] = 1;
    basis[row] = p + m + row;
    ++row;
  }
  // Objective: minimize Σ a. Reduced cost row = -Σ constraint rows on x, s.
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= nv; ++c)
      if (c < p + m || c == nv) tab[m][c] -= tab[r][c];

  while (true) {
    int enter = -1;
    for (int c = 0; c < nv; ++c)
      if (tab[m][c].sign() < 0) {
        enter = c;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int r = 0; r < m; ++r) {
      if (tab[r][enter].sign() <= 0) continue;
      Rational ratio = tab[r][nv] / tab[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase one
    Rational piv = tab[leave][enter].reciprocal();
    for (auto& v : tab[leave])
      if (!v.is_zero()) v *= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave || tab[r][enter].is_zero()) continue;
      Rational f = tab[r][enter];
      for (int c = 0; c <= nv; ++c)
        if (!tab[leave][c].is_zero()) tab[r][c] -= f * tab[leave][c];
    }
    basis[leave] = enter;
  }
  if (!tab[m][nv].is_zero()) return std::nullopt;
  std::vector<Rational> x(p);
  for (int r = 0; r < m; ++r)
    if (basis[r] < p) x[basis[r]] = tab[r][nv];
  return x;
}

}  // namespace feasibility

struct FeasibilityProblem {
  int p = 0;
  std::set<BoostWeight> weights;
};

/// Certifying class for the weights, normalized descending, or nothing when
/// the polyhedron is empty. An empty support gets the all-ones class.
inline std::optional<NormalizedClass> find_class(const FeasibilityProblem& P) {
  std::optional<std::vector<Rational>> x;
  if (P.weights.empty())
    x = std::vector<Rational>(P.p, Rational(1));
  else if (P.p <= 6)
    x = feasibility::fourier_motzkin(P.p, P.weights);
  else
    x = feasibility::simplex(P.p, P.weights);
  if (!x) return std::nullopt;
  return normalize_class(*x);
}

}  // namespace nullcone

#endif  // NULLCONE_FEASIBILITY_HPP
