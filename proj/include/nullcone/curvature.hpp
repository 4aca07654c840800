#ifndef NULLCONE_CURVATURE_HPP
#define NULLCONE_CURVATURE_HPP

#include "nullcone/algebra.hpp"
#include "nullcone/frame.hpp"
#include "nullcone/killing.hpp"
#include "nullcone/linalg.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nullcone {

namespace detail {

inline std::uint32_t pack3(int a, int b, int c) {
  return static_cast<std::uint32_t>(a) << 20 | static_cast<std::uint32_t>(b) << 10 | static_cast<std::uint32_t>(c);
}
inline std::uint64_t pack4(int a, int b, int c, int d) {
  return static_cast<std::uint64_t>(pack3(a, b, c)) << 10 | static_cast<std::uint64_t>(d);
}
inline std::array<int, 4> unpack4(std::uint64_t k) {
  return {static_cast<int>(k >> 30 & 1023), static_cast<int>(k >> 20 & 1023), static_cast<int>(k >> 10 & 1023), static_cast<int>(k & 1023)};
}

inline void accumulate(std::unordered_map<std::uint64_t, Rational>& m, std::uint64_t key, const Rational& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = m.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) m.erase(it);
  }
}

/// Traces of M, M^2, ..., M^count for a sparse square matrix; stops
/// multiplying once a power vanishes.
inline std::vector<Rational> power_traces(const SparseMatrix& m, std::size_t count) {
  std::vector<Rational> out(count);
  SparseMatrix p = m;
  for (std::size_t k = 0; k < count; ++k) {
    if (p.is_zero()) break;
    out[k] = p.trace();
    if (k + 1 < count) p = p * m;
  }
  return out;
}

}  // namespace detail

/// Levi-Civita connection ∇_{e_a} e_b = Γ^c_{ab} e_c of the frame metric.
class ConnectionCoefficients {
 public:
  ConnectionCoefficients(const FrameLayout& L, std::unordered_map<std::uint32_t, Rational> lowered)
      : n_(L.dim()), partner_(n_ + 1), lowered_(std::move(lowered)) {
    for (int a = 1; a <= n_; ++a) partner_[a] = L.partner(a);
    for (const auto& [k, v] : lowered_) {
      int a = static_cast<int>(k >> 20), b = static_cast<int>(k >> 10 & 1023), c = static_cast<int>(k & 1023);
      by_upper_[partner_[c]].push_back({a, b, v});
    }
    for (auto& [d, list] : by_upper_)
      std::sort(list.begin(), list.end(), [](const Term& x, const Term& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  }

  struct Term {
    int a, b;
    Rational value;
  };

  int dim() const { return n_; }
  /// Γ_{abc} = g(∇_{e_a} e_b, e_c).
  Rational lowered(int a, int b, int c) const {
    auto it = lowered_.find(detail::pack3(a, b, c));
    return it == lowered_.end() ? Rational() : it->second;
  }
  /// Γ^c_{ab}.
  Rational upper(int a, int b, int c) const { return lowered(a, b, partner_[c]); }
  /// Nonzero Γ^d_{ab} for a fixed d.
  const std::vector<Term>& with_upper(int d) const {
    static const std::vector<Term> empty;
    auto it = by_upper_.find(d);
    return it == by_upper_.end() ? empty : it->second;
  }
  std::size_t nonzeros() const { return lowered_.size(); }
  bool is_zero() const { return lowered_.empty(); }

 private:
  int n_;
  std::vector<int> partner_;
  std::unordered_map<std::uint32_t, Rational> lowered_;
  std::map<int, std::vector<Term>> by_upper_;
};

/// Koszul formula in a left-invariant frame:
/// 2Γ_{abc} = ⟨[e_a,e_b],e_c⟩ - ⟨[e_b,e_c],e_a⟩ + ⟨[e_c,e_a],e_b⟩.
inline ConnectionCoefficients levi_civita(const FrameLayout& L, const StructureTensor& T) {
  check_dims(L, T);
  std::unordered_map<std::uint32_t, Rational> low;
  auto add = [&](int a, int b, int c, const Rational& v) {
    auto [it, inserted] = low.try_emplace(detail::pack3(a, b, c), v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) low.erase(it);
    }
  };
  const Rational half(1, 2);
  // ⟨[e_x,e_y],e_z⟩ = C^{partner(z)}_{xy}; each ordered pair (x, y) with
  // [e_x,e_y] ∋ C^d e_d fills the three Koszul slots where (x, y, partner(d))
  // appears.
  for (const auto& e : T.entries())
    for (int flip = 0; flip < 2; ++flip) {
      int x = flip ? e.b : e.a, y = flip ? e.a : e.b;
      Rational v = (flip ? -e.value : e.value) * half;
      int z = L.partner(e.c);
      add(x, y, z, v);
      add(z, x, y, -v);
      add(y, z, x, v);
    }
  return ConnectionCoefficients(L, std::move(low));
}

/// R^d_{cab}: coefficient of e_d in R(e_a,e_b)e_c, stored for a < b.
class RiemannTensor {
 public:
  RiemannTensor(const FrameLayout& L, std::unordered_map<std::uint64_t, Rational> upper) : n_(L.dim()), partner_(n_ + 1), upper_(std::move(upper)) {
    for (int a = 1; a <= n_; ++a) partner_[a] = L.partner(a);
  }

  int dim() const { return n_; }
  int partner(int a) const { return partner_[a]; }

  /// R^d_{cab} for any order of a, b.
  Rational component(int a, int b, int c, int d) const {
    if (a == b) return Rational();
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = upper_.find(detail::pack4(a, b, c, d));
    if (it == upper_.end()) return Rational();
    return flip ? -it->second : it->second;
  }
  /// R_{abcd} = g(R(e_a,e_b)e_c, e_d).
  Rational lowered(int a, int b, int c, int d) const { return component(a, b, c, partner_[d]); }

  /// Stored entries (a < b) as ((a, b, c, d), R^d_{cab}).
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [k, v] : upper_) f(detail::unpack4(k), v);
  }
  std::size_t nonzeros() const { return upper_.size(); }
  bool is_zero() const { return upper_.empty(); }

 private:
  int n_;
  std::vector<int> partner_;
  std::unordered_map<std::uint64_t, Rational> upper_;
};

/// R(e_a,e_b) = [A_a, A_b] - C^e_{ab} A_e with (A_a)^d_c = Γ^d_{ac}.
inline RiemannTensor riemann(const FrameLayout& L, const StructureTensor& T, const ConnectionCoefficients& G) {
  check_dims(L, T);
  const int n = T.dim();
  // cols[a][c] lists (d, Γ^d_{ac}).
  std::vector<std::map<int, std::vector<std::pair<int, Rational>>>> cols(n + 1);
  for (int d = 1; d <= n; ++d)
    for (const auto& t : G.with_upper(d)) cols[t.a][t.b].emplace_back(d, t.value);

  std::unordered_map<std::uint64_t, Rational> out;
  BracketTable table(T);
  auto apply = [&](int a, int c, const Rational& scale, std::map<std::pair<int, int>, Rational>& acc, int col) {
    auto it = cols[a].find(c);
    if (it == cols[a].end()) return;
    for (const auto& [d, v] : it->second) acc[{col, d}] += scale * v;
  };
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const auto& br = table(a, b);
      if (cols[a].empty() && cols[b].empty()) continue;
      std::map<std::pair<int, int>, Rational> acc;  // (c, d) -> R^d_{cab}
      // A_a A_b e_c = Σ_e Γ^e_{bc} A_a e_e
      for (const auto& [c, list] : cols[b])
        for (const auto& [e, v] : list) apply(a, e, v, acc, c);
      for (const auto& [c, list] : cols[a])
        for (const auto& [e, v] : list) apply(b, e, -v, acc, c);
      for (const auto& term : br)
        for (const auto& [c, list] : cols[term.c])
          for (const auto& [d, v] : list) acc[{c, d}] -= term.value * v;
      for (const auto& [cd, v] : acc)
        if (!v.is_zero()) out.emplace(detail::pack4(a, b, cd.first, cd.second), v);
    }
  return RiemannTensor(L, std::move(out));
}

struct RicciResult {
  BilinearForm tensor;  // Ric_{cb} = Σ_a R^a_{cab}
  Matrix operator_matrix;  // g^{-1} Ric
};

inline RicciResult ricci(const RiemannTensor& R) {
  const int n = R.dim();
  Matrix ric(n, n);
  R.for_each([&](const std::array<int, 4>& k, const Rational& v) {
    auto [a, b, c, d] = k;
    // R^d_{cab} with a < b feeds Ric_{cb} when d = a and Ric_{ca} (with a
    // minus sign) when d = b.
    if (d == a) ric(c - 1, b - 1) += v;
    if (d == b) ric(c - 1, a - 1) -= v;
  });
  Matrix op(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) op(a - 1, b - 1) = ric(R.partner(a) - 1, b - 1);
  return {BilinearForm(std::move(ric)), std::move(op)};
}

struct InvariantSuite {
  Rational ricci_scalar;
  std::vector<Rational> ricci_traces;
  Rational kretschmann;
  Rational ricci_cubic;
  /// R_{ab}^{cd} R_{cd}^{ef} R_{ef}^{ab}
  Rational riem_cubic;
  Rational dRiem_sq;
  std::vector<Rational> killing_traces;

  bool all_zero() const {
    auto zero = [](const Rational& r) { return r.is_zero(); };
    return ricci_scalar.is_zero() && kretschmann.is_zero() && ricci_cubic.is_zero() && riem_cubic.is_zero() && dRiem_sq.is_zero() &&
           std::all_of(ricci_traces.begin(), ricci_traces.end(), zero) && std::all_of(killing_traces.begin(), killing_traces.end(), zero);
  }

  friend bool operator==(const InvariantSuite&, const InvariantSuite&) = default;
};

namespace detail {

/// Σ R_{abcd} R^{abcd}.
inline Rational kretschmann(const RiemannTensor& R) {
  Rational s;
  // Stored entries cover a < b; the (b, a) half doubles the sum.
  R.for_each([&](const std::array<int, 4>& k, const Rational& v) {
    auto [a, b, c, d] = k;
    // stored value is R^d_{cab} = R_{abc partner(d)}
    Rational other = R.lowered(R.partner(a), R.partner(b), R.partner(c), d);
    s += v * other;
  });
  return s * Rational(2);
}

/// Trace of the cube of M_{(ab),(cd)} = R_{ab}^{cd} over ordered pairs,
/// evaluated on pairs a < b and scaled by 2^3.
inline Rational riem_cubic(const RiemannTensor& R) {
  // rows[(a,b)] lists ((c,d), M) with c < d.
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, Rational>>> rows;
  std::unordered_map<std::uint64_t, Rational> entry;
  auto key2 = [](int a, int b) { return static_cast<std::uint32_t>(a) << 10 | static_cast<std::uint32_t>(b); };
  R.for_each([&](const std::array<int, 4>& k, const Rational& v) {
    auto [a, b, c, d] = k;
    // v = R_{ab c partner(d)} = R_{ab}^{partner(c) d}
    int cu = R.partner(c);
    int du = d;
    // (c, d) and its swap are both stored; keep one of them.
    if (cu >= du) return;
    std::uint32_t p = key2(a, b), q = key2(cu, du);
    entry.emplace(static_cast<std::uint64_t>(p) << 32 | q, v);
  });
  for (const auto& [k, v] : entry)
    if (!v.is_zero()) rows[static_cast<std::uint32_t>(k >> 32)].emplace_back(static_cast<std::uint32_t>(k), v);
  Rational s;
  for (const auto& [p, row] : rows)
    for (const auto& [q, m1] : row) {
      auto it = rows.find(q);
      if (it == rows.end()) continue;
      for (const auto& [r, m2] : it->second) {
        auto back = entry.find(static_cast<std::uint64_t>(r) << 32 | p);
        if (back != entry.end()) s += m1 * m2 * back->second;
      }
    }
  return s * Rational(8);
}

/// Σ ∇_e R_{abcd} ∇^e R^{abcd}, processing one pair {e, partner(e)} at a time.
/// Plain rational arithmetic over every index order; d_riem_sq below is the
/// fast path and falls back to this one.
inline Rational d_riem_sq_exact(const RiemannTensor& R, const ConnectionCoefficients& G) {
  const int n = R.dim();
  // Lowered Riemann entries listed per slot value: for slot s, by index x,
  // entries (key, value) with that slot equal to x.
  std::vector<std::pair<std::array<int, 4>, Rational>> low;
  R.for_each([&](const std::array<int, 4>& k, const Rational& v) {
    auto [a, b, c, d] = k;
    int dd = R.partner(d);
    low.push_back({{a, b, c, dd}, v});
    low.push_back({{b, a, c, dd}, -v});
  });
  std::array<std::vector<std::vector<std::size_t>>, 4> by_slot;
  for (auto& s : by_slot) s.assign(n + 1, {});
  for (std::size_t i = 0; i < low.size(); ++i)
    for (int s = 0; s < 4; ++s) by_slot[s][low[i].first[s]].push_back(i);

  // Γ^f_{e x} for fixed e, grouped by f: gamma_e[f] = list (x, value).
  auto slice = [&](int e) {
    std::unordered_map<std::uint64_t, Rational> out;
    for (int f = 1; f <= n; ++f)
      for (const auto& t : G.with_upper(f)) {
        if (t.a != e) continue;
        const int x = t.b;
        // -Γ^f_{ex} R_{..f..} with x replacing f in the same slot.
        for (int s = 0; s < 4; ++s)
          for (std::size_t i : by_slot[s][f]) {
            auto idx = low[i].first;
            idx[s] = x;
            detail::accumulate(out, pack4(idx[0], idx[1], idx[2], idx[3]), -t.value * low[i].second);
          }
      }
    return out;
  };
  Rational total;
  std::vector<bool> done(n + 1, false);
  for (int e = 1; e <= n; ++e) {
    if (done[e]) continue;
    int pe = R.partner(e);
    done[e] = done[pe] = true;
    auto de = slice(e);
    if (de.empty()) continue;
    auto dpe = pe == e ? de : slice(pe);
    Rational part;
    for (const auto& [k, v] : de) {
      auto idx = unpack4(k);
      auto it = dpe.find(pack4(R.partner(idx[0]), R.partner(idx[1]), R.partner(idx[2]), R.partner(idx[3])));
      if (it != dpe.end()) part += v * it->second;
    }
    // ∇_e pairs with ∇^e = ∇_{partner(e)}; for a null pair both orders occur.
    total += pe == e ? part : part * Rational(2);
  }
  return total;
}

/// Integer form of d_riem_sq_exact: Γ and R are scaled to integers by
/// their common denominators, only index orders with a < b and c < d are
/// produced, and each slice ∇_e R is a sorted (key, value) vector. Returns
/// nullopt when a scale or partial sum leaves 64 bits.
inline std::optional<Rational> d_riem_sq_scaled(const RiemannTensor& R, const ConnectionCoefficients& G) {
  const int n = R.dim();
  using i64 = std::int64_t;
  constexpr i64 kLimit = i64{1} << 31;
  auto lcm_into = [](i64& acc, const Rational& v) {
    auto parts = v.inline_parts();
    if (!parts) return false;
    i64 g = std::gcd(acc, parts->second);
    return !__builtin_mul_overflow(acc / g, parts->second, &acc) && acc < kLimit;
  };
  auto scaled = [](const Rational& v, i64 scale, i64& out) {
    auto [num, den] = *v.inline_parts();
    return !__builtin_mul_overflow(num, scale / den, &out) && out < kLimit && out > -kLimit;
  };

  // Γ^f_{ex} grouped by e as (f, x, value).
  i64 sG = 1;
  for (int f = 1; f <= n; ++f)
    for (const auto& t : G.with_upper(f))
      if (!lcm_into(sG, t.value)) return std::nullopt;
  struct Gam {
    int f, x;
    i64 v;
  };
  std::vector<std::vector<Gam>> gam(n + 1);
  for (int f = 1; f <= n; ++f)
    for (const auto& t : G.with_upper(f)) {
      i64 v;
      if (!scaled(t.value, sG, v)) return std::nullopt;
      gam[t.a].push_back({f, t.b, v});
    }

  // Lowered entries R_{abcd} with a < b and c < d.
  i64 sR = 1;
  bool ok = true;
  R.for_each([&](const std::array<int, 4>&, const Rational& v) { ok = ok && lcm_into(sR, v); });
  if (!ok) return std::nullopt;
  struct Low {
    std::array<int, 4> idx;
    i64 v;
  };
  std::vector<Low> low;
  R.for_each([&](const std::array<int, 4>& k, const Rational& v) {
    int dd = R.partner(k[3]);
    if (k[2] >= dd) return;
    i64 w;
    if (!scaled(v, sR, w)) ok = false;
    low.push_back({{k[0], k[1], k[2], dd}, w});
  });
  if (!ok) return std::nullopt;
  // by_index[f] lists (entry, slot) for every slot holding f.
  std::vector<std::vector<std::pair<std::uint32_t, int>>> by_index(n + 1);
  for (std::size_t i = 0; i < low.size(); ++i)
    for (int s = 0; s < 4; ++s) by_index[low[i].idx[s]].emplace_back(static_cast<std::uint32_t>(i), s);

  auto key = [](int a, int b, int c, int d) {
    return static_cast<std::uint64_t>(a) << 30 | static_cast<std::uint64_t>(b) << 20 | static_cast<std::uint64_t>(c) << 10 |
           static_cast<std::uint64_t>(d);
  };
  using Slice = std::vector<std::pair<std::uint64_t, i64>>;
  auto slice = [&](int e, Slice& out) {
    out.clear();
    for (const auto& g : gam[e])
      for (auto [i, s] : by_index[g.f]) {
        auto idx = low[i].idx;
        // Replacing f by x inside its antisymmetric pair, then restoring
        // the pair's order, covers both slots of that pair.
        int o = s ^ 1;
        idx[s] = g.x;
        if (idx[s] == idx[o]) continue;
        i64 sign = -1;
        if (idx[s & 2] > idx[(s & 2) + 1]) {
          std::swap(idx[s & 2], idx[(s & 2) + 1]);
          sign = -sign;
        }
        out.emplace_back(key(idx[0], idx[1], idx[2], idx[3]), sign * g.v * low[i].v);
      }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size();) {
      std::uint64_t k = out[r].first;
      i64 sum = 0;
      for (; r < out.size() && out[r].first == k; ++r)
        if (__builtin_add_overflow(sum, out[r].second, &sum)) return false;
      if (sum != 0) out[w++] = {k, sum};
    }
    out.resize(w);
    return true;
  };

  __int128 total = 0;
  Slice de, dpe;
  std::vector<bool> done(n + 1, false);
  for (int e = 1; e <= n; ++e) {
    if (done[e]) continue;
    int pe = R.partner(e);
    done[e] = done[pe] = true;
    if (!slice(e, de)) return std::nullopt;
    if (de.empty()) continue;
    if (pe != e && !slice(pe, dpe)) return std::nullopt;
    const Slice& other = pe == e ? de : dpe;
    __int128 part = 0;
    for (const auto& [k, v] : de) {
      int a = R.partner(static_cast<int>(k >> 30)), b = R.partner(static_cast<int>(k >> 20 & 1023));
      int c = R.partner(static_cast<int>(k >> 10 & 1023)), d = R.partner(static_cast<int>(k & 1023));
      int sign = 1;
      if (a > b) std::swap(a, b), sign = -sign;
      if (c > d) std::swap(c, d), sign = -sign;
      std::uint64_t q = key(a, b, c, d);
      auto it = std::lower_bound(other.begin(), other.end(), q, [](const auto& x, std::uint64_t y) { return x.first < y; });
      if (it == other.end() || it->first != q) continue;
      __int128 prod = static_cast<__int128>(v) * it->second;
      if (__builtin_add_overflow(part, sign * prod, &part)) return std::nullopt;
    }
    if (pe != e && __builtin_add_overflow(part, part, &part)) return std::nullopt;
    if (__builtin_add_overflow(total, part, &total)) return std::nullopt;
  }
  // Four index orders per stored key; both scales enter squared.
  using Big = Rational::Big;
  using BigInt = Rational::BigInt;
  BigInt num = static_cast<i64>(total >> 64);
  num <<= 64;
  num += static_cast<std::uint64_t>(total);
  BigInt den = BigInt(sG) * sG * sR * sR;
  return Rational(Big(num * 4, den));
}

inline Rational d_riem_sq(const RiemannTensor& R, const ConnectionCoefficients& G) {
  if (auto fast = d_riem_sq_scaled(R, G)) return *fast;
  return d_riem_sq_exact(R, G);
}

}  // namespace detail

inline InvariantSuite invariant_suite(const FrameLayout& L, const StructureTensor& T) {
  check_dims(L, T);
  const int n = T.dim();
  ConnectionCoefficients G = levi_civita(L, T);
  RiemannTensor R = riemann(L, T, G);
  RicciResult ric = ricci(R);
  InvariantSuite s;
  SparseMatrix ric_op = SparseMatrix::from_dense(ric.operator_matrix);
  s.ricci_traces = detail::power_traces(ric_op, static_cast<std::size_t>(n));
  s.ricci_scalar = s.ricci_traces.empty() ? Rational() : s.ricci_traces[0];
  s.ricci_cubic = (ric_op * ric_op * ric_op).trace();
  s.kretschmann = detail::kretschmann(R);
  s.riem_cubic = detail::riem_cubic(R);
  s.dRiem_sq = detail::d_riem_sq(R, G);
  s.killing_traces = detail::power_traces(SparseMatrix::from_dense(killing_operator(L, T).matrix), static_cast<std::size_t>(n));
  return s;
}

}  // namespace nullcone

#endif  // NULLCONE_CURVATURE_HPP
