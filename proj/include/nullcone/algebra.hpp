#ifndef NULLCONE_ALGEBRA_HPP
#define NULLCONE_ALGEBRA_HPP

#include "nullcone/linalg.hpp"
#include "nullcone/rational.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

namespace nullcone {

struct JacobiViolation {
  int a, b, c;  // a < b < c
  int e;
  Rational residual;
};

/// All nonzero components of [[e_a,e_b],e_c] + [[e_b,e_c],e_a] + [[e_c,e_a],e_b]
/// over a < b < c, sorted by (a, b, c, e).
inline std::vector<JacobiViolation> jacobi_check(const StructureTensor& t) {
  BracketTable table(t);
  std::map<std::array<int, 4>, Rational> acc;
  // Each stored [e_x, e_y] (x < y) bracketed with e_z contributes to the
  // triple {x, y, z}; the term belongs to the cyclic sum with sign +1 when
  // (x, y, z) is a cyclic rotation of the sorted triple and -1 otherwise.
  for (const auto& ent : t.entries()) {
    const int x = ent.a, y = ent.b;
    for (int z = 1; z <= t.dim(); ++z) {
      if (z == x || z == y) continue;
      const bool even = (z > y) || (z < x);  // x<y<z or z<x<y are rotations of sorted order
      for (const auto& term : table(ent.c, z)) {
        Rational v = ent.value * term.value;
        if (!even) v = -v;
        std::array<int, 3> s{x, y, z};
        std::sort(s.begin(), s.end());
        acc[{s[0], s[1], s[2], term.c}] += v;
      }
    }
  }
  std::vector<JacobiViolation> out;
  for (const auto& [k, v] : acc)
    if (!v.is_zero()) out.push_back({k[0], k[1], k[2], k[3], v});
  return out;
}

/// Matrix of ad_v; column a holds the coordinates of [v, e_a].
inline Matrix adjoint_matrix(const StructureTensor& t, const Vector& v) {
  const int n = t.dim();
  if (v.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("adjoint_matrix: vector length differs from algebra dimension");
  Matrix m(n, n);
  for (const auto& e : t.entries()) {
    // [e_a, e_b] = C e_c contributes v^a C to column b and -v^b C to column a.
    if (!v[e.a - 1].is_zero()) m(e.c - 1, e.b - 1) += v[e.a - 1] * e.value;
    if (!v[e.b - 1].is_zero()) m(e.c - 1, e.a - 1) -= v[e.b - 1] * e.value;
  }
  return m;
}

/// B_{ab} = tr(ad_a ad_b), accumulated from the sparse bracket.
inline BilinearForm killing_form(const StructureTensor& t) {
  const int n = t.dim();
  BracketTable table(t);
  // by_cd[(c-1)*n + (d-1)] lists (b, C^d_{bc}).
  std::vector<std::vector<std::pair<int, Rational>>> by_cd(static_cast<std::size_t>(n) * n);
  for (int b = 1; b <= n; ++b)
    for (int c = 1; c <= n; ++c)
      for (const auto& term : table(b, c)) by_cd[static_cast<std::size_t>(c - 1) * n + (term.c - 1)].emplace_back(b, term.value);
  Matrix m(n, n);
  for (int a = 1; a <= n; ++a)
    for (int d = 1; d <= n; ++d)
      for (const auto& term : table(a, d))  // (ad_a)^c_d with c = term.c
        for (const auto& [b, v] : by_cd[static_cast<std::size_t>(term.c - 1) * n + (d - 1)]) m(a - 1, b - 1) += term.value * v;
  return BilinearForm(std::move(m));
}

/// Block direct sum of the parts followed by m central indices.
inline StructureTensor compose(const std::vector<StructureTensor>& parts, int extra_abelian) {
  if (extra_abelian < 0) throw std::invalid_argument("negative abelian padding");
  int total = extra_abelian;
  for (const auto& p : parts) total += p.dim();
  std::vector<Entry> es;
  int offset = 0;
  for (const auto& p : parts) {
    for (const auto& e : p.entries()) es.push_back({e.a + offset, e.b + offset, e.c + offset, e.value});
    offset += p.dim();
  }
  return StructureTensor::from_entries(total, std::move(es));
}

/// [A, B] as a subspace.
inline Subspace bracket_subspaces(const BracketTable& table, const Subspace& a, const Subspace& b) {
  const std::size_t n = static_cast<std::size_t>(table.dim());
  EchelonBuilder eb(n);
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) {
      Vector w(n);
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (v[j].is_zero()) continue;
          for (const auto& term : table(static_cast<int>(i + 1), static_cast<int>(j + 1))) {
            w[term.c - 1] += u[i] * v[j] * term.value;
            any = true;
          }
        }
      }
      if (any) eb.insert(std::move(w));
      if (eb.dim() == n) return eb.subspace();
    }
  return eb.subspace();
}

struct SeriesResult {
  std::vector<Subspace> terms;
  std::vector<std::size_t> dims;
  /// The last term is the zero subspace.
  bool reaches_zero = false;
};

/// Lower central series n_{k+1} = [g, n_k], stopping once a term repeats.
/// With as_nilradical the series starts at the algebra itself, otherwise at
/// [g, g].
inline SeriesResult lower_central_series(const StructureTensor& t, bool as_nilradical = false) {
  BracketTable table(t);
  const std::size_t n = static_cast<std::size_t>(t.dim());
  Subspace whole = Subspace::whole(n);
  SeriesResult r;
  Subspace cur = as_nilradical ? whole : bracket_subspaces(table, whole, whole);
  while (true) {
    r.terms.push_back(cur);
    r.dims.push_back(cur.dim());
    if (cur.dim() == 0) break;
    Subspace next = bracket_subspaces(table, whole, cur);
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
  }
  r.reaches_zero = r.dims.back() == 0;
  return r;
}

/// Derived series g, [g,g], [[g,g],[g,g]], ... stopping once a term repeats.
inline SeriesResult derived_series(const StructureTensor& t) {
  BracketTable table(t);
  SeriesResult r;
  Subspace cur = Subspace::whole(static_cast<std::size_t>(t.dim()));
  while (true) {
    r.terms.push_back(cur);
    r.dims.push_back(cur.dim());
    if (cur.dim() == 0) break;
    Subspace next = bracket_subspaces(table, cur, cur);
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
  }
  r.reaches_zero = r.dims.back() == 0;
  return r;
}

inline bool is_nilpotent(const StructureTensor& t) { return lower_central_series(t).reaches_zero; }
inline bool is_solvable(const StructureTensor& t) { return derived_series(t).reaches_zero; }

struct ClosureResult {
  bool closed = false;
  std::optional<StructureTensor> restricted;
};

/// Checks [S, S] ⊆ S. The restriction is expressed in the echelon basis of S
/// (for a coordinate subspace that is the listed axes in increasing order).
inline ClosureResult subalgebra_closure_check(const StructureTensor& t, const Subspace& s) {
  if (s.ambient_dim() != static_cast<std::size_t>(t.dim())) throw DimensionMismatch("subspace ambient dimension differs from algebra");
  const auto& basis = s.basis();
  const std::size_t m = basis.size();
  std::vector<std::size_t> pivots;
  for (const auto& v : basis) {
    std::size_t c = 0;
    while (v[c].is_zero()) ++c;
    pivots.push_back(c);
  }
  StructureTensor::Builder builder(static_cast<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Vector w = t.bracket(basis[i], basis[j]);
      // In reduced echelon form the coordinate along basis k is w at pivot k.
      Vector rebuilt(w.size());
      for (std::size_t k = 0; k < m; ++k) {
        const Rational& coef = w[pivots[k]];
        if (coef.is_zero()) continue;
        builder.add(static_cast<int>(i + 1), static_cast<int>(j + 1), static_cast<int>(k + 1), coef);
        for (std::size_t q = 0; q < w.size(); ++q)
          if (!basis[k][q].is_zero()) rebuilt[q] += coef * basis[k][q];
      }
      if (rebuilt != w) return {false, std::nullopt};
    }
  return {true, builder.build()};
}

struct NilpotencyResult {
  bool nilpotent = false;
  std::optional<std::size_t> index;
  std::vector<std::size_t> rank_sequence;
};

/// Ranks of M, M^2, ... until a power vanishes or n powers are taken.
inline NilpotencyResult nilpotent_operator_check(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("nilpotent_operator_check needs a square matrix");
  NilpotencyResult r;
  const std::size_t n = m.rows();
  if (n == 0) {
    r.nilpotent = true;
    r.index = 1;
    r.rank_sequence.push_back(0);
    return r;
  }
  SparseMatrix base = SparseMatrix::from_dense(m);
  SparseMatrix power = base;
  for (std::size_t k = 1; k <= n; ++k) {
    if (power.is_zero()) {
      r.rank_sequence.push_back(0);
      r.nilpotent = true;
      r.index = k;
      return r;
    }
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (power.row(i).empty()) continue;
      Vector v(n);
      for (const auto& [j, x] : power.row(i)) v[j] = x;
      rows.push_back(std::move(v));
    }
    r.rank_sequence.push_back(row_reduce(rows, n).size());
    power = power * base;
  }
  return r;
}

}  // namespace nullcone

#endif  // NULLCONE_ALGEBRA_HPP
