#ifndef NULLCONE_ROOTSYSTEM_HPP
#define NULLCONE_ROOTSYSTEM_HPP

#include "nullcone/linalg.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nullcone {

/// Cartan matrix of a simple type with Bourbaki numbering. Entries are
/// a_ij = 2(α_i, α_j)/(α_j, α_j); gram holds (α_i, α_j) scaled so the
/// shortest simple root has (α, α) = 2.
class CartanMatrix {
 public:
  static CartanMatrix make(char type, int rank) {
    CartanMatrix c;
    c.type_ = type;
    c.rank_ = rank;
    const int n = rank;
    auto bad = [&] { throw std::invalid_argument("invalid Cartan type " + std::string(1, type) + std::to_string(rank)); };
    if (n < 1) bad();
    std::vector<int> len(n, 2);
    std::vector<std::pair<int, int>> edges;  // 0-based simple roots joined in the diagram
    switch (type) {
      case 'A':
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        break;
      case 'B':
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        if (n >= 2) std::fill(len.begin(), len.end() - 1, 4);
        break;
      case 'C':
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        if (n >= 2) len[n - 1] = 4;
        break;
      case 'D':
        if (n < 3) bad();
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 3, n - 1);
        break;
      case 'E':
        if (n < 6 || n > 8) bad();
        // 1-3-4-5-6-7-8 with 2 attached to 4.
        edges = {{0, 2}, {2, 3}, {1, 3}};
        for (int i = 3; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        break;
      case 'F':
        if (n != 4) bad();
        edges = {{0, 1}, {1, 2}, {2, 3}};
        len = {4, 4, 2, 2};
        break;
      case 'G':
        if (n != 2) bad();
        edges = {{0, 1}};
        len = {2, 6};
        break;
      default: bad();
    }
    c.gram_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) c.gram_[i][i] = len[i];
    for (auto [i, j] : edges) {
      // Simply laced edges give (α_i, α_j) = -1 for two short roots; in
      // general the inner product is -max(len)/2.
      int v = -std::max(len[i], len[j]) / 2;
      c.gram_[i][j] = c.gram_[j][i] = v;
    }
    c.entries_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c.entries_[i][j] = 2 * c.gram_[i][j] / c.gram_[j][j];
    return c;
  }

  /// Parses "G2", "E8", "A1" and the like.
  static CartanMatrix parse(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("invalid Cartan type " + s);
    int r = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("invalid Cartan type " + s);
      r = r * 10 + (s[i] - '0');
      if (r > 64) throw std::invalid_argument("invalid Cartan type " + s);
    }
    return make(static_cast<char>(std::toupper(static_cast<unsigned char>(s[0]))), r);
  }

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const { return std::string(1, type_) + std::to_string(rank_); }
  const std::vector<std::vector<int>>& entries() const { return entries_; }
  const std::vector<std::vector<int>>& gram() const { return gram_; }

  int inner(const std::vector<int>& x, const std::vector<int>& y) const {
    int s = 0;
    for (int i = 0; i < rank_; ++i)
      if (x[i] != 0)
        for (int j = 0; j < rank_; ++j) s += x[i] * y[j] * gram_[i][j];
    return s;
  }

 private:
  char type_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<int>> entries_, gram_;
};

/// Root as coefficients over the simple roots.
struct Root {
  std::vector<int> coeffs;
  int height() const { return std::accumulate(coeffs.begin(), coeffs.end(), 0); }
  bool positive() const { return height() > 0; }
  Root operator-() const {
    Root r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
  }
  friend Root operator+(Root a, const Root& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
  }
  friend Root operator-(Root a, const Root& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
  }
  friend bool operator==(const Root&, const Root&) = default;
};

/// Total order on positive roots: height, then coefficient vectors in
/// decreasing lexicographic order (so the simple roots come as α_1, α_2, ...).
inline bool root_order(const Root& x, const Root& y) {
  int hx = x.height(), hy = y.height();
  if (hx != hy) return hx < hy;
  return x.coeffs > y.coeffs;
}

/// Positive roots in root_order, by closure under adding simple roots with
/// α_i-strings: β + α_i is a root iff q = p - ⟨β, α_i^∨⟩ > 0, where p counts
/// how far β - α_i, β - 2α_i, ... stay roots.
inline std::vector<Root> positive_roots(const CartanMatrix& C) {
  const int n = C.rank();
  std::map<std::vector<int>, bool> known;
  std::vector<std::vector<Root>> by_height(2);
  for (int i = 0; i < n; ++i) {
    Root r{std::vector<int>(n, 0)};
    r.coeffs[i] = 1;
    by_height[1].push_back(r);
    known[r.coeffs] = true;
  }
  for (std::size_t h = 1; !by_height[h].empty(); ++h) {
    by_height.emplace_back();
    for (const auto& beta : by_height[h])
      for (int i = 0; i < n; ++i) {
        Root down = beta;
        int p = 0;
        while (true) {
          down.coeffs[i] -= 1;
          if (!known.count(down.coeffs)) break;
          ++p;
        }
        int bi = 0;
        for (int j = 0; j < n; ++j) bi += beta.coeffs[j] * C.gram()[j][i];
        const int coroot_pairing = 2 * bi / C.gram()[i][i];
        if (p - coroot_pairing > 0) {
          Root up = beta;
          up.coeffs[i] += 1;
          if (!known.count(up.coeffs)) {
            known[up.coeffs] = true;
            by_height[h + 1].push_back(up);
          }
        }
      }
  }
  std::vector<Root> out;
  for (auto& level : by_height)
    for (auto& r : level) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

/// dims[λ-1] = number of positive roots of height λ, for λ = 1..Δ.
inline std::vector<int> height_grading(const std::vector<Root>& roots) {
  std::vector<int> dims;
  for (const auto& r : roots) {
    int h = r.height();
    if (h < 1) throw std::invalid_argument("height_grading expects positive roots");
    if (static_cast<int>(dims.size()) < h) dims.resize(h, 0);
    ++dims[h - 1];
  }
  for (std::size_t i = 1; i < dims.size(); ++i)
    if (dims[i] > dims[i - 1]) throw std::logic_error("height dimensions are not weakly decreasing");
  return dims;
}

/// Tail sums of the grading dimensions, ending with 0.
inline std::vector<int> lcs_dims(const std::vector<int>& dims) {
  std::vector<int> out(dims.size() + 1, 0);
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) out[i] = out[i + 1] + dims[i];
  return out;
}

/// Z-graded algebra g = ⊕ g_λ, λ ∈ [-Δ, Δ]. Dims-only objects (tabulated real
/// forms) carry no bracket and no basis.
struct GradedAlgebra {
  struct Origin {
    std::string kind;  // "split", "tabulated", "merged", "complexified"
    std::string label;
  };

  int delta = 0;
  /// dims[λ] for λ = -Δ..Δ.
  std::map<int, int> dims;
  /// Basis indices (1-based) of each piece, in the rootsystem order.
  std::map<int, std::vector<int>> pieces;
  std::optional<StructureTensor> bracket;
  /// Basis names: root coefficients like "(1,0)" or "(-1,-1)", and "H1"...
  std::vector<std::string> labels;
  int dim_a = 0;
  int dim_m0 = 0;
  Origin origin;

  int dim(int lambda) const {
    auto it = dims.find(lambda);
    return it == dims.end() ? 0 : it->second;
  }
  int total_dim() const {
    int s = 0;
    for (const auto& [l, d] : dims) s += d;
    return s;
  }
  /// dims of g_1..g_Δ.
  std::vector<int> positive_dims() const {
    std::vector<int> out;
    for (int l = 1; l <= delta; ++l) out.push_back(dim(l));
    return out;
  }
  Subspace piece(int lambda) const {
    if (!bracket) throw std::logic_error("dims-only graded algebra has no basis");
    auto it = pieces.find(lambda);
    return Subspace::coordinate(static_cast<std::size_t>(bracket->dim()), it == pieces.end() ? std::vector<int>{} : it->second);
  }
  /// Grade of each basis index (1-based; entry 0 unused).
  std::vector<int> grade_of() const {
    std::vector<int> g(bracket ? bracket->dim() + 1 : 1, 0);
    for (const auto& [l, idx] : pieces)
      for (int a : idx) g[a] = l;
    return g;
  }
};

namespace detail {

/// Chevalley structure constants N_{r,s} for [e_r, e_s] = N_{r,s} e_{r+s},
/// signs fixed by N = +(p+1) on extraspecial pairs.
class ChevalleyConstants {
 public:
  ChevalleyConstants(const CartanMatrix& C, const std::vector<Root>& positive) : C_(C), positive_(positive) {
    for (std::size_t i = 0; i < positive_.size(); ++i) index_[positive_[i].coeffs] = static_cast<int>(i);
    // Extraspecial pair of ξ: the special pair (α, β), α ≺ β, α + β = ξ, with
    // α least in the order.
    for (std::size_t j = 0; j < positive_.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) {
        Root xi = positive_[i] + positive_[j];
        auto it = index_.find(xi.coeffs);
        if (it == index_.end()) continue;
        auto& e = extraspecial_[it->second];
        if (!e || static_cast<int>(i) < e->first || (static_cast<int>(i) == e->first && static_cast<int>(j) < e->second))
          e = std::make_pair(static_cast<int>(i), static_cast<int>(j));
      }
  }

  bool is_root(const Root& r) const {
    if (r.positive()) return index_.count(r.coeffs) > 0;
    return index_.count((-r).coeffs) > 0 && r.height() != 0;
  }

  int N(const Root& x, const Root& y) {
    Root z = x + y;
    if (z.height() == 0 || !is_root(z) || !is_root(x) || !is_root(y)) return 0;
    bool px = x.positive(), py = y.positive();
    if (px && py) return positive_pair(x, y);
    if (!px && !py) return -N(-x, -y);
    Root w = -z;  // x + y + w = 0
    if (w.positive()) {
      // N_{x,y}/(w,w) = N_{y,w}/(x,x) = N_{w,x}/(y,y)
      if (py) return scaled(N(y, w), len(w), len(x));
      return scaled(N(w, x), len(w), len(y));
    }
    return -N(-x, -y);
  }

  int len(const Root& r) const { return C_.inner(r.coeffs, r.coeffs); }

 private:
  static int scaled(int v, int num, int den) {
    if ((v * num) % den != 0) throw std::logic_error("non-integral Chevalley constant");
    return v * num / den;
  }

  int string_p(const Root& beta, const Root& alpha) const {
    int p = 0;
    Root r = beta - alpha;
    while (is_root(r)) {
      ++p;
      r = r - alpha;
    }
    return p;
  }

  int positive_pair(const Root& r, const Root& s) {
    auto key = std::make_pair(index_.at(r.coeffs), index_.at(s.coeffs));
    auto memo = memo_.find(key);
    if (memo != memo_.end()) return memo->second;
    int xi = index_.at((r + s).coeffs);
    auto [ia, ib] = *extraspecial_.at(xi);
    const Root& alpha = positive_[ia];
    const Root& beta = positive_[ib];
    int result;
    if (key.first == ia) {
      result = string_p(beta, alpha) + 1;
    } else if (key.first == ib) {
      result = -(string_p(beta, alpha) + 1);
    } else if (key.first > key.second) {
      result = -positive_pair(s, r);
    } else {
      // r + s - α - β = 0 with no opposite pair:
      // N_{r,s} N_{-α,-β}/(ξ,ξ) + N_{s,-α}N_{r,-β}/(s-α,s-α) + N_{-α,r}N_{s,-β}/(r-α,r-α) = 0
      // and N_{-α,-β} = -N_{α,β}.
      const int nab = string_p(beta, alpha) + 1;
      Rational acc;
      Root sa = s - alpha, ra = r - alpha;
      if (is_root(sa)) acc += Rational(N(s, -alpha) * N(r, -beta), len(sa));
      if (is_root(ra)) acc += Rational(N(-alpha, r) * N(s, -beta), len(ra));
      Rational v = acc * Rational(len(r + s)) / Rational(nab);
      if (!v.is_integer()) throw std::logic_error("non-integral Chevalley constant");
      result = static_cast<int>(v.to_int64());
    }
    memo_[key] = result;
    return result;
  }

  const CartanMatrix& C_;
  const std::vector<Root>& positive_;
  std::map<std::vector<int>, int> index_;
  std::map<int, std::optional<std::pair<int, int>>> extraspecial_;
  std::map<std::pair<int, int>, int> memo_;
};

}  // namespace detail

inline std::string root_label(const std::vector<int>& coeffs) {
  std::string s = "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs[i]);
  return s + ")";
}

/// Chevalley basis of the split form. Basis order: E_α for positive α in
/// root_order, then H_1..H_r, then E_{-α} in root_order. [H_i, E_α] =
/// ⟨α, α_i^∨⟩E_α, [E_α, E_{-α}] = H_α, [E_α, E_β] = N_{αβ}E_{α+β}.
inline GradedAlgebra chevalley_split_form(const CartanMatrix& C) {
  const int r = C.rank();
  const std::vector<Root> pos = positive_roots(C);
  const int np = static_cast<int>(pos.size());
  const int n = 2 * np + r;
  auto e_pos = [&](int i) { return i + 1; };
  auto h = [&](int i) { return np + i + 1; };
  auto e_neg = [&](int i) { return np + r + i + 1; };

  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < np; ++i) idx[pos[i].coeffs] = i;
  auto index_of = [&](const Root& x) { return x.positive() ? e_pos(idx.at(x.coeffs)) : e_neg(idx.at((-x).coeffs)); };
  auto simple_len = [&](int i) { return C.gram()[i][i]; };

  detail::ChevalleyConstants nc(C, pos);
  StructureTensor::Builder b(n);
  std::vector<Root> all;
  for (const auto& p : pos) {
    all.push_back(p);
    all.push_back(-p);
  }
  for (const auto& x : all) {
    // [H_i, E_x] = ⟨x, α_i^∨⟩ E_x
    for (int i = 0; i < r; ++i) {
      int xi = 0;
      for (int j = 0; j < r; ++j) xi += x.coeffs[j] * C.gram()[j][i];
      int v = 2 * xi / simple_len(i);
      if (v != 0) b.add(h(i), index_of(x), index_of(x), Rational(v));
    }
    if (x.positive()) {
      // H_x = Σ x_i (α_i,α_i)/(x,x) H_i
      int xx = nc.len(x);
      for (int i = 0; i < r; ++i) {
        int num = x.coeffs[i] * simple_len(i);
        if (num == 0) continue;
        if (num % xx != 0) throw std::logic_error("non-integral coroot");
        b.add(index_of(x), index_of(-x), h(i), Rational(num / xx));
      }
    }
    for (const auto& y : all) {
      if (index_of(y) <= index_of(x)) continue;
      if (y == -x) continue;
      Root s = x + y;
      int v = nc.N(x, y);
      if (v != 0) b.add(index_of(x), index_of(y), index_of(s), Rational(v));
    }
  }

  GradedAlgebra g;
  g.bracket = b.build();
  g.dim_a = r;
  g.origin = {"split", C.name()};
  for (int i = 0; i < np; ++i) {
    int ht = pos[i].height();
    g.pieces[ht].push_back(e_pos(i));
    g.pieces[-ht].push_back(e_neg(i));
    g.delta = std::max(g.delta, ht);
  }
  for (int i = 0; i < r; ++i) g.pieces[0].push_back(h(i));
  g.labels.resize(n);
  for (int i = 0; i < np; ++i) {
    g.labels[e_pos(i) - 1] = root_label(pos[i].coeffs);
    g.labels[e_neg(i) - 1] = root_label((-pos[i]).coeffs);
  }
  for (int i = 0; i < r; ++i) g.labels[h(i) - 1] = "H" + std::to_string(i + 1);
  for (auto& [l, v] : g.pieces) {
    std::sort(v.begin(), v.end());
    g.dims[l] = static_cast<int>(v.size());
  }
  return g;
}

/// Graded dimensions of the tabulated real forms. Names: "SO(p+1,2)" (with
/// param p ≥ 2), "Sp(8,4)", "F4^{-20}", "E7^{-25}", "E8^{-24}".
inline GradedAlgebra tabulated_graded_form(const std::string& name, int param = 0) {
  std::vector<int> pos;
  int dim_a = 0, dim_m0 = 0;
  std::string label = name;
  if (name == "SO(p+1,2)") {
    if (param < 2) throw std::invalid_argument("SO(p+1,2) needs p >= 2");
    const int p = param;
    pos = {p, p - 1, 1};
    dim_a = 2;
    dim_m0 = (p - 1) * (p - 2) / 2;
    label = "SO(" + std::to_string(p + 1) + ",2)";
  } else if (name == "Sp(8,4)") {
    pos = {16, 7, 4, 3};
    dim_a = 2;
    dim_m0 = 16;
  } else if (name == "F4^{-20}") {
    pos = {8, 7};
    dim_a = 1;
    dim_m0 = 21;
  } else if (name == "E7^{-25}") {
    pos = {17, 16, 9, 8, 1};
    dim_a = 3;
    dim_m0 = 28;
  } else if (name == "E8^{-24}") {
    pos = {18, 17, 17, 17, 10, 9, 9, 8, 1, 1, 1};
    dim_a = 4;
    dim_m0 = 28;
  } else {
    throw std::invalid_argument("unknown tabulated real form " + name);
  }
  GradedAlgebra g;
  g.delta = static_cast<int>(pos.size());
  g.dim_a = dim_a;
  g.dim_m0 = dim_m0;
  g.dims[0] = dim_a + dim_m0;
  for (int l = 1; l <= g.delta; ++l) g.dims[l] = g.dims[-l] = pos[l - 1];
  g.origin = {"tabulated", label};
  return g;
}

}  // namespace nullcone

#endif  // NULLCONE_ROOTSYSTEM_HPP
