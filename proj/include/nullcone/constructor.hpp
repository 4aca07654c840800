#ifndef NULLCONE_CONSTRUCTOR_HPP
#define NULLCONE_CONSTRUCTOR_HPP

#include "nullcone/algebra.hpp"
#include "nullcone/frame.hpp"
#include "nullcone/rootsystem.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullcone {

/// Class values with multiplicities, largest first.
using ClassMultiset = std::map<int, int, std::greater<int>>;

/// One column of the pairing: multiplicity slots of class 2λ+1, N- side
/// g_{-λ}, N+ side g_{λ+1} followed by padding central directions.
struct PairingColumn {
  int lambda = 0;
  int class_value = 1;
  int multiplicity = 0;  // dim g_{-λ}
  int nplus_dim = 0;     // dim g_{λ+1}
  int padding = 0;       // m_{λ+1} = dim g_λ - dim g_{λ+1}
};

struct PairingPlan {
  std::vector<PairingColumn> columns;  // λ = Δ down to 0
  int m = 0;
  int p = 0;

  ClassMultiset multiset() const {
    ClassMultiset out;
    for (const auto& c : columns)
      if (c.multiplicity > 0) out[c.class_value] += c.multiplicity;
    return out;
  }
  /// Class vector in slot order (descending).
  std::vector<Rational> class_vector() const {
    std::vector<Rational> x;
    for (const auto& c : columns)
      for (int j = 0; j < c.multiplicity; ++j) x.emplace_back(c.class_value);
    return x;
  }
};

inline PairingPlan pairing_plan(const GradedAlgebra& G) {
  for (int l = 1; l <= G.delta; ++l) {
    if (G.dim(l) != G.dim(-l)) throw std::invalid_argument("graded pieces ±" + std::to_string(l) + " differ in dimension");
    if (G.dim(l) > G.dim(l - 1)) throw std::invalid_argument("graded dimensions are not weakly decreasing at " + std::to_string(l));
  }
  PairingPlan plan;
  for (int l = G.delta; l >= 0; --l) {
    PairingColumn c;
    c.lambda = l;
    c.class_value = 2 * l + 1;
    c.multiplicity = G.dim(-l);
    c.nplus_dim = l + 1 <= G.delta ? G.dim(l + 1) : 0;
    c.padding = c.multiplicity - c.nplus_dim;
    plan.m += c.padding;
    plan.p += c.multiplicity;
    plan.columns.push_back(c);
  }
  return plan;
}

struct NullConeRealization {
  StructureTensor algebra;
  FrameLayout layout;
  std::vector<Rational> class_vector;
  GradedAlgebra::Origin provenance;
  int padding = 0;
  /// source[a-1] = index of the graded algebra placed at a, or 0 for padding.
  std::vector<int> source;
};

/// Places g_{-λ} on the N- indices and g_{λ+1} plus padding on the N+
/// indices of the class-(2λ+1) slots, on the canonical (p, 0) layout.
inline NullConeRealization realize(const GradedAlgebra& G, const PairingPlan& plan) {
  if (!G.bracket) throw std::invalid_argument("realize needs a graded algebra with a bracket; " + G.origin.label + " is dims-only");
  const PairingPlan check = pairing_plan(G);
  if (check.p != plan.p || check.m != plan.m || check.columns.size() != plan.columns.size())
    throw std::invalid_argument("pairing plan does not match the grading");
  const int n = 2 * plan.p;
  std::vector<int> source(n, 0), target(G.bracket->dim() + 1, 0);
  int slot = 0;
  for (const auto& c : plan.columns) {
    auto piece = [&](int l) -> const std::vector<int>& {
      static const std::vector<int> empty;
      auto it = G.pieces.find(l);
      return it == G.pieces.end() ? empty : it->second;
    };
    const auto& minus = piece(-c.lambda);
    const auto& plus = piece(c.lambda + 1);
    if (static_cast<int>(minus.size()) != c.multiplicity || static_cast<int>(plus.size()) != c.nplus_dim)
      throw std::invalid_argument("pairing plan does not match the grading");
    for (int j = 0; j < c.multiplicity; ++j) {
      ++slot;
      source[2 * slot - 2] = minus[j];
      if (j < c.nplus_dim) source[2 * slot - 1] = plus[j];
    }
  }
  for (int a = 1; a <= n; ++a)
    if (source[a - 1] != 0) target[source[a - 1]] = a;
  StructureTensor::Builder b(n);
  for (const auto& e : G.bracket->entries()) b.add(target[e.a], target[e.b], target[e.c], e.value);
  return {b.build(), FrameLayout::canonical(plan.p, 0), plan.class_vector(), G.origin, plan.m, std::move(source)};
}

/// Realization from an explicit slot table: slot s puts the basis vector
/// named slots[s-1].first on N-(s) and slots[s-1].second on N+(s); "R" names
/// a padding direction. Every basis vector must be used once.
inline NullConeRealization realize_assignment(const GradedAlgebra& G, const std::vector<std::pair<std::string, std::string>>& slots,
                                              std::vector<Rational> class_vector) {
  if (!G.bracket) throw std::invalid_argument("realize needs a graded algebra with a bracket; " + G.origin.label + " is dims-only");
  if (class_vector.size() != slots.size()) throw DimensionMismatch("class length differs from the number of slots");
  std::map<std::string, int> by_label;
  for (std::size_t i = 0; i < G.labels.size(); ++i) by_label[G.labels[i]] = static_cast<int>(i) + 1;
  const int n = 2 * static_cast<int>(slots.size());
  std::vector<int> source(n, 0), target(G.bracket->dim() + 1, 0);
  int padding = 0;
  auto place = [&](const std::string& label, int a) {
    if (label == "R") {
      ++padding;
      return;
    }
    auto it = by_label.find(label);
    if (it == by_label.end()) throw std::invalid_argument("unknown basis label " + label);
    if (target[it->second] != 0) throw std::invalid_argument("basis label " + label + " used twice");
    target[it->second] = a;
    source[a - 1] = it->second;
  };
  for (std::size_t s = 0; s < slots.size(); ++s) {
    place(slots[s].first, 2 * static_cast<int>(s) + 1);
    place(slots[s].second, 2 * static_cast<int>(s) + 2);
  }
  for (int a = 1; a <= G.bracket->dim(); ++a)
    if (target[a] == 0) throw std::invalid_argument("basis vector " + G.labels[a - 1] + " is not placed");
  StructureTensor::Builder b(n);
  for (const auto& e : G.bracket->entries()) b.add(target[e.a], target[e.b], target[e.c], e.value);
  return {b.build(), FrameLayout::canonical(static_cast<int>(slots.size()), 0), std::move(class_vector), G.origin, padding, std::move(source)};
}

/// Levelwise direct sum; Δ is the largest part's Δ.
inline GradedAlgebra semisimple_merge(const std::vector<GradedAlgebra>& parts) {
  GradedAlgebra g;
  g.origin.kind = parts.size() == 1 ? parts[0].origin.kind : "merged";
  bool with_bracket = !parts.empty();
  for (const auto& p : parts) with_bracket = with_bracket && p.bracket.has_value();
  std::vector<StructureTensor> tensors;
  int offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    g.origin.label += (i ? "+" : "") + p.origin.label;
    g.delta = std::max(g.delta, p.delta);
    g.dim_a += p.dim_a;
    g.dim_m0 += p.dim_m0;
    for (const auto& [l, d] : p.dims) g.dims[l] += d;
    if (with_bracket) {
      for (const auto& [l, idx] : p.pieces)
        for (int a : idx) g.pieces[l].push_back(a + offset);
      for (const auto& l : p.labels) g.labels.push_back(parts.size() > 1 ? std::to_string(i + 1) + ":" + l : l);
      tensors.push_back(*p.bracket);
      offset += p.bracket->dim();
    }
  }
  if (with_bracket) g.bracket = compose(tensors, 0);
  return g;
}

/// Grading with every dimension doubled (the complex algebra viewed as real).
inline GradedAlgebra complexified_dims(const GradedAlgebra& G) {
  GradedAlgebra g;
  g.delta = G.delta;
  for (const auto& [l, d] : G.dims) g.dims[l] = 2 * d;
  g.dim_a = 2 * G.dim_a;
  g.dim_m0 = 2 * G.dim_m0;
  g.origin = {"complexified", G.origin.label + "^C"};
  return g;
}

inline ClassMultiset complexified_class(const GradedAlgebra& G) { return pairing_plan(complexified_dims(G)).multiset(); }

/// Closed-form entries of one Appendix row with the three bookkeeping
/// identities checked against an independently computed dim g.
struct BookkeepingRow {
  std::string family;
  std::vector<int> params;
  long dim_g = 0;
  long dim_m0 = 0, dim_a = 0, dim_n = 0, m = 0, total = 0;
  bool dims_ok = false;   // dim g = dim m0 + dim a + 2 dim n
  bool m_ok = false;      // m = dim m0 + dim a
  bool total_ok = false;  // total = dim g + m
  /// Split and complex rows: positive-root count and rank of the root system.
  std::optional<long> roots_dim_n, roots_dim_a;

  bool consistent() const {
    bool roots = (!roots_dim_n || *roots_dim_n == dim_n) && (!roots_dim_a || *roots_dim_a == dim_a);
    return dims_ok && m_ok && total_ok && roots;
  }
};

namespace detail {

struct AppendixFamily {
  std::string name;
  int nparams;  // 1 = n, 2 = (p, q), 0 = exceptional
  std::function<bool(const std::vector<int>&)> valid;
  /// {dim m0, dim a, dim n, m, total} as printed.
  std::function<std::array<long, 5>(const std::vector<int>&)> row;
  /// dim g from the standard dimension formula of the algebra.
  std::function<long(const std::vector<int>&)> dim_g;
  /// Root system of the split form and whether the row is its complexification.
  std::function<std::optional<CartanMatrix>(const std::vector<int>&)> split;
  bool complex = false;
};

inline long exceptional_dim(char t, int r) {
  auto C = CartanMatrix::make(t, r);
  return r + 2 * static_cast<long>(positive_roots(C).size());
}

inline const std::vector<AppendixFamily>& appendix_families() {
  using V = std::vector<int>;
  static const std::vector<AppendixFamily> families = [] {
    std::vector<AppendixFamily> f;
    auto n_at_least = [](int k) { return [k](const V& v) { return v[0] >= k; }; };
    auto none = [](const V&) -> std::optional<CartanMatrix> { return std::nullopt; };
    auto typed = [](char t) { return [t](const V& v) -> std::optional<CartanMatrix> { return CartanMatrix::make(t, v[0]); }; };
    auto dimA = [](const V& v) { long n = v[0]; return n * (n + 2); };
    auto dimB = [](const V& v) { long n = v[0]; return n * (2 * n + 1); };
    auto dimD = [](const V& v) { long n = v[0]; return n * (2 * n - 1); };
    // A.1
    f.push_back({"sl(n+1,R)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, n, n * (n + 1) / 2, n, n * (n + 3)}; }, dimA, typed('A')});
    f.push_back({"su(n+1)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{n * (n + 2), 0, 0, n * (n + 2), 2 * n * (n + 2)}; }, dimA, none});
    f.push_back({"sl(n+1,C)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, 2 * n, n * (n + 1), 2 * n, 2 * n * (n + 3)}; },
                 [=](const V& v) { return 2 * dimA(v); }, typed('A'), true});
    f.push_back({"so(n+1,n)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, n, n * n, n, 2 * n * (n + 1)}; }, dimB, typed('B')});
    f.push_back({"so(2n+1)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{n * (2 * n + 1), 0, 0, n * (2 * n + 1), 2 * n * (2 * n + 1)}; }, dimB, none});
    f.push_back({"so(2n+1,C)", 1, n_at_least(1), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, 2 * n, 2 * n * n, 2 * n, 4 * n * (n + 1)}; },
                 [=](const V& v) { return 2 * dimB(v); }, typed('B'), true});
    f.push_back({"sp(2n,R)", 1, n_at_least(2), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, n, n * n, n, 2 * n * (n + 1)}; }, dimB, typed('C')});
    f.push_back({"sp(n)", 1, n_at_least(2), [](const V& v) { long n = v[0]; return std::array<long, 5>{n * (2 * n + 1), 0, 0, n * (2 * n + 1), 2 * n * (2 * n + 1)}; }, dimB, none});
    f.push_back({"sp(2n,C)", 1, n_at_least(2), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, 2 * n, 2 * n * n, 2 * n, 4 * n * (n + 1)}; },
                 [=](const V& v) { return 2 * dimB(v); }, typed('C'), true});
    f.push_back({"so(n,n)", 1, n_at_least(3), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, n, n * (n - 1), n, 2 * n * n}; }, dimD, typed('D')});
    f.push_back({"so(2n)", 1, n_at_least(3), [](const V& v) { long n = v[0]; return std::array<long, 5>{n * (2 * n - 1), 0, 0, n * (2 * n - 1), 2 * n * (2 * n - 1)}; }, dimD, none});
    f.push_back({"so(2n,C)", 1, n_at_least(3), [](const V& v) { long n = v[0]; return std::array<long, 5>{0, 2 * n, 2 * n * (n - 1), 2 * n, 4 * n * n}; },
                 [=](const V& v) { return 2 * dimD(v); }, typed('D'), true});
    // A.2
    f.push_back({"su*(2n)", 1, n_at_least(2), [](const V& v) { long n = v[0]; return std::array<long, 5>{3 * n, n - 1, 2 * n * (n - 1), 4 * n - 1, 4 * n * n + 4 * n - 2}; },
                 [](const V& v) { long n = v[0]; return 4 * n * n - 1; }, none});
    f.push_back({"su(p,q)", 2, [](const V& v) { return v[1] >= 1 && v[0] >= v[1]; },
                 [](const V& v) {
                   long p = v[0], q = v[1];
                   return std::array<long, 5>{(p - q) * (p - q) + q - 1, q, q * (2 * p - 1), (p - q) * (p - q) + 2 * q - 1, 2 * (p * p + q * q) + 2 * q - 2};
                 },
                 [](const V& v) { long s = v[0] + v[1]; return s * s - 1; }, none});
    f.push_back({"so(p+1,q)", 2, [](const V& v) { return v[1] >= 1 && v[0] > v[1]; },
                 [](const V& v) {
                   long p = v[0], q = v[1];
                   return std::array<long, 5>{(p - q + 1) * (p - q) / 2, q, p * q, ((p - q) * (p - q) + p + q) / 2, p * p + q * q + p + q};
                 },
                 [](const V& v) { long s = v[0] + v[1]; return (s + 1) * s / 2; }, none});
    f.push_back({"sp(2p,2q)", 2, [](const V& v) { return v[1] >= 1 && v[0] >= v[1]; },
                 [](const V& v) {
                   long p = v[0], q = v[1];
                   return std::array<long, 5>{2 * (p - q) * (p - q) + p + 2 * q, q, (4 * p - 1) * q, 2 * (p - q) * (p - q) + p + 3 * q, 4 * (p * p + q * q) + 4 * q + 2 * p};
                 },
                 [](const V& v) { long s = v[0] + v[1]; return s * (2 * s + 1); }, none});
    f.push_back({"so*(2n), n even", 1, [](const V& v) { return v[0] >= 2 && v[0] % 2 == 0; },
                 [](const V& v) { long n = v[0]; return std::array<long, 5>{2 * n, n / 2, n * (2 * n - 3) / 2, 5 * n / 2, 2 * n * (n + 1)}; }, dimD, none});
    f.push_back({"so*(2n), n odd", 1, [](const V& v) { return v[0] >= 3 && v[0] % 2 == 1; },
                 [](const V& v) { long n = v[0]; return std::array<long, 5>{2 * n - 1, (n - 1) / 2, (n - 1) * (2 * n - 1) / 2, (5 * n - 3) / 2, 2 * (n * n + n - 1)}; }, dimD,
                 none});
    // A.3
    struct Ex {
      const char* name;
      char t;
      int r;
      std::array<long, 5> row;
      int form;  // 0 split, 1 other real, 2 compact, 3 complex
    };
    const Ex ex[] = {
        {"g2 split", 'G', 2, {0, 2, 6, 2, 16}, 0},           {"g2 compact", 'G', 2, {14, 0, 0, 14, 28}, 2},
        {"g2^C", 'G', 2, {0, 4, 12, 4, 32}, 3},              {"f4 split", 'F', 4, {0, 4, 24, 4, 56}, 0},
        {"f4^{-20}", 'F', 4, {21, 1, 15, 22, 74}, 1},        {"f4 compact", 'F', 4, {52, 0, 0, 52, 104}, 2},
        {"f4^C", 'F', 4, {0, 8, 48, 8, 112}, 3},             {"e6 split", 'E', 6, {0, 6, 36, 6, 84}, 0},
        {"e6^{2}", 'E', 6, {2, 4, 36, 6, 84}, 1},            {"e6^{-14}", 'E', 6, {16, 2, 30, 18, 96}, 1},
        {"e6^{-26}", 'E', 6, {28, 2, 24, 30, 108}, 1},       {"e6 compact", 'E', 6, {78, 0, 0, 78, 156}, 2},
        {"e6^C", 'E', 6, {0, 12, 72, 12, 168}, 3},           {"e7 split", 'E', 7, {0, 7, 63, 7, 140}, 0},
        {"e7^{-5}", 'E', 7, {9, 4, 60, 13, 146}, 1},         {"e7^{-25}", 'E', 7, {28, 3, 51, 31, 164}, 1},
        {"e7 compact", 'E', 7, {133, 0, 0, 133, 266}, 2},    {"e7^C", 'E', 7, {0, 14, 126, 14, 280}, 3},
        {"e8 split", 'E', 8, {0, 8, 120, 8, 256}, 0},        {"e8^{-24}", 'E', 8, {28, 4, 108, 32, 280}, 1},
        {"e8 compact", 'E', 8, {248, 0, 0, 248, 496}, 2},    {"e8^C", 'E', 8, {0, 16, 240, 16, 512}, 3},
    };
    for (const auto& e : ex) {
      char t = e.t;
      int r = e.r;
      bool cx = e.form == 3;
      std::function<std::optional<CartanMatrix>(const V&)> split = none;
      if (e.form == 0 || cx) split = [t, r](const V&) -> std::optional<CartanMatrix> { return CartanMatrix::make(t, r); };
      auto row = e.row;
      f.push_back({e.name, 0, [](const V&) { return true; }, [row](const V&) { return row; },
                   [t, r, cx](const V&) { return (cx ? 2 : 1) * exceptional_dim(t, r); }, split, cx});
    }
    return f;
  }();
  return families;
}

}  // namespace detail

/// Names of the Appendix families, in table order.
inline std::vector<std::string> appendix_family_names() {
  std::vector<std::string> out;
  for (const auto& f : detail::appendix_families()) out.push_back(f.name);
  return out;
}

inline int appendix_family_params(const std::string& family) {
  for (const auto& f : detail::appendix_families())
    if (f.name == family) return f.nparams;
  throw std::invalid_argument("unknown Appendix family " + family);
}

inline BookkeepingRow realform_bookkeeping(const std::string& family, const std::vector<int>& params = {}) {
  for (const auto& f : detail::appendix_families()) {
    if (f.name != family) continue;
    if (static_cast<int>(params.size()) != f.nparams) throw std::invalid_argument(family + " takes " + std::to_string(f.nparams) + " parameter(s)");
    if (!f.valid(params)) throw std::invalid_argument("parameters out of range for " + family);
    BookkeepingRow r;
    r.family = family;
    r.params = params;
    auto v = f.row(params);
    r.dim_m0 = v[0];
    r.dim_a = v[1];
    r.dim_n = v[2];
    r.m = v[3];
    r.total = v[4];
    r.dim_g = f.dim_g(params);
    r.dims_ok = r.dim_g == r.dim_m0 + r.dim_a + 2 * r.dim_n;
    r.m_ok = r.m == r.dim_m0 + r.dim_a;
    r.total_ok = r.total == r.dim_g + r.m;
    if (auto C = f.split(params)) {
      long k = f.complex ? 2 : 1;
      r.roots_dim_n = k * static_cast<long>(positive_roots(*C).size());
      r.roots_dim_a = k * C->rank();
    }
    return r;
  }
  throw std::invalid_argument("unknown Appendix family " + family);
}

}  // namespace nullcone

#endif  // NULLCONE_CONSTRUCTOR_HPP
