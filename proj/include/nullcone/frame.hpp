#ifndef NULLCONE_FRAME_HPP
#define NULLCONE_FRAME_HPP

#include "nullcone/linalg.hpp"
#include "nullcone/rational.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullcone {

/// Role of a basis index in a null frame N- ⊕ H ⊕ N+.
struct Role {
  enum Kind { NMinus, NPlus, Transverse };
  Kind kind = Transverse;
  int slot = 0;  // 1..p for the null kinds, 0 for transverse

  friend bool operator==(const Role&, const Role&) = default;

  /// "N-3", "N+1" or "H".
  std::string str() const {
    if (kind == Transverse) return "H";
    return std::string(kind == NMinus ? "N-" : "N+") + std::to_string(slot);
  }
  static Role parse(const std::string& s) {
    if (s == "H" || s == "T") return {Transverse, 0};
    if (s.size() > 2 && s[0] == 'N' && (s[1] == '-' || s[1] == '+')) {
      std::size_t used = 0;
      int slot = std::stoi(s.substr(2), &used);
      if (used == s.size() - 2 && slot >= 1) return {s[1] == '-' ? NMinus : NPlus, slot};
    }
    throw std::invalid_argument("unknown frame role '" + s + "'");
  }
};

/// Assignment of the indices 1..2p+k to null-frame roles. The metric puts 1
/// on each null pair and on the diagonal of the transverse block.
class FrameLayout {
 public:
  FrameLayout() = default;

  /// 2i-1 -> N-(i), 2i -> N+(i), then transverse indices.
  static FrameLayout canonical(int p, int k) {
    if (p < 0 || k < 0) throw std::invalid_argument("negative signature");
    std::vector<Role> roles;
    for (int i = 1; i <= p; ++i) {
      roles.push_back({Role::NMinus, i});
      roles.push_back({Role::NPlus, i});
    }
    for (int j = 0; j < k; ++j) roles.push_back({Role::Transverse, 0});
    return FrameLayout(std::move(roles));
  }

  /// roles[a-1] is the role of index a.
  explicit FrameLayout(std::vector<Role> roles) : roles_(std::move(roles)) {
    const int n = static_cast<int>(roles_.size());
    int nulls = 0;
    for (const auto& r : roles_)
      if (r.kind != Role::Transverse) ++nulls;
    if (nulls % 2 != 0) throw std::invalid_argument("frame layout has unpaired null index");
    p_ = nulls / 2;
    k_ = n - nulls;
    minus_.assign(p_ + 1, 0);
    plus_.assign(p_ + 1, 0);
    for (int a = 1; a <= n; ++a) {
      const Role& r = roles_[a - 1];
      if (r.kind == Role::Transverse) continue;
      if (r.slot < 1 || r.slot > p_) throw std::invalid_argument("frame slot " + std::to_string(r.slot) + " outside [1," + std::to_string(p_) + "]");
      int& cell = r.kind == Role::NMinus ? minus_[r.slot] : plus_[r.slot];
      if (cell != 0) throw std::invalid_argument("frame role " + r.str() + " assigned twice");
      cell = a;
    }
    partner_.resize(n + 1);
    for (int a = 1; a <= n; ++a) {
      const Role& r = roles_[a - 1];
      partner_[a] = r.kind == Role::Transverse ? a : (r.kind == Role::NMinus ? plus_[r.slot] : minus_[r.slot]);
    }
  }

  int p() const { return p_; }
  int k() const { return k_; }
  int dim() const { return 2 * p_ + k_; }
  const Role& role(int a) const { return roles_.at(a - 1); }
  const std::vector<Role>& roles() const { return roles_; }
  /// Index b with g_{ab} = 1 (a itself for transverse indices).
  int partner(int a) const { return partner_.at(a); }
  int nminus(int slot) const { return minus_.at(slot); }
  int nplus(int slot) const { return plus_.at(slot); }

  bool is_canonical() const { return *this == canonical(p_, k_); }

  /// Layout whose slot s carries what slot order[s-1] carried here.
  FrameLayout permute_slots(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != p_) throw DimensionMismatch("slot permutation length differs from p");
    std::vector<int> inverse(p_ + 1, 0);
    for (int s = 1; s <= p_; ++s) inverse.at(order[s - 1]) = s;
    std::vector<Role> roles = roles_;
    for (auto& r : roles)
      if (r.kind != Role::Transverse) r.slot = inverse[r.slot];
    return FrameLayout(std::move(roles));
  }

  friend bool operator==(const FrameLayout& x, const FrameLayout& y) { return x.roles_ == y.roles_; }

 private:
  std::vector<Role> roles_;
  int p_ = 0, k_ = 0;
  std::vector<int> minus_, plus_, partner_;
};

using BoostWeight = std::vector<int>;

/// The metric is a permutation matrix squaring to the identity, so it is its
/// own inverse.
inline BilinearForm metric_components(const FrameLayout& L) {
  const int n = L.dim();
  Matrix g(n, n);
  for (int a = 1; a <= n; ++a) g(a - 1, L.partner(a) - 1) = 1;
  return BilinearForm(std::move(g));
}

inline BoostWeight index_weight(const FrameLayout& L, int a) {
  if (a < 1 || a > L.dim()) throw std::out_of_range("index " + std::to_string(a) + " outside layout");
  BoostWeight w(L.p(), 0);
  const Role& r = L.role(a);
  if (r.kind == Role::NMinus) w[r.slot - 1] = -1;
  if (r.kind == Role::NPlus) w[r.slot - 1] = 1;
  return w;
}

/// Boost weight λ(a) + λ(b) - λ(c) of the component C^c_{ab}.
inline BoostWeight component_weight(const FrameLayout& L, int a, int b, int c) {
  BoostWeight w = index_weight(L, a);
  BoostWeight wb = index_weight(L, b);
  BoostWeight wc = index_weight(L, c);
  for (int i = 0; i < L.p(); ++i) w[i] += wb[i] - wc[i];
  return w;
}

inline void check_dims(const FrameLayout& L, const StructureTensor& T) {
  if (L.dim() != T.dim())
    throw DimensionMismatch("layout dimension " + std::to_string(L.dim()) + " differs from algebra dimension " + std::to_string(T.dim()));
}

inline std::set<BoostWeight> weight_support(const FrameLayout& L, const StructureTensor& T) {
  check_dims(L, T);
  std::set<BoostWeight> s;
  for (const auto& e : T.entries()) s.insert(component_weight(L, e.a, e.b, e.c));
  return s;
}

inline Rational pairing(const std::vector<Rational>& x, const BoostWeight& b) {
  if (x.size() != b.size()) throw DimensionMismatch("class length differs from weight length");
  Rational s;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) s += x[i] * Rational(b[i]);
  return s;
}

/// Class vector sorted descending together with the slot reordering used:
/// values[i] came from slot order[i] of the input.
struct NormalizedClass {
  std::vector<Rational> values;
  std::vector<int> order;
};

inline NormalizedClass normalize_class(const std::vector<Rational>& x) {
  NormalizedClass n;
  n.order.resize(x.size());
  std::iota(n.order.begin(), n.order.end(), 1);
  std::stable_sort(n.order.begin(), n.order.end(), [&](int i, int j) { return x[i - 1] > x[j - 1]; });
  for (int i : n.order) n.values.push_back(x[i - 1]);
  return n;
}

struct CertifyResult {
  bool certified = false;
  /// max ⟨x, b⟩ over the support; empty when the support is empty.
  std::optional<Rational> worst_margin;
  std::vector<BoostWeight> violating_weights;
};

/// Checks ⟨x, b⟩ ≤ -1 for every boost weight b carried by T.
inline CertifyResult certify_class(const FrameLayout& L, const StructureTensor& T, const std::vector<Rational>& x) {
  check_dims(L, T);
  if (static_cast<int>(x.size()) != L.p()) throw DimensionMismatch("class has " + std::to_string(x.size()) + " entries, layout has p = " + std::to_string(L.p()));
  for (const auto& xi : x)
    if (xi.sign() < 0) throw std::invalid_argument("class entries must be nonnegative");
  CertifyResult r;
  r.certified = true;
  for (const auto& b : weight_support(L, T)) {
    Rational m = pairing(x, b);
    if (!r.worst_margin || m > *r.worst_margin) r.worst_margin = m;
    if (m > Rational(-1)) {
      r.certified = false;
      r.violating_weights.push_back(b);
    }
  }
  return r;
}

/// Structure constants after a boost, each written coefficient · base^exponent
/// with 0 ≤ exponent < 1; integer parts of the exponent are absorbed into the
/// coefficient so equal values have equal representations.
class FlowedTensor {
 public:
  struct Component {
    int a, b, c;
    Rational coefficient;
    Rational exponent;
    friend bool operator==(const Component&, const Component&) = default;
  };

  FlowedTensor(int dim, Rational base) : dim_(dim), base_(std::move(base)) {
    if (base_ <= Rational(1)) throw std::invalid_argument("flow base must exceed 1");
  }

  static FlowedTensor from(const StructureTensor& t, const Rational& base) {
    FlowedTensor f(t.dim(), base);
    for (const auto& e : t.entries()) f.components_.push_back({e.a, e.b, e.c, e.value, Rational()});
    return f;
  }

  int dim() const { return dim_; }
  const Rational& base() const { return base_; }
  const std::vector<Component>& components() const { return components_; }

  /// Multiplies component i by base^e.
  void scale(std::size_t i, const Rational& e) {
    Component& c = components_[i];
    Rational total = c.exponent + e;
    Rational whole = floor(total);
    c.exponent = total - whole;
    c.coefficient *= base_.pow(whole.to_int64());
  }

  bool is_exact() const {
    return std::all_of(components_.begin(), components_.end(), [](const Component& c) { return c.exponent.is_zero(); });
  }

  /// The plain tensor, when no symbolic powers remain.
  std::optional<StructureTensor> exact() const {
    if (!is_exact()) return std::nullopt;
    std::vector<Entry> es;
    for (const auto& c : components_) es.push_back({c.a, c.b, c.c, c.coefficient});
    return StructureTensor::from_entries(dim_, std::move(es));
  }

  friend bool operator==(const FlowedTensor& x, const FlowedTensor& y) {
    return x.dim_ == y.dim_ && x.base_ == y.base_ && x.components_ == y.components_;
  }

  static Rational floor(const Rational& r) {
    Rational::BigInt n = r.numerator_big(), d = r.denominator_big();
    Rational::BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return Rational(Rational::Big(q));
  }

 private:
  int dim_;
  Rational base_;
  std::vector<Component> components_;
};

/// e^{tX}·μ with X = diag boost of class x; component C^c_{ab} of weight b is
/// multiplied by base^{t⟨x,b⟩}.
inline FlowedTensor boost_flow(const FrameLayout& L, const FlowedTensor& f, const std::vector<Rational>& x, const Rational& t) {
  if (L.dim() != f.dim()) throw DimensionMismatch("layout dimension differs from algebra dimension");
  if (static_cast<int>(x.size()) != L.p()) throw DimensionMismatch("class length differs from p");
  FlowedTensor out = f;
  for (std::size_t i = 0; i < out.components().size(); ++i) {
    const auto& c = out.components()[i];
    out.scale(i, t * pairing(x, component_weight(L, c.a, c.b, c.c)));
  }
  return out;
}

inline FlowedTensor boost_flow(const FrameLayout& L, const StructureTensor& T, const std::vector<Rational>& x, const Rational& t,
                               const Rational& base) {
  check_dims(L, T);
  return boost_flow(L, FlowedTensor::from(T, base), x, t);
}

/// Relabels indices a -> perm[a-1] with signs: C'^{π(c)}_{π(a)π(b)} = σ_a σ_b σ_c C^c_{ab}.
/// With preserve_metric the map must be an isometry of L's metric.
inline StructureTensor apply_frame_map(const FrameLayout& L, const StructureTensor& T, const std::vector<int>& perm,
                                       const std::vector<int>& signs, bool preserve_metric = false) {
  check_dims(L, T);
  const int n = T.dim();
  if (static_cast<int>(perm.size()) != n || static_cast<int>(signs.size()) != n)
    throw DimensionMismatch("frame map length differs from algebra dimension");
  std::vector<bool> seen(n + 1, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("frame map is not a permutation");
    seen[v] = true;
  }
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("frame map signs must be +1 or -1");
  if (preserve_metric) {
    for (int a = 1; a <= n; ++a) {
      int pa = L.partner(a);
      if (L.partner(perm[a - 1]) != perm[pa - 1] || signs[a - 1] * signs[pa - 1] != 1)
        throw std::invalid_argument("frame map does not preserve the metric");
    }
  }
  StructureTensor::Builder b(n);
  for (const auto& e : T.entries()) {
    int s = signs[e.a - 1] * signs[e.b - 1] * signs[e.c - 1];
    b.add(perm[e.a - 1], perm[e.b - 1], perm[e.c - 1], s > 0 ? e.value : -e.value);
  }
  return b.build();
}

}  // namespace nullcone

#endif  // NULLCONE_FRAME_HPP
