#ifndef NULLCONE_STRUCTURE_TENSOR_HPP
#define NULLCONE_STRUCTURE_TENSOR_HPP

#include "nullcone/linalg.hpp"
#include "nullcone/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace nullcone {

/// One stored structure constant C^c_{ab} with a < b (1-based indices).
struct Entry {
  int a = 0, b = 0, c = 0;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Bracket of a real Lie algebra, [e_a, e_b] = C^c_{ab} e_c.
///
/// Only a < b is stored; the partner C^c_{ba} = -C^c_{ab} is synthesized by
/// the accessors, so antisymmetry cannot be broken. Zero constants are never
/// stored. The value is immutable once constructed.
class StructureTensor {
 public:
  /// A nonzero term c -> value of a bracket [e_a, e_b].
  struct Term {
    int c;
    Rational value;
  };

  /// Accumulates constants given in either lower-index order.
  class Builder {
   public:
    explicit Builder(int dim) : dim_(dim) {
      if (dim < 0) throw std::invalid_argument("negative dimension");
    }
    /// Adds v to C^c_{ab}; a > b is stored as -v on (b, a).
    Builder& add(int a, int b, int c, const Rational& v) {
      check(a);
      check(b);
      check(c);
      if (a == b) {
        if (!v.is_zero()) throw std::invalid_argument("C^c_{aa} must vanish");
        return *this;
      }
      if (a > b) return add(b, a, c, -v);
      acc_[{a, b, c}] += v;
      return *this;
    }
    StructureTensor build() const {
      std::vector<Entry> es;
      for (const auto& [k, v] : acc_)
        if (!v.is_zero()) es.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
      return StructureTensor(dim_, std::move(es), 0);
    }

   private:
    void check(int i) const {
      if (i < 1 || i > dim_) throw std::out_of_range("structure constant index " + std::to_string(i) + " outside [1," + std::to_string(dim_) + "]");
    }
    int dim_;
    std::map<std::tuple<int, int, int>, Rational> acc_;
  };

  StructureTensor() = default;
  explicit StructureTensor(int dim) : dim_(dim) {}

  /// Strict constructor: every entry must have a < b, indices in range and
  /// no (a, b, c) repeated. Zero values are dropped.
  static StructureTensor from_entries(int dim, std::vector<Entry> entries) {
    std::vector<Entry> kept;
    for (auto& e : entries) {
      if (e.a < 1 || e.b < 1 || e.c < 1 || e.a > dim || e.b > dim || e.c > dim)
        throw std::out_of_range("structure constant index outside [1," + std::to_string(dim) + "]");
      if (e.a >= e.b) throw std::invalid_argument("structure constants must be given with a < b");
      if (!e.value.is_zero()) kept.push_back(std::move(e));
    }
    std::sort(kept.begin(), kept.end(), key_less);
    for (std::size_t i = 1; i < kept.size(); ++i)
      if (!key_less(kept[i - 1], kept[i])) throw std::invalid_argument("duplicate structure constant");
    return StructureTensor(dim, std::move(kept), 0);
  }

  int dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_abelian() const { return entries_.empty(); }

  /// C^c_{ab} for any index order.
  Rational coefficient(int a, int b, int c) const {
    if (a == b) return Rational();
    int sgn = 1;
    if (a > b) {
      std::swap(a, b);
      sgn = -1;
    }
    Entry key{a, b, c, {}};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key, key_less);
    if (it == entries_.end() || it->a != a || it->b != b || it->c != c) return Rational();
    return sgn > 0 ? it->value : -it->value;
  }

  /// Nonzero terms of [e_a, e_b].
  std::vector<Term> bracket(int a, int b) const {
    std::vector<Term> out;
    if (a == b) return out;
    bool flip = a > b;
    if (flip) std::swap(a, b);
    Entry key{a, b, 0, {}};
    for (auto it = std::lower_bound(entries_.begin(), entries_.end(), key, key_less);
         it != entries_.end() && it->a == a && it->b == b; ++it)
      out.push_back({it->c, flip ? -it->value : it->value});
    return out;
  }

  /// [u, v] for coordinate vectors of length dim().
  Vector bracket(const Vector& u, const Vector& v) const {
    if (u.size() != static_cast<std::size_t>(dim_) || v.size() != static_cast<std::size_t>(dim_))
      throw DimensionMismatch("bracket: vector length differs from algebra dimension");
    Vector w(dim_);
    for (const auto& e : entries_) {
      const Rational& ua = u[e.a - 1];
      const Rational& ub = u[e.b - 1];
      const Rational& va = v[e.a - 1];
      const Rational& vb = v[e.b - 1];
      Rational f = ua * vb - ub * va;
      if (!f.is_zero()) w[e.c - 1] += f * e.value;
    }
    return w;
  }

  /// Same tensor with every constant multiplied by s.
  StructureTensor scaled(const Rational& s) const {
    if (s.is_zero()) return StructureTensor(dim_);
    std::vector<Entry> es = entries_;
    for (auto& e : es) e.value *= s;
    return StructureTensor(dim_, std::move(es), 0);
  }

  Rational max_abs() const {
    Rational m;
    for (const auto& e : entries_)
      if (e.value.abs() > m) m = e.value.abs();
    return m;
  }

  friend bool operator==(const StructureTensor& x, const StructureTensor& y) {
    return x.dim_ == y.dim_ && x.entries_ == y.entries_;
  }

 private:
  StructureTensor(int dim, std::vector<Entry> sorted, int /*tag*/) : dim_(dim), entries_(std::move(sorted)) {}

  static bool key_less(const Entry& x, const Entry& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }

  int dim_ = 0;
  std::vector<Entry> entries_;
};

/// Dense table of all ordered brackets, for algorithms that query [e_a, e_b]
/// many times. Indices are 1-based, as on the tensor.
class BracketTable {
 public:
  explicit BracketTable(const StructureTensor& t) : n_(t.dim()), terms_(static_cast<std::size_t>(n_) * n_) {
    for (const auto& e : t.entries()) {
      at(e.a, e.b).push_back({e.c, e.value});
      at(e.b, e.a).push_back({e.c, -e.value});
    }
  }
  int dim() const { return n_; }
  const std::vector<StructureTensor::Term>& operator()(int a, int b) const {
    return terms_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)];
  }

 private:
  std::vector<StructureTensor::Term>& at(int a, int b) { return terms_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)]; }
  int n_;
  std::vector<std::vector<StructureTensor::Term>> terms_;
};

/// Symmetric bilinear form on Q^n, stored densely (0-based matrix).
class BilinearForm {
 public:
  BilinearForm() = default;
  explicit BilinearForm(Matrix m) : m_(std::move(m)) {
    if (!m_.square()) throw DimensionMismatch("bilinear form must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i + 1; j < m_.cols(); ++j)
        if (m_(i, j) != m_(j, i)) throw std::invalid_argument("bilinear form is not symmetric");
  }

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  /// Entry for 1-based indices.
  const Rational& operator()(int a, int b) const { return m_(a - 1, b - 1); }
  bool is_zero() const { return m_.is_zero(); }

  Rational evaluate(const Vector& u, const Vector& v) const {
    Rational s;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j)
        if (!v[j].is_zero() && !m_(i, j).is_zero()) s += u[i] * m_(i, j) * v[j];
    }
    return s;
  }

  friend bool operator==(const BilinearForm& x, const BilinearForm& y) { return x.m_ == y.m_; }

 private:
  Matrix m_;
};

}  // namespace nullcone

#endif  // NULLCONE_STRUCTURE_TENSOR_HPP
