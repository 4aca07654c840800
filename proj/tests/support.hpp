#ifndef NULLCONE_TESTS_SUPPORT_HPP
#define NULLCONE_TESTS_SUPPORT_HPP

#include "nullcone/linalg.hpp"
#include "nullcone/structure_tensor.hpp"

#include <initializer_list>
#include <random>
#include <string>

namespace testing_support {

struct Const {
  int a, b, c;
  std::string value;
};

/// Tensor from constants written in either lower-index order.
inline nullcone::StructureTensor tensor(int n, std::initializer_list<Const> cs) {
  nullcone::StructureTensor::Builder b(n);
  for (const auto& c : cs) b.add(c.a, c.b, c.c, nullcone::Rational::parse(c.value));
  return b.build();
}

/// Dense ad matrix straight from the coefficient accessor: (ad_a)^c_d = C^c_{ad}.
inline nullcone::Matrix ad_oracle(const nullcone::StructureTensor& t, int a) {
  const int n = t.dim();
  nullcone::Matrix m(n, n);
  for (int c = 1; c <= n; ++c)
    for (int d = 1; d <= n; ++d) m(c - 1, d - 1) = t.coefficient(a, d, c);
  return m;
}

inline nullcone::Vector unit(int n, int i) {
  nullcone::Vector v(n);
  v[i - 1] = 1;
  return v;
}

/// Small random rational in [-3, 3] with denominators up to 2.
inline nullcone::Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 2);
  return nullcone::Rational(num(rng), den(rng));
}

/// Same algebra in the basis f_i = Σ_a P_{ai} e_a, for P = 1 + N with N
/// strictly upper triangular (so the inverse is a finite series).
inline nullcone::StructureTensor change_basis(const nullcone::StructureTensor& t, const nullcone::Matrix& p) {
  const int n = t.dim();
  nullcone::Matrix neg_nil(n, n);  // -(P - 1)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) neg_nil(i, j) = (i == j ? nullcone::Rational(1) : nullcone::Rational()) - p(i, j);
  nullcone::Matrix inv = nullcone::Matrix::identity(n), term = nullcone::Matrix::identity(n);
  for (int k = 1; k < n; ++k) {
    term = term * neg_nil;
    inv = inv + term;
  }
  nullcone::StructureTensor::Builder b(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      nullcone::Vector u(n), v(n);
      for (int a = 0; a < n; ++a) {
        u[a] = p(a, i - 1);
        v[a] = p(a, j - 1);
      }
      nullcone::Vector w = t.bracket(u, v);
      for (int k = 0; k < n; ++k) {
        nullcone::Rational c;
        for (int a = 0; a < n; ++a) c += inv(k, a) * w[a];
        if (!c.is_zero()) b.add(i, j, k + 1, c);
      }
    }
  return b.build();
}

inline nullcone::Matrix random_unitriangular(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  nullcone::Matrix m = nullcone::Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace testing_support

#endif  // NULLCONE_TESTS_SUPPORT_HPP
