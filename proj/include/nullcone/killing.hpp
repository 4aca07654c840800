#ifndef NULLCONE_KILLING_HPP
#define NULLCONE_KILLING_HPP

#include "nullcone/algebra.hpp"
#include "nullcone/frame.hpp"

namespace nullcone {

/// K with g(Kv, w) = B(v, w).
struct KillingOperator {
  Matrix matrix;
};

/// K = g^{-1} B. The frame metric is the partner permutation, so row a of K
/// is row partner(a) of B.
inline KillingOperator killing_operator(const FrameLayout& L, const StructureTensor& T) {
  check_dims(L, T);
  BilinearForm b = killing_form(T);
  const int n = T.dim();
  Matrix k(n, n);
  for (int a = 1; a <= n; ++a)
    for (int c = 1; c <= n; ++c) k(a - 1, c - 1) = b(L.partner(a), c);
  return {std::move(k)};
}

}  // namespace nullcone

#endif  // NULLCONE_KILLING_HPP
