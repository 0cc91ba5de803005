#ifndef RESLAT_TESTS_HELPERS_HPP
#define RESLAT_TESTS_HELPERS_HPP

#include "reslat/core.hpp"

namespace reslat::testutil {

// prod = min, unit = top: the Goedel/Brouwerian chain
inline FinAlgebra godel_chain(int n) {
  FinAlgebra a;
  a.n = n;
  a.chain = true;
  a.unit = n - 1;
  a.prod.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a.prod[x][y] = std::min(x, y);
  return complete_residuals(std::move(a));
}

inline FinAlgebra boolean_2() { return godel_chain(2); }

// componentwise product of two algebras (explicit order matrix)
inline FinAlgebra direct_product(const FinAlgebra& a, const FinAlgebra& b) {
  FinAlgebra p;
  p.n = a.n * b.n;
  p.chain = false;
  p.leq.assign(p.n, std::vector<char>(p.n, 0));
  p.prod.assign(p.n, std::vector<int>(p.n, 0));
  auto id = [&](int x, int y) { return x * b.n + y; };
  p.unit = id(a.unit, b.unit);
  for (int x1 = 0; x1 < a.n; ++x1)
    for (int y1 = 0; y1 < b.n; ++y1)
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2) {
          p.leq[id(x1, y1)][id(x2, y2)] = a.le(x1, x2) && b.le(y1, y2);
          p.prod[id(x1, y1)][id(x2, y2)] = id(a.prod[x1][x2], b.prod[y1][y2]);
        }
  return complete_residuals(std::move(p));
}

}  // namespace reslat::testutil

#endif
