#include <doctest.h>

#include <algorithm>
#include <functional>

#include "helpers.hpp"
#include "reslat/chains.hpp"
#include "reslat/constructions.hpp"
#include "reslat/core.hpp"

using namespace reslat;
using namespace reslat::testutil;

TEST_CASE("validate accepts the two-element chain and C4") {
  CHECK(validate(boolean_2()).ok);
  CHECK(validate(c4()).ok);
}

TEST_CASE("validate flags a broken three-chain product") {
  // 0 < 1 < 2, unit = 2, meet product except prod[0][1] = 2
  FinAlgebra a = godel_chain(3);
  a.ld.reset();
  a.rd.reset();
  a.prod[0][1] = 2;
  CheckReport r = validate(a);
  CHECK_FALSE(r.ok);
}

TEST_CASE("validate structural errors throw") {
  FinAlgebra a = boolean_2();
  a.prod[0].pop_back();
  CHECK_THROWS_AS(validate(a), Error);
  FinAlgebra b = boolean_2();
  b.prod[0][0] = 7;
  CHECK_THROWS_AS(validate(b), Error);
  FinAlgebra c = boolean_2();
  c.unit = -1;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("complete_residuals on the two-element chain") {
  FinAlgebra a = boolean_2();
  CHECK((*a.ld)[0][0] == 1);  // bot\bot = 1
  CHECK((*a.ld)[1][0] == 0);
  CHECK((*a.rd)[0][0] == 1);
}

TEST_CASE("validate handles one-sided residual tables") {
  FinAlgebra a = c4();
  a.rd.reset();
  CHECK(validate(a).ok);  // ld adjunction plus right-existence scan
  a.ld.reset();
  CHECK(validate(a).ok);  // pure existence scans
  FinAlgebra b = c4();
  (*b.ld)[1][2] = 0;
  CHECK_FALSE(validate(b).ok);
}

TEST_CASE("complete_residuals on C4 matches the generation identities") {
  FinAlgebra a = c4();  // 0 = bot, 1 = c, 2 = unit, 3 = c-sharp
  CHECK((*a.ld)[1][2] == 3);  // c\1 = c#
  CHECK((*a.ld)[0][2] == 3);  // bot\1 = c#
  CHECK((*a.ld)[3][2] == 0);  // c#\1 = bot
  CHECK((*a.rd)[2][3] == 1);  // 1/c# = c
}

TEST_CASE("residual scan on the absolute-value chain") {
  FinAlgebra a = abs_chain(2);  // indices 0..4 = -2..2, unit 2
  auto l = left_residual_scan(a, 3, 2);  // 1\0 in value terms
  REQUIRE(l.has_value());
  CHECK(*l == 0);  // = -2
  CHECK_THROWS_AS(complete_residuals(a), Error);  // top row has no left residuals
}

TEST_CASE("property flags") {
  PropertyFlags two = properties(boolean_2());
  CHECK(two.idempotent);
  CHECK(two.commutative);
  CHECK(two.conservative);
  CHECK(two.totally_ordered);
  // x -> x\1 is constantly 1 on the two-chain, not an involution
  CHECK_FALSE(two.odd_sugihara);

  PropertyFlags fc4 = properties(c4());
  CHECK(fc4.idempotent);
  CHECK_FALSE(fc4.commutative);
  CHECK(fc4.conservative);
  CHECK(fc4.totally_ordered);

  PropertyFlags sq = properties(direct_product(boolean_2(), boolean_2()));
  CHECK(sq.idempotent);
  CHECK_FALSE(sq.conservative);
  CHECK_FALSE(sq.totally_ordered);

  CHECK(properties(sugihara_chain(5)).odd_sugihara);
}

TEST_CASE("monoidal preorder shapes") {
  BoolMat two = monoidal_preorder(boolean_2());
  CHECK(two[0][0]);
  CHECK(two[0][1]);
  CHECK_FALSE(two[1][0]);

  BoolMat p4 = monoidal_preorder(c4());  // bot < {c ~ c#} < 1
  CHECK(p4[1][3]);
  CHECK(p4[3][1]);
  CHECK(p4[1][2]);
  CHECK_FALSE(p4[2][1]);
  CHECK(p4[0][1]);
  CHECK_FALSE(p4[1][0]);

  // S5 monoidal chain: -2 < 2 < -1 < 1 < 0 (indices 0,4,1,3,2)
  BoolMat s5 = monoidal_preorder(sugihara_chain(5));
  int seq[] = {0, 4, 1, 3, 2};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(static_cast<bool>(s5[seq[i]][seq[j]]) == (i <= j));

  FinAlgebra bad = boolean_2();
  bad.prod[1][1] = 0;
  bad.ld.reset();
  bad.rd.reset();
  CHECK_THROWS_AS(monoidal_preorder(bad), Error);
}

TEST_CASE("gamma closure") {
  // identity on odd Sugihara chains
  for (int n : {1, 3, 5, 7}) {
    FinAlgebra s = sugihara_chain(n);
    std::vector<int> g = gamma_closure(s, s.unit);
    for (int x = 0; x < n; ++x) CHECK(g[x] == x);
  }
  // constant 1 on the Goedel three-chain (image = {unit})
  FinAlgebra g3 = godel_chain(3);
  std::vector<int> g = gamma_closure(g3, g3.unit);
  CHECK(g == std::vector<int>{2, 2, 2});
  // gamma at the bottom of the two-chain is the identity (inflationarity
  // forces the top to stay put)
  FinAlgebra two = boolean_2();
  CHECK(gamma_closure(two, 0) == std::vector<int>{0, 1});

  FinAlgebra no_res = boolean_2();
  no_res.ld.reset();
  CHECK_THROWS_AS(gamma_closure(no_res, 0), Error);
}

TEST_CASE("skeleton of a Sugihara chain is everything, of a Goedel chain trivial") {
  FinAlgebra s5 = sugihara_chain(5);
  SkeletonResult r = skeleton(s5);
  CHECK(r.skeleton.n == 5);
  for (const auto& f : r.fibers) CHECK(f.size() == 1);

  SkeletonResult g = skeleton(godel_chain(3));
  CHECK(g.skeleton.n == 1);
  REQUIRE(g.fibers.size() == 1);
  CHECK(g.fibers[0] == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(skeleton(c4()), Error);  // noncommutative
}

TEST_CASE("skeleton works on arbitrary labelings of a chain") {
  // Goedel 4-chain relabeled in reverse, handed over as an explicit matrix
  FinAlgebra g = godel_chain(4);
  auto p = [](int x) { return 3 - x; };
  FinAlgebra r;
  r.n = 4;
  r.chain = false;
  r.leq.assign(4, std::vector<char>(4, 0));
  r.prod.assign(4, std::vector<int>(4, 0));
  Table ld(4, std::vector<int>(4, 0)), rd(4, std::vector<int>(4, 0));
  r.unit = p(g.unit);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      r.leq[p(x)][p(y)] = g.le(x, y);
      r.prod[p(x)][p(y)] = p(g.prod[x][y]);
      ld[p(x)][p(y)] = p((*g.ld)[x][y]);
      rd[p(x)][p(y)] = p((*g.rd)[x][y]);
    }
  r.ld = std::move(ld);
  r.rd = std::move(rd);
  CHECK(validate(r).ok);
  SkeletonResult sk = skeleton(r);
  CHECK(sk.skeleton.n == 1);
  CHECK(sk.elements == std::vector<int>{0});          // the relabeled unit
  CHECK(sk.fibers[0] == std::vector<int>{3, 2, 1, 0});  // lattice-ascending originals
}

TEST_CASE("generated subalgebra") {
  FinAlgebra a = c4();
  CHECK(generated_subalgebra(a, {a.unit}) == std::vector<int>{2});
  CHECK(generated_subalgebra(a, {1}) == std::vector<int>{0, 1, 2, 3});
  CHECK(generated_subalgebra(a, {0}) == std::vector<int>{0, 1, 2, 3});
  CHECK(generated_subalgebra(a, {3}) == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(generated_subalgebra(a, {9}), Error);

  for (int k = 1; k <= 5; ++k) {
    FinAlgebra abs = abs_chain(k);
    std::vector<int> gen = generated_subalgebra(abs, {k - 1});  // the element -1
    CHECK(static_cast<int>(gen.size()) == abs.n);
  }
}

namespace {

// Independent congruence oracle: all set partitions, checked directly.
std::vector<std::vector<int>> congruences_by_partitions(const FinAlgebra& a0) {
  FinAlgebra a = a0.has_residuals() ? a0 : complete_residuals(a0);
  LatticeOps ops = lattice_ops(a);
  std::vector<std::vector<int>> out;
  std::vector<int> cls(a.n, 0);
  auto compatible = [&](const std::vector<int>& c) {
    for (int x1 = 0; x1 < a.n; ++x1)
      for (int x2 = 0; x2 < a.n; ++x2) {
        if (c[x1] != c[x2]) continue;
        for (int z = 0; z < a.n; ++z) {
          if (c[a.prod[x1][z]] != c[a.prod[x2][z]] || c[a.prod[z][x1]] != c[a.prod[z][x2]])
            return false;
          if (c[ops.meet[x1][z]] != c[ops.meet[x2][z]] || c[ops.join[x1][z]] != c[ops.join[x2][z]])
            return false;
          if (c[(*a.ld)[x1][z]] != c[(*a.ld)[x2][z]] || c[(*a.ld)[z][x1]] != c[(*a.ld)[z][x2]])
            return false;
          if (c[(*a.rd)[x1][z]] != c[(*a.rd)[x2][z]] || c[(*a.rd)[z][x1]] != c[(*a.rd)[z][x2]])
            return false;
        }
      }
    return true;
  };
  // enumerate restricted growth strings
  std::function<void(int, int)> rec = [&](int i, int maxc) {
    if (i == a.n) {
      if (compatible(cls)) out.push_back(cls);
      return;
    }
    for (int c = 0; c <= maxc; ++c) {
      cls[i] = c;
      rec(i + 1, std::max(maxc, c + 1));
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("congruences") {
  auto two = congruences(boolean_2());
  CHECK(two.size() == 2);

  auto four = congruences(c4());
  CHECK(four.size() == 2);  // simple

  // delta, nabla, and the collapse of the top two elements; collapsing the
  // bottom two would break the residual (bot\bot is the top, a\bot the bottom)
  auto g3 = congruences(godel_chain(3));
  CHECK(g3.size() == 3);
  CHECK(std::find(g3.begin(), g3.end(), std::vector<int>{0, 1, 1}) != g3.end());
  CHECK(std::find(g3.begin(), g3.end(), std::vector<int>{0, 0, 1}) == g3.end());

  FinAlgebra big = godel_chain(8);
  CHECK_THROWS_AS(congruences(big), Error);
}

TEST_CASE("congruence search agrees with the partition oracle") {
  for (const FinAlgebra& a :
       {boolean_2(), godel_chain(3), godel_chain(4), c4(), sugihara_chain(3), abs_chain(1),
        direct_product(boolean_2(), boolean_2()),
        catalan_sum(boolean_2(), boolean_2()), sugihara_chain(5)}) {
    if (!validate(a).ok) continue;  // abs_chain(1) is not residuable
    CHECK(congruences(a) == congruences_by_partitions(a));
  }
}

TEST_CASE("congruence lattice is bounded and meet-closed") {
  for (const FinAlgebra& a : {godel_chain(4), c4(), sugihara_chain(5)}) {
    auto cs = congruences(a);
    std::vector<int> delta(a.n), nabla(a.n, 0);
    for (int i = 0; i < a.n; ++i) delta[i] = i;
    CHECK(std::find(cs.begin(), cs.end(), delta) != cs.end());
    CHECK(std::find(cs.begin(), cs.end(), nabla) != cs.end());
    for (const auto& t1 : cs)
      for (const auto& t2 : cs) {
        // intersection, renormalized
        std::vector<int> inter(a.n, -1);
        std::vector<std::pair<int, int>> names(a.n, {-1, -1});
        int next = 0;
        for (int x = 0; x < a.n; ++x) {
          std::pair<int, int> key{t1[x], t2[x]};
          int found = -1;
          for (int y = 0; y < x; ++y)
            if (names[inter[y]] == key) found = inter[y];
          if (found < 0) {
            names[next] = key;
            found = next++;
          }
          inter[x] = found;
        }
        CHECK(std::find(cs.begin(), cs.end(), inter) != cs.end());
      }
  }
}

TEST_CASE("homomorphism checks") {
  FinAlgebra a = c4();
  std::vector<int> id{0, 1, 2, 3};
  CHECK(check_homomorphism({a, a, id}).ok);

  // skeleton inclusion for a commutative chain
  FinAlgebra chain = compile(LacedCode::parse("nn")).algebra;
  SkeletonResult sk = skeleton(chain);
  CHECK(check_homomorphism({sk.skeleton, chain, sk.elements}).ok);

  // bot -> c, 1 -> 1 into C4 is not a homomorphism
  CheckReport bad = check_homomorphism({boolean_2(), a, {1, 2}});
  CHECK_FALSE(bad.ok);

  CHECK_THROWS_AS(check_homomorphism({boolean_2(), a, {1, 1}}), Error);  // not injective
  CHECK_THROWS_AS(check_homomorphism({boolean_2(), a, {1}}), Error);    // wrong length
  CHECK_THROWS_AS(check_homomorphism({boolean_2(), a, {1, 9}}), Error); // out of range
}

TEST_CASE("opposite transposes the product and swaps residuals") {
  FinAlgebra a = c4();
  FinAlgebra op = opposite(a);
  CHECK(op.prod[1][3] == a.prod[3][1]);
  CHECK(validate(op).ok);
  CHECK((*op.ld)[1][2] == (*a.rd)[2][1]);
  FinAlgebra back = opposite(op);
  CHECK(back == a);
}
