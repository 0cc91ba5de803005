#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "reslat/chains.hpp"
#include "reslat/constructions.hpp"
#include "reslat/core.hpp"
#include "reslat/counting.hpp"
#include "reslat/oracle.hpp"

using namespace reslat;
using namespace reslat::testutil;

TEST_CASE("sugihara chains") {
  CHECK(sugihara_chain(1).n == 1);
  CHECK_THROWS_AS(sugihara_chain(4), Error);
  CHECK_THROWS_AS(sugihara_chain(0), Error);

  FinAlgebra s3 = sugihara_chain(3);
  CHECK(validate(s3).ok);
  CHECK(properties(s3).odd_sugihara);
  // monoidal order -1 < 1 < 0, i.e. index 0 then 2 then 1
  BoolMat pre = monoidal_preorder(s3);
  CHECK(pre[0][2]);
  CHECK(pre[2][1]);
  CHECK_FALSE(pre[2][0]);
  CHECK_FALSE(pre[1][0]);
}

TEST_CASE("sugihara five-chain table matches the integer-arithmetic recomputation") {
  FinAlgebra s5 = sugihara_chain(5);
  CHECK(validate(s5).ok);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      int vx = x - 2, vy = y - 2;  // values -2..2
      int expect = (vx <= -vy) ? std::min(vx, vy) : std::max(vx, vy);
      CHECK(s5.prod[x][y] == expect + 2);
      int residual = (vx <= vy) ? std::max(-vx, vy) : std::min(-vx, vy);
      CHECK((*s5.ld)[x][y] == residual + 2);
    }
}

TEST_CASE("absolute-value chains") {
  CHECK_THROWS_AS(abs_chain(0), Error);
  FinAlgebra a1 = abs_chain(1);
  // 1*(-1) = 1 and (-1)*1 = -1: a noncommuting pair at the bottom level
  CHECK(a1.prod[2][0] == 2);
  CHECK(a1.prod[0][2] == 0);
  CHECK_FALSE(properties(a1).commutative);
  // the truncation is not residuable; the validator names the missing entries
  CheckReport r = validate(a1);
  CHECK_FALSE(r.ok);
  CHECK(r.has("residual.left-exists"));
  CHECK_FALSE(r.has("residual.right-exists"));
  CHECK_FALSE(r.has("monoid.associative"));

  CheckReport r2 = validate(abs_chain(2));
  CHECK_FALSE(r2.ok);
  for (const auto& v : r2.violations) {
    CHECK(v.axiom == "residual.left-exists");
    CHECK(v.witness[0] == 4);  // every gap sits in the top row
  }
  CHECK(r2.violations.size() == 4);
}

TEST_CASE("abs_chain(1) is laced but its bottom is not strictly least") {
  // the size-3 truncation has its noncommuting pair at the bottom level, so
  // it fails exactly the strict-least compatibility check and stays outside
  // the residuated-chain class; no conflict with the size-3 census
  FinAlgebra a1 = abs_chain(1);
  CheckReport r = check_laced_compatible(monoidal_preorder(a1), a1.unit);
  CHECK_FALSE(r.ok);
  for (const auto& v : r.violations) CHECK(v.axiom == "compat.bottom-strict");
  CHECK(r.violations.size() == 1);
  CHECK(r.violations[0].witness == std::vector<int>{2});
}

TEST_CASE("tensor rebuilds the standard examples") {
  // trivial skeleton, one fiber of three: the Goedel three-chain
  FinAlgebra g3 = tensor({trivial_algebra(), {3}});
  CHECK(g3.prod == godel_chain(3).prod);
  CHECK(validate(g3).ok);

  // identity decomposition of S3
  FinAlgebra s3 = tensor({sugihara_chain(3), {1, 1, 1}});
  CHECK(s3 == sugihara_chain(3));

  // one doubled fiber: a four-element commutative chain, skeleton S3
  FinAlgebra t = tensor({sugihara_chain(3), {2, 1, 1}});
  CHECK(t.n == 4);
  CHECK(validate(t).ok);
  SkeletonResult sk = skeleton(t);
  CHECK(sk.skeleton.n == 3);
  CHECK(sk.fibers[0].size() == 2);

  CHECK_THROWS_AS(tensor({godel_chain(3), {1, 1, 1}}), Error);      // not odd Sugihara
  CHECK_THROWS_AS(tensor({sugihara_chain(3), {1, 1}}), Error);      // fiber count
  CHECK_THROWS_AS(tensor({sugihara_chain(3), {1, 0, 1}}), Error);   // empty fiber
}

TEST_CASE("tensor accepts an index-ordered explicit skeleton matrix") {
  FinAlgebra s3 = sugihara_chain(3);
  FinAlgebra explicit_s3 = s3;
  explicit_s3.chain = false;
  explicit_s3.leq.assign(3, std::vector<char>(3, 0));
  for (int x = 0; x < 3; ++x)
    for (int y = x; y < 3; ++y) explicit_s3.leq[x][y] = 1;
  CHECK(tensor({explicit_s3, {2, 1, 2}}) == tensor({s3, {2, 1, 2}}));
}

TEST_CASE("tensor and skeleton are mutually inverse on small data") {
  for (int sn : {1, 3, 5}) {
    FinAlgebra s = sugihara_chain(sn);
    std::vector<int> sizes(sn, 1);
    // enumerate all fiber size vectors over {1,2,3}
    while (true) {
      FinAlgebra glued = tensor({s, sizes});
      CHECK(validate(glued).ok);
      SkeletonResult back = skeleton(glued);
      CHECK(back.skeleton.n == sn);
      for (int c = 0; c < sn; ++c) CHECK(static_cast<int>(back.fibers[c].size()) == sizes[c]);
      CHECK(tensor({back.skeleton, sizes}) == glued);
      int i = 0;
      while (i < sn && sizes[i] == 3) sizes[i++] = 1;
      if (i == sn) break;
      ++sizes[i];
    }
  }
}

TEST_CASE("tensor residuals equal the scanned residuals") {
  FinAlgebra t = tensor({sugihara_chain(5), {2, 1, 3, 1, 2}});
  FinAlgebra scanned = t;
  scanned.ld.reset();
  scanned.rd.reset();
  scanned = complete_residuals(std::move(scanned));
  CHECK(scanned == t);
}

TEST_CASE("catalan sums") {
  FinAlgebra two = catalan_sum(trivial_algebra(), trivial_algebra());
  CHECK(two.n == 2);
  CHECK(validate(two).ok);
  CHECK(is_isomorphic(two, boolean_2()).has_value());

  // 2-chain + 2-chain: the diamond with incomparable middle pair
  FinAlgebra diamond = catalan_sum(boolean_2(), boolean_2());
  CHECK(diamond.n == 4);
  CHECK(validate(diamond).ok);
  PropertyFlags f = properties(diamond);
  CHECK(f.commutative);
  CHECK(f.conservative);
  CHECK_FALSE(f.totally_ordered);

  // the two three-chains
  FinAlgebra c31 = catalan_sum(trivial_algebra(), boolean_2());
  FinAlgebra c32 = catalan_sum(boolean_2(), trivial_algebra());
  CHECK(is_isomorphic(c31, compile(LacedCode::parse("n")).algebra).has_value());
  CHECK(is_isomorphic(c32, compile(LacedCode::parse("p")).algebra).has_value());
  CHECK_FALSE(is_isomorphic(c31, c32).has_value());

  CHECK_THROWS_AS(catalan_sum(c4(), trivial_algebra()), Error);  // not commutative
}

TEST_CASE("catalan decomposition inverts the sum") {
  FinAlgebra two = catalan_sum(trivial_algebra(), trivial_algebra());
  auto [a2, b2] = catalan_decompose(two);
  CHECK(a2.n == 1);
  CHECK(b2.n == 1);

  FinAlgebra diamond = catalan_sum(boolean_2(), boolean_2());
  auto [da, db] = catalan_decompose(diamond);
  CHECK(is_isomorphic(da, boolean_2()).has_value());
  CHECK(is_isomorphic(db, boolean_2()).has_value());

  // every commutative chain of size 5 splits and re-sums isomorphically
  for (const LacedCode& code : enumerate_codes(5, true)) {
    FinAlgebra c = compile(code).algebra;
    auto [a, b] = catalan_decompose(c);
    CHECK(is_isomorphic(catalan_sum(a, b), c).has_value());
  }
  CHECK_THROWS_AS(catalan_decompose(trivial_algebra()), Error);
}

TEST_CASE("catalan enumeration") {
  CHECK_THROWS_AS(enumerate_catalan(0), Error);
  CHECK(enumerate_catalan(1).size() == 1);
  CHECK(enumerate_catalan(4).size() == 5);
  auto all6 = enumerate_catalan(6);
  CHECK(all6.size() == 42);
  for (const auto& m : all6) {
    CHECK(validate(m).ok);
    PropertyFlags f = properties(m);
    CHECK(f.commutative);
    CHECK(f.conservative);
  }
  // pairwise nonisomorphic
  std::vector<CanonicalForm> keys;
  for (const auto& m : enumerate_catalan(5)) keys.push_back(canonical(m));
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
}

TEST_CASE("catalan algebras are subdirectly irreducible at small sizes") {
  for (int n = 2; n <= 5; ++n)
    for (const FinAlgebra& m : enumerate_catalan(n)) {
      auto cs = congruences(m);
      // unique atom: exactly one congruence with no proper one strictly below
      int atoms = 0;
      for (const auto& t : cs) {
        bool trivial = true;
        for (int i = 0; i < m.n; ++i)
          if (t[i] != i) trivial = false;
        if (trivial) continue;
        int below = 0;
        for (const auto& u : cs) {
          if (u == t) continue;
          bool utriv = true;
          for (int i = 0; i < m.n; ++i)
            if (u[i] != i) utriv = false;
          if (utriv) continue;
          // u <= t as partitions?
          bool finer = true;
          for (int x = 0; x < m.n && finer; ++x)
            for (int y = 0; y < m.n && finer; ++y)
              if (u[x] == u[y] && t[x] != t[y]) finer = false;
          if (finer) ++below;
        }
        if (below == 0) ++atoms;
      }
      CHECK(atoms == 1);
    }
}

TEST_CASE("fep closure of the unit alone is trivial") {
  FinAlgebra g4 = godel_chain(4);
  FepResult r = fep_closure(g4, {g4.unit});
  CHECK(r.algebra.n == 1);
  CHECK(validate(r.algebra).ok);
}

TEST_CASE("fep closure of {0,1} in the absolute-value 5-chain is C4") {
  // direct trace: top = 1, 1\0 = -2 exists, 0/1 = -1, meets add nothing new,
  // so the closure carrier is {-2,-1,0,1}
  FepResult r = fep_closure(abs_chain(2), {2, 3});
  CHECK(r.algebra.n == 4);
  CHECK(validate(r.algebra).ok);
  CHECK(r.carrier == std::vector<int>{0, 1, 2, 3});
  CHECK(is_isomorphic(r.algebra, c4()).has_value());
}

TEST_CASE("fep closure adjoins a fresh bottom when the top is in the subset") {
  FinAlgebra a = abs_chain(2);
  FepResult r = fep_closure(a, {4});  // the element 2, whose left residuals are missing
  CHECK(validate(r.algebra).ok);
  CHECK(std::count(r.carrier.begin(), r.carrier.end(), -1) == 1);
  CHECK(r.carrier.front() == -1);  // the fresh bottom is the least element
  PropertyFlags f = properties(r.algebra);
  CHECK(f.conservative);
  CHECK(f.totally_ordered);
}

TEST_CASE("fep closure preserves the defined partial operations") {
  FinAlgebra a = abs_chain(3);
  std::vector<int> subset = {1, 3, 4};  // values -2, 0, 1
  FepResult r = fep_closure(a, subset);
  CHECK(validate(r.algebra).ok);
  LatticeOps amb = lattice_ops(a);
  LatticeOps cls = lattice_ops(r.algebra);
  auto loc = [&](int ambient) {
    for (size_t i = 0; i < r.carrier.size(); ++i)
      if (r.carrier[i] == ambient) return static_cast<int>(i);
    return -1;
  };
  for (size_t i = 0; i < r.subset.size(); ++i)
    for (size_t j = 0; j < r.subset.size(); ++j) {
      int x = r.subset[i], y = r.subset[j];
      int xi = r.subset_map[i], yj = r.subset_map[j];
      if (loc(a.prod[x][y]) >= 0) CHECK(r.algebra.prod[xi][yj] == loc(a.prod[x][y]));
      if (loc(amb.meet[x][y]) >= 0) CHECK(cls.meet[xi][yj] == loc(amb.meet[x][y]));
      if (loc(amb.join[x][y]) >= 0) CHECK(cls.join[xi][yj] == loc(amb.join[x][y]));
      auto l = left_residual_scan(a, x, y);
      if (l && loc(*l) >= 0) CHECK((*r.algebra.ld)[xi][yj] == loc(*l));
      auto rr = right_residual_scan(a, x, y);
      if (rr && loc(*rr) >= 0) CHECK((*r.algebra.rd)[xi][yj] == loc(*rr));
    }
}

TEST_CASE("fep closure requires a conservative input") {
  CHECK_THROWS_AS(fep_closure(direct_product(boolean_2(), boolean_2()), {0}), Error);
}

TEST_CASE("fep closure on a non-chain ambient") {
  // the catalan diamond: bottom 0, incomparable middles 1 and 3, top 2
  FinAlgebra diamond = catalan_sum(boolean_2(), boolean_2());

  // both middles force the whole diamond back (their join is the top)
  FepResult full = fep_closure(diamond, {1, 3});
  CHECK(full.algebra.n == 4);
  CHECK(validate(full.algebra).ok);
  CHECK(is_isomorphic(full.algebra, diamond).has_value());
  CHECK_FALSE(properties(full.algebra).totally_ordered);

  // the bottom alone closes to a two-chain
  FepResult small = fep_closure(diamond, {0});
  CHECK(small.algebra.n == 2);
  CHECK(validate(small.algebra).ok);
  CHECK(properties(small.algebra).totally_ordered);
}

TEST_CASE("osm amalgamation") {
  FinAlgebra s3 = sugihara_chain(3);
  // identity span
  Amalgam same = amalgamate_osm({s3, s3, s3, {0, 1, 2}, {0, 1, 2}});
  CHECK(is_isomorphic(same.d, s3).has_value());

  // trivial base: B-negatives precede C-negatives in the shared gap
  Amalgam s5 = amalgamate_osm({trivial_algebra(), s3, s3, {1}, {1}});
  CHECK(s5.d.n == 5);
  CHECK(s5.d == sugihara_chain(5));
  CHECK(s5.j1 == std::vector<int>{0, 2, 4});
  CHECK(s5.j2 == std::vector<int>{1, 2, 3});

  // skeleton inclusions S3 -> S5 on both sides give S7
  FinAlgebra s5c = sugihara_chain(5);
  Amalgam s7 = amalgamate_osm({s3, s5c, s5c, {1, 2, 3}, {1, 2, 3}});
  CHECK(s7.d.n == 7);
  CHECK(check_homomorphism({s5c, s7.d, s7.j1}).ok);
  CHECK(check_homomorphism({s5c, s7.d, s7.j2}).ok);
  for (int x = 0; x < 3; ++x) CHECK(s7.j1[x + 1] == s7.j2[x + 1]);

  CHECK_THROWS_AS(amalgamate_osm({godel_chain(2), s3, s3, {0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(amalgamate_osm({s3, s3, s3, {0, 1, 2}, {2, 1, 0}}), Error);
}

TEST_CASE("cic amalgamation: two Goedel extensions merge into a Goedel four-chain") {
  FinAlgebra two = boolean_2();
  FinAlgebra g3 = godel_chain(3);
  Amalgam am = amalgamate_cic({two, g3, g3, {0, 2}, {0, 2}});
  CHECK(am.d.n == 4);
  CHECK(is_isomorphic(am.d, godel_chain(4)).has_value());
  CHECK(check_homomorphism({g3, am.d, am.j1}).ok);
  CHECK(check_homomorphism({g3, am.d, am.j2}).ok);
  CHECK(am.j1[1] != am.j2[1]);  // the two unshared middle elements stay distinct
  CHECK(am.j1[0] == am.j2[0]);
  CHECK(am.j1[2] == am.j2[2]);

  // the other valid embedding of the two-chain
  Amalgam am2 = amalgamate_cic({two, g3, g3, {1, 2}, {1, 2}});
  CHECK(am2.d.n == 4);
  CHECK(is_isomorphic(am2.d, godel_chain(4)).has_value());
}

TEST_CASE("cic amalgamation handles sugihara spans like the osm path") {
  FinAlgebra s3 = sugihara_chain(3);
  FinAlgebra s5 = sugihara_chain(5);
  Amalgam am = amalgamate_cic({s3, s5, s5, {1, 2, 3}, {1, 2, 3}});
  CHECK(am.d.n == 7);
  CHECK(is_isomorphic(am.d, sugihara_chain(7)).has_value());
}

TEST_CASE("cic amalgamation rejects wrong classes and broken spans") {
  CHECK_THROWS_AS(amalgamate_cic({boolean_2(), c4(), c4(), {0, 2}, {0, 2}}), Error);
  CHECK_THROWS_AS(amalgamate_cic({boolean_2(), godel_chain(3), godel_chain(3), {2, 0}, {0, 2}}),
                  Error);
}

TEST_CASE("c4 facts") {
  FinAlgebra a = c4();
  CHECK(validate(a).ok);
  CHECK_FALSE(properties(a).commutative);
  CHECK(properties(a).conservative);
  CHECK(congruences(a).size() == 2);
  CHECK_FALSE(is_isomorphic(a, opposite(a)).has_value());
  // only proper subalgebra is the unit
  for (int x = 0; x < 4; ++x) {
    auto gen = generated_subalgebra(a, {x});
    if (x == a.unit)
      CHECK(gen == std::vector<int>{2});
    else
      CHECK(gen.size() == 4);
  }
}
