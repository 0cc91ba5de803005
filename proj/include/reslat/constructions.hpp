#ifndef RESLAT_CONSTRUCTIONS_HPP
#define RESLAT_CONSTRUCTIONS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "reslat/types.hpp"

namespace reslat {

/** Data of the S (x) X representation: a totally ordered odd Sugihara
 * monoid plus one fiber chain per skeleton element, the fiber top being
 * identified with that element. Only the fiber sizes matter. */
struct SkeletonDecomposition {
  FinAlgebra skeleton;
  std::vector<int> fiber_sizes;
};

/** Glues the fibers along the skeleton into a commutative idempotent
 * residuated chain (Error(bad_skeleton) / Error(bad_fibers) on bad data).
 * core::skeleton inverts it. */
FinAlgebra tensor(const SkeletonDecomposition& d);

/** The n-element totally ordered odd Sugihara monoid built from the
 * reflection involution (n odd; Error(even_size) otherwise). */
FinAlgebra sugihara_chain(int n);

/** The chain -k..-1,0,1..k with x.y = x when |x| >= |y| else y, unit 0.
 * Left residuals at the top element do not exist, so the result carries no
 * residual tables; validate reports exactly those gaps. */
FinAlgebra abs_chain(int k);

FinAlgebra trivial_algebra();

/** C4: the four-element noncommutative chain, compile("C"). */
FinAlgebra c4();

/** Two-part gluing of commutative conservative residuated lattices: new
 * monoidal order {bot_A} (+) B (+) A\{bot_A}, lattice order per the pasted
 * diagram. Error(wrong_class) on inputs outside the class. */
FinAlgebra catalan_sum(const FinAlgebra& a, const FinAlgebra& b);

/** Inverse of catalan_sum up to isomorphism: splits at the unique atom of
 * the monoidal chain. */
std::pair<FinAlgebra, FinAlgebra> catalan_decompose(const FinAlgebra& c);

/** All Catalan algebras of size n up to isomorphism, built recursively;
 * the count is the (n-1)th Catalan number. */
std::vector<FinAlgebra> enumerate_catalan(int n);
void enumerate_catalan(int n, const std::function<void(const FinAlgebra&)>& visit);

struct FepResult {
  FinAlgebra algebra;            // the closure, validated residuated
  std::vector<int> carrier;      // closure index -> ambient index, -1 for an adjoined bottom
  std::vector<int> subset;       // the input subset, sorted and deduplicated
  std::vector<int> subset_map;   // aligned with subset: images in the closure
};

/** Finite-embeddability closure of a subset inside a finite conservative
 * lattice-ordered monoid: joins the subset with the unit, the two residuals
 * at its supremum and the meets with the unit, then closes under joins and
 * residuates the restriction. When the ambient lacks one of the two needed
 * residuals a fresh annihilating bottom is adjoined first. */
FepResult fep_closure(const FinAlgebra& a, std::vector<int> subset);

struct Span {
  FinAlgebra a, b, c;
  std::vector<int> i1;  // A -> B
  std::vector<int> i2;  // A -> C
};

struct Amalgam {
  FinAlgebra d;
  std::vector<int> j1;  // B -> D
  std::vector<int> j2;  // C -> D
};

/** Amalgamates a span of totally ordered odd Sugihara monoids: merges the
 * negative cones over the shared part (B-only elements before C-only ones in
 * each gap), mirrors through the involution, rebuilds by the involution
 * construction. */
Amalgam amalgamate_osm(const Span& s);

/** Amalgamates a span of commutative idempotent residuated chains: skeleton
 * amalgam via amalgamate_osm, fiberwise chain amalgams with the same merge
 * rule, then tensor. */
Amalgam amalgamate_cic(const Span& s);

}  // namespace reslat

#endif
