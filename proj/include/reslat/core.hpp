#ifndef RESLAT_CORE_HPP
#define RESLAT_CORE_HPP

#include <optional>
#include <vector>

#include "reslat/types.hpp"

namespace reslat {

/** Meet/join tables plus the bounds of a finite lattice. */
struct LatticeOps {
  int n = 0;
  Table meet;
  Table join;
  int bottom = 0;
  int top = 0;
};

/** Computes meets and joins of `a`'s order; throws Error(wrong_class) when a
 * pair has no greatest lower / least upper bound. */
LatticeOps lattice_ops(const FinAlgebra& a);

/** Full axiom check: lattice, monoid, and residuation.
 *
 * With residual tables present the two adjunctions are checked literally;
 * without them the report instead records every (x,c) whose residual set is
 * empty or lacks a greatest element. Structural problems (bad dimensions,
 * out-of-range entries) throw instead of being reported.
 */
CheckReport validate(const FinAlgebra& a);

/** max{z : x.z <= c}, or nullopt when the set is empty or has no greatest
 * element. Works on any algebra with a product and an order. */
std::optional<int> left_residual_scan(const FinAlgebra& a, int x, int c);
/** max{z : z.y <= c}, dual scan. */
std::optional<int> right_residual_scan(const FinAlgebra& a, int c, int y);

/** Fills in ld/rd by scanning; throws Error(not_residuable) when some scan
 * fails or the filled tables do not satisfy the adjunctions. */
FinAlgebra complete_residuals(FinAlgebra a);

PropertyFlags properties(const FinAlgebra& a);

/** The relation x ⊑ y :<=> xy = x, as a boolean matrix.
 * Requires an idempotent product (throws Error(not_idempotent)). */
BoolMat monoidal_preorder(const FinAlgebra& a);

/** The closure operator x -> (a/x)\a as an index map.
 * Requires residual tables (Error(missing_residuals)). */
std::vector<int> gamma_closure(const FinAlgebra& a, int elem);

struct SkeletonResult {
  FinAlgebra skeleton;                  // chain-tagged, residuals present
  std::vector<int> elements;            // skeleton index -> original index, lattice-ascending
  std::vector<std::vector<int>> fibers; // fibers[i]: original indices, lattice-ascending, last = elements[i]
};

/** Decomposes a commutative idempotent residuated chain into its gamma_1
 * image and fibers (Error(wrong_class) otherwise). */
SkeletonResult skeleton(const FinAlgebra& a);

/** Least subset containing `seed` and the unit, closed under meet, join,
 * product and both residuals. Residuals are taken from the tables when
 * present, otherwise by scan, skipping undefined entries. */
std::vector<int> generated_subalgebra(const FinAlgebra& a, const std::vector<int>& seed);

/** All congruences (partitions compatible with the six operations), as
 * normalized class-id vectors sorted lexicographically. Throws
 * Error(too_large) when n exceeds `max_n`. */
std::vector<std::vector<int>> congruences(const FinAlgebra& a, int max_n = 7);

/** Pointwise preservation of meet, join, product, both residuals and the
 * unit. Throws Error(not_injective) / Error(index_out_of_range) on a bad
 * map; semantic failures land in the report. */
CheckReport check_homomorphism(const Embedding& e);

/** Same carrier and order, product (and residuals) transposed. */
FinAlgebra opposite(const FinAlgebra& a);

}  // namespace reslat

#endif
