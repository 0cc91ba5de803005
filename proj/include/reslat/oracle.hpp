#ifndef RESLAT_ORACLE_HPP
#define RESLAT_ORACLE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reslat/types.hpp"

namespace reslat {

/** Flags for the brute-force search; residuation is always imposed. */
struct ConstraintSet {
  bool idempotent = false;
  bool commutative = false;
  bool conservative = false;
  bool chain = false;
  bool bounded_bottom = false;  // always true of finite residuated lattices

  static ConstraintSet parse(const std::string& csv);
  std::string str() const;
};

/** Total isomorphism invariant: the lexicographically least relabeled
 * (order, unit, product) tuple. Equal forms iff isomorphic. */
struct CanonicalForm {
  std::vector<int32_t> key;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  uint64_t hash() const;
  std::string hex() const;
};

CanonicalForm canonical(const FinAlgebra& a);

/** The algebra relabeled into its canonical form; canonicalization fixes it. */
FinAlgebra canonical_representative(const FinAlgebra& a);

/** A witnessing isomorphism (bijective homomorphism), or nothing. */
std::optional<Embedding> is_isomorphic(const FinAlgebra& a, const FinAlgebra& b);

/** Exhaustive residuated-lattice search on carrier size n under the given
 * constraints, deduplicated by canonical form and sorted by it. `max_size`
 * caps n (Error(too_large)); `jobs` splits the top search level. */
std::vector<FinAlgebra> brute_force(int n, const ConstraintSet& cs, int max_size = 6,
                                    int jobs = 1);

}  // namespace reslat

#endif
