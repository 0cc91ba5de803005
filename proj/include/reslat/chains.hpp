#ifndef RESLAT_CHAINS_HPP
#define RESLAT_CHAINS_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "reslat/types.hpp"

namespace reslat {

enum class Letter : uint8_t { neg, pos, cpair, ipair };

/** Level word of a compatible laced preorder on a chain: the ⊑-levels
 * strictly between the bottom and the unit, ⊑-smallest first. `neg`/`pos`
 * are central singletons, `cpair`/`ipair` are noncommuting pairs (mutually
 * below each other resp. incomparable). Literal syntax: one of n p C I per
 * letter, empty string = the 2-element chain. */
struct LacedCode {
  std::vector<Letter> letters;

  int size() const {  // carrier size
    int n = 2;
    for (Letter l : letters) n += (l == Letter::cpair || l == Letter::ipair) ? 2 : 1;
    return n;
  }
  bool commutative() const {
    for (Letter l : letters)
      if (l == Letter::cpair || l == Letter::ipair) return false;
    return true;
  }
  std::string str() const;
  static LacedCode parse(std::string_view text);

  friend auto operator<=>(const LacedCode&, const LacedCode&) = default;
};

struct CompiledChain {
  FinAlgebra algebra;            // chain-tagged, residuals filled
  LacedCode code;
  std::vector<int> level_of;     // 0 = bottom level, letters.size()+1 = unit level
  std::vector<signed char> sign_of;  // -1 below unit, 0 unit, +1 above
};

/** Builds the canonical chain algebra of a level word: bottom, negatives in
 * ascending level order, unit, positives in descending level order; product
 * decided by levels (left argument wins inside a cpair level, right inside
 * an ipair level). */
CompiledChain compile(const LacedCode& code);

/** Inverse of compile on idempotent residuated chains under the canonical
 * labeling. Throws Error(wrong_class) when the input is not one. */
LacedCode recover_code(const FinAlgebra& a);

/** All level words of carrier size n, lexicographic (n < p < C < I);
 * pair letters excluded when commutative_only. */
std::vector<LacedCode> enumerate_codes(int n, bool commutative_only = false);

/** Checks the three lacing axioms and four compatibility conditions as
 * quantified statements over an explicit preorder matrix on the chain
 * 0 < 1 < ... < n-1. */
CheckReport check_laced_compatible(const BoolMat& pre, int unit);

/** Compiles the code and re-verifies the axioms on the resulting matrix. */
CheckReport validate_code_semantics(const LacedCode& code);

}  // namespace reslat

#endif
