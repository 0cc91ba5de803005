#ifndef RESLAT_COUNTING_HPP
#define RESLAT_COUNTING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "reslat/types.hpp"

namespace reslat {

/** Unsigned arbitrary-precision integer, base 2^32. Just enough arithmetic
 * for exact census formulas. */
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v);  // NOLINT(google-explicit-constructor): numeric literal convenience

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.d_ == b.d_; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }
  friend bool operator<(const BigUint& a, const BigUint& b);

  BigUint& operator+=(const BigUint& o);
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  /** Requires a >= b. */
  BigUint& operator-=(const BigUint& o);
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  friend BigUint operator*(const BigUint& a, const BigUint& b);
  BigUint& operator*=(const BigUint& o) { return *this = *this * o; }
  /** Exact division by a small divisor; throws Error(internal) on remainder. */
  BigUint div_exact(uint32_t d) const;

  bool is_zero() const { return d_.empty(); }
  std::string str() const;
  static BigUint pow2(unsigned e);

 private:
  std::vector<uint32_t> d_;  // little-endian, no leading zeros
  void trim();
};

/** Element a + b*sqrt(3) of the quadratic ring Z[sqrt(3)], coefficients
 * non-negative (all we need: powers of 1 + sqrt(3)). */
struct RootThreeInt {
  BigUint a;
  BigUint b;
  friend RootThreeInt operator*(const RootThreeInt& x, const RootThreeInt& y) {
    return {x.a * y.a + BigUint(3) * (x.b * y.b), x.a * y.b + x.b * y.a};
  }
};

BigUint binomial(unsigned n, unsigned k);

/** Commutative idempotent residuated chains of size n: 2^(n-2). */
BigUint count_cic(int n);
/** Idempotent residuated chains of size n, by the explicit double sum. */
BigUint count_ic_formula(int n);
/** Same census by the recurrence I(2)=1, I(3)=2, I(n+2)=2I(n)+2I(n+1). */
BigUint count_ic_recurrence(int n);
/** Same census from the quadratic-ring closed form. The conjugate-power
 * difference over 2*sqrt(3) is the sqrt(3)-coefficient of (1+sqrt(3))^e; the
 * exponent matching the recurrence is e = n-1 (e = n overshoots by one step,
 * see the audit test). */
BigUint count_ic_closed(int n);
/** Finite commutative conservative residuated lattices of size n: the
 * (n-1)th Catalan number. */
BigUint catalan_count(int n);

/** sqrt(3)-coefficient of (1+sqrt(3))^e, exposed for the closed-form audit. */
BigUint root3_coefficient(unsigned e);

}  // namespace reslat

#endif
