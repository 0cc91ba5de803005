#include "reslat/counting.hpp"

#include <algorithm>

namespace reslat {

BigUint::BigUint(uint64_t v) {
  while (v) {
    d_.push_back(static_cast<uint32_t>(v));
    v >>= 32;
  }
}

void BigUint::trim() {
  while (!d_.empty() && d_.back() == 0) d_.pop_back();
}

bool operator<(const BigUint& a, const BigUint& b) {
  if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size();
  for (size_t i = a.d_.size(); i-- > 0;)
    if (a.d_[i] != b.d_[i]) return a.d_[i] < b.d_[i];
  return false;
}

BigUint& BigUint::operator+=(const BigUint& o) {
  d_.resize(std::max(d_.size(), o.d_.size()), 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < d_.size(); ++i) {
    uint64_t s = carry + d_[i] + (i < o.d_.size() ? o.d_[i] : 0);
    d_[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  if (carry) d_.push_back(static_cast<uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
  if (*this < o) throw Error(Errc::internal, "BigUint underflow");
  int64_t borrow = 0;
  for (size_t i = 0; i < d_.size(); ++i) {
    int64_t s = static_cast<int64_t>(d_[i]) - borrow - (i < o.d_.size() ? o.d_[i] : 0);
    borrow = 0;
    if (s < 0) {
      s += (1LL << 32);
      borrow = 1;
    }
    d_[i] = static_cast<uint32_t>(s);
  }
  trim();
  return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  BigUint r;
  if (a.is_zero() || b.is_zero()) return r;
  r.d_.assign(a.d_.size() + b.d_.size(), 0);
  for (size_t i = 0; i < a.d_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.d_.size(); ++j) {
      uint64_t cur = r.d_[i + j] + static_cast<uint64_t>(a.d_[i]) * b.d_[j] + carry;
      r.d_[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    size_t k = i + b.d_.size();
    while (carry) {
      uint64_t cur = r.d_[k] + carry;
      r.d_[k] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint BigUint::div_exact(uint32_t d) const {
  if (d == 0) throw Error(Errc::internal, "division by zero");
  BigUint q;
  q.d_.assign(d_.size(), 0);
  uint64_t rem = 0;
  for (size_t i = d_.size(); i-- > 0;) {
    uint64_t cur = (rem << 32) | d_[i];
    q.d_[i] = static_cast<uint32_t>(cur / d);
    rem = cur % d;
  }
  if (rem) throw Error(Errc::internal, "inexact division");
  q.trim();
  return q;
}

std::string BigUint::str() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> tmp = d_;
  std::string out;
  while (!tmp.empty()) {
    uint64_t rem = 0;
    for (size_t i = tmp.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | tmp[i];
      tmp[i] = static_cast<uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
    std::string chunk = std::to_string(rem);
    if (!tmp.empty()) chunk.insert(0, 9 - chunk.size(), '0');
    out.insert(0, chunk);
  }
  return out;
}

BigUint BigUint::pow2(unsigned e) {
  BigUint r;
  r.d_.assign(e / 32 + 1, 0);
  r.d_.back() = 1u << (e % 32);
  return r;
}

BigUint binomial(unsigned n, unsigned k) {
  if (k > n) return BigUint(0);
  k = std::min(k, n - k);
  BigUint r(1);
  for (unsigned i = 0; i < k; ++i) {
    r *= BigUint(n - i);
    r = r.div_exact(i + 1);
  }
  return r;
}

namespace {

void need_at_least(int n, int least) {
  if (n < least)
    throw Error(Errc::size_too_small,
                "size " + std::to_string(n) + " below minimum " + std::to_string(least));
}

// multinomial(a; b, c, d) with b+c+d = a required, 0 otherwise
BigUint multinomial3(int a, int b, int c, int d) {
  if (b < 0 || c < 0 || d < 0 || b + c + d != a) return BigUint(0);
  return binomial(static_cast<unsigned>(a), static_cast<unsigned>(b)) *
         binomial(static_cast<unsigned>(a - b), static_cast<unsigned>(c));
}

}  // namespace

BigUint count_cic(int n) {
  need_at_least(n, 2);
  return BigUint::pow2(static_cast<unsigned>(n - 2));
}

BigUint count_ic_formula(int n) {
  need_at_least(n, 2);
  BigUint total(0);
  const int half = n / 2;
  for (int s = 0; s <= half - 1; ++s)
    for (int t = 0; t <= half - 1 - s; ++t) {
      int r2 = n - 2 * (1 + s + t);  // number of central non-extremal elements
      if (r2 < 0) continue;
      total += BigUint::pow2(static_cast<unsigned>(r2)) * multinomial3(n - 2 - s - t, r2, s, t);
    }
  return total;
}

BigUint count_ic_recurrence(int n) {
  need_at_least(n, 2);
  BigUint prev(1), cur(2);  // I(2), I(3)
  if (n == 2) return prev;
  for (int k = 3; k < n; ++k) {
    BigUint next = BigUint(2) * (prev + cur);
    prev = cur;
    cur = next;
  }
  return cur;
}

BigUint root3_coefficient(unsigned e) {
  RootThreeInt base{BigUint(1), BigUint(1)};
  RootThreeInt acc{BigUint(1), BigUint(0)};
  for (unsigned i = 0; i < e; ++i) acc = acc * base;
  return acc.b;
}

BigUint count_ic_closed(int n) {
  need_at_least(n, 2);
  return root3_coefficient(static_cast<unsigned>(n - 1));
}

BigUint catalan_count(int n) {
  need_at_least(n, 1);
  unsigned m = static_cast<unsigned>(n - 1);
  return binomial(2 * m, m).div_exact(static_cast<uint32_t>(n));
}

}  // namespace reslat
