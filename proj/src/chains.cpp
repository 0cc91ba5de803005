#include "reslat/chains.hpp"

#include <algorithm>

#include "reslat/core.hpp"

namespace reslat {

std::string LacedCode::str() const {
  std::string s;
  for (Letter l : letters) {
    switch (l) {
      case Letter::neg: s += 'n'; break;
      case Letter::pos: s += 'p'; break;
      case Letter::cpair: s += 'C'; break;
      case Letter::ipair: s += 'I'; break;
    }
  }
  return s;
}

LacedCode LacedCode::parse(std::string_view text) {
  LacedCode c;
  for (char ch : text) {
    switch (ch) {
      case 'n': c.letters.push_back(Letter::neg); break;
      case 'p': c.letters.push_back(Letter::pos); break;
      case 'C': c.letters.push_back(Letter::cpair); break;
      case 'I': c.letters.push_back(Letter::ipair); break;
      default:
        throw Error(Errc::wrong_class, std::string("bad code letter '") + ch + "'");
    }
  }
  return c;
}

CompiledChain compile(const LacedCode& code) {
  const int levels = static_cast<int>(code.letters.size());
  const int n = code.size();
  CompiledChain out;
  out.code = code;
  out.level_of.assign(n, 0);
  out.sign_of.assign(n, 0);

  // Lattice layout: bottom, negatives ascending by level, unit, positives
  // descending by level. Each pair letter contributes one of each sign.
  int neg_count = 0;
  for (Letter l : code.letters)
    if (l != Letter::pos) ++neg_count;
  const int unit = 1 + neg_count;

  std::vector<int> neg_at(levels + 2, -1), pos_at(levels + 2, -1);
  {
    int next_neg = 1;
    int next_pos = n - 1;
    for (int lev = 1; lev <= levels; ++lev) {
      Letter l = code.letters[lev - 1];
      if (l != Letter::pos) neg_at[lev] = next_neg++;
      if (l != Letter::neg) pos_at[lev] = next_pos--;
    }
  }
  out.level_of[0] = 0;
  out.level_of[unit] = levels + 1;
  out.sign_of[0] = -1;
  for (int lev = 1; lev <= levels; ++lev) {
    if (neg_at[lev] >= 0) {
      out.level_of[neg_at[lev]] = lev;
      out.sign_of[neg_at[lev]] = -1;
    }
    if (pos_at[lev] >= 0) {
      out.level_of[pos_at[lev]] = lev;
      out.sign_of[pos_at[lev]] = 1;
    }
  }

  FinAlgebra a;
  a.n = n;
  a.chain = true;
  a.unit = unit;
  a.prod.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) {
        a.prod[x][y] = x;
      } else if (out.level_of[x] < out.level_of[y]) {
        a.prod[x][y] = x;
      } else if (out.level_of[x] > out.level_of[y]) {
        a.prod[x][y] = y;
      } else {
        Letter l = code.letters[out.level_of[x] - 1];
        a.prod[x][y] = (l == Letter::cpair) ? x : y;
      }
    }
  out.algebra = complete_residuals(std::move(a));
  return out;
}

LacedCode recover_code(const FinAlgebra& a) {
  PropertyFlags f = properties(a);
  // conservativity comes for free on residuated chains; demanding it here
  // keeps the level sort total on inputs that never were residuated
  if (!f.idempotent || !f.totally_ordered || !f.conservative)
    throw Error(Errc::wrong_class, "recover_code needs a conservative idempotent chain");
  if (!a.chain)
    for (int x = 0; x < a.n; ++x)
      for (int y = x + 1; y < a.n; ++y)
        if (!a.le(x, y))
          throw Error(Errc::wrong_class, "recover_code needs the canonical chain labeling");
  BoolMat pre = monoidal_preorder(a);
  const int n = a.n;

  // Noncommuting mates; everything else is strictly ⊑-comparable.
  std::vector<int> mate(n);
  for (int x = 0; x < n; ++x) {
    mate[x] = x;
    for (int y = 0; y < n; ++y)
      if (y != x && a.prod[x][y] != a.prod[y][x]) {
        if (mate[x] != x && mate[x] != y)
          throw Error(Errc::wrong_class, "element with two noncommuting mates");
        mate[x] = y;
      }
  }

  std::vector<int> reps;  // one representative per level, the lattice-smaller mate
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    seen[x] = 1;
    if (mate[x] != x) seen[mate[x]] = 1;
    reps.push_back(x);
  }
  std::sort(reps.begin(), reps.end(), [&](int x, int y) {
    return pre[x][y] && !pre[y][x];  // strict ⊑, total across levels
  });

  if (reps.front() != 0 || mate[0] != 0)
    throw Error(Errc::wrong_class, "bottom is not the strict least level");
  if (reps.back() != a.unit || mate[a.unit] != a.unit)
    throw Error(Errc::wrong_class, "unit is not the greatest singleton level");

  LacedCode code;
  for (size_t i = 1; i + 1 < reps.size(); ++i) {
    int x = reps[i];
    if (mate[x] == x) {
      code.letters.push_back(x < a.unit ? Letter::neg : Letter::pos);
    } else {
      bool comparable = pre[x][mate[x]] && pre[mate[x]][x];
      code.letters.push_back(comparable ? Letter::cpair : Letter::ipair);
    }
  }
  return code;
}

namespace {

void emit_codes(int remaining, bool commutative_only, LacedCode& cur,
                std::vector<LacedCode>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  static constexpr Letter kAll[] = {Letter::neg, Letter::pos, Letter::cpair, Letter::ipair};
  for (Letter l : kAll) {
    int w = (l == Letter::cpair || l == Letter::ipair) ? 2 : 1;
    if (w > remaining) continue;
    if (commutative_only && w == 2) continue;
    cur.letters.push_back(l);
    emit_codes(remaining - w, commutative_only, cur, out);
    cur.letters.pop_back();
  }
}

}  // namespace

std::vector<LacedCode> enumerate_codes(int n, bool commutative_only) {
  if (n < 2) throw Error(Errc::size_too_small, "codes start at carrier size 2");
  std::vector<LacedCode> out;
  LacedCode cur;
  emit_codes(n - 2, commutative_only, cur, out);
  std::sort(out.begin(), out.end(),
            [](const LacedCode& a, const LacedCode& b) { return a.letters < b.letters; });
  return out;
}

CheckReport check_laced_compatible(const BoolMat& pre, int unit) {
  const int n = static_cast<int>(pre.size());
  CheckReport r;
  if (n == 0) {
    r.fail("laced.empty", {});
    return r;
  }
  for (const auto& row : pre)
    if (static_cast<int>(row.size()) != n) throw Error(Errc::dimension_mismatch, "pre matrix");
  if (unit < 0 || unit >= n) throw Error(Errc::index_out_of_range, "unit");

  auto sle = [&](int x, int y) { return pre[x][y] != 0; };

  // laced 1: unique greatest element
  {
    std::vector<int> greatest;
    for (int g = 0; g < n; ++g) {
      bool all = true;
      for (int x = 0; x < n; ++x)
        if (!sle(x, g)) all = false;
      if (all) greatest.push_back(g);
    }
    if (greatest.size() != 1) r.fail("laced.greatest-unique", greatest);
  }

  // laced 2: at most one mate per element (mate: mutual or incomparable)
  std::vector<int> mate(n);
  for (int a = 0; a < n; ++a) {
    mate[a] = a;
    std::vector<int> mates;
    for (int y = 0; y < n; ++y)
      if (y != a && (sle(a, y) == sle(y, a))) mates.push_back(y);
    if (mates.size() > 1) {
      std::vector<int> w = {a};
      w.insert(w.end(), mates.begin(), mates.end());
      r.fail("laced.unique-mate", w);
    }
    if (mates.size() == 1) mate[a] = mates[0];
  }

  // laced 3: mates are ⊑-indistinguishable from outside the pair
  for (int a = 0; a < n; ++a) {
    if (mate[a] == a) continue;
    for (int x = 0; x < n; ++x) {
      if (x == a || x == mate[a]) continue;
      if (sle(a, x) != sle(mate[a], x) || sle(x, a) != sle(x, mate[a]))
        r.fail("laced.mate-alignment", {a, mate[a], x});
    }
  }

  // compatibility 1: the chain bottom is the strict ⊑-least element
  for (int x = 0; x < n; ++x)
    if (!sle(0, x)) r.fail("compat.bottom-least", {x});
  for (int x = 1; x < n; ++x)
    if (sle(x, 0)) r.fail("compat.bottom-strict", {x});

  // compatibility 2/3: positives reversed, negatives aligned
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (unit <= x && unit <= y && (x <= y) != sle(y, x)) r.fail("compat.positive-cone", {x, y});
      if (x <= unit && y <= unit && (x <= y) != sle(x, y)) r.fail("compat.negative-cone", {x, y});
    }

  // compatibility 4: pair members straddle the unit
  for (int x = 0; x < n; ++x)
    if (mate[x] != x && ((unit <= x) != (mate[x] <= unit))) r.fail("compat.pair-signs", {x, mate[x]});

  return r;
}

CheckReport validate_code_semantics(const LacedCode& code) {
  CompiledChain cc = compile(code);
  BoolMat pre = monoidal_preorder(cc.algebra);
  return check_laced_compatible(pre, cc.algebra.unit);
}

}  // namespace reslat
