#include "reslat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numeric>
#include <sstream>

#include "reslat/core.hpp"

namespace reslat {

ConstraintSet ConstraintSet::parse(const std::string& csv) {
  ConstraintSet cs;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok == "residuated") continue;
    if (tok == "idempotent")
      cs.idempotent = true;
    else if (tok == "commutative")
      cs.commutative = true;
    else if (tok == "conservative")
      cs.conservative = true;
    else if (tok == "chain")
      cs.chain = true;
    else if (tok == "bounded-annihilating-bottom")
      cs.bounded_bottom = true;
    else
      throw Error(Errc::wrong_class, "unknown constraint '" + tok + "'");
  }
  return cs;
}

std::string ConstraintSet::str() const {
  std::string s = "residuated";
  if (idempotent) s += ",idempotent";
  if (commutative) s += ",commutative";
  if (conservative) s += ",conservative";
  if (chain) s += ",chain";
  if (bounded_bottom) s += ",bounded-annihilating-bottom";
  return s;
}

uint64_t CanonicalForm::hash() const {
  uint64_t h = 1469598103934665603ull;
  for (int32_t v : key)
    for (int byte = 0; byte < 4; ++byte) {
      h ^= static_cast<uint8_t>(v >> (8 * byte));
      h *= 1099511628211ull;
    }
  return h;
}

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  uint64_t h = hash();
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

namespace {

// Order-part key of a relabeling: per new label v, the bits le(e_v, e_j) and
// le(e_j, e_v) for j < v. Ascending chains minimize to all (0,1) pairs, so
// the canonical labeling of a chain is the identity. The unit position and
// the product table are appended after the order part.
void order_key_level(const FinAlgebra& a, const std::vector<int>& inv, int v,
                     std::vector<int32_t>& out) {
  for (int j = 0; j < v; ++j) {
    out.push_back(a.le(inv[v], inv[j]));
    out.push_back(a.le(inv[j], inv[v]));
  }
}

// `tied` records whether the key so far equals the incumbent's prefix; once a
// position is strictly smaller, every continuation beats the incumbent.
void order_canonical_dfs(const FinAlgebra& a, std::vector<int>& inv, std::vector<char>& used,
                         std::vector<int32_t>& key, std::vector<int32_t>& best,
                         std::vector<std::vector<int>>& winners, bool tied) {
  const int v = static_cast<int>(inv.size());
  if (v == a.n) {
    if (winners.empty() || key < best) {
      best = key;
      winners.clear();
      winners.push_back(inv);
    } else if (key == best) {
      winners.push_back(inv);
    }
    return;
  }
  const size_t keylen = key.size();
  for (int e = 0; e < a.n; ++e) {
    if (used[e]) continue;
    inv.push_back(e);
    order_key_level(a, inv, v, key);
    bool viable = true;
    bool next_tied = tied;
    if (!winners.empty() && tied) {
      for (size_t i = keylen; i < key.size(); ++i) {
        if (key[i] < best[i]) {
          next_tied = false;
          break;
        }
        if (key[i] > best[i]) {
          viable = false;
          break;
        }
      }
    }
    if (viable) {
      used[e] = 1;
      order_canonical_dfs(a, inv, used, key, best, winners, next_tied);
      used[e] = 0;
    }
    key.resize(keylen);
    inv.pop_back();
  }
}

}  // namespace

namespace {

// Minimal full key plus a permutation (old label -> new label) achieving it.
std::pair<CanonicalForm, std::vector<int>> canonical_with_perm(const FinAlgebra& a) {
  const int n = a.n;
  std::vector<std::vector<int>> winners;
  std::vector<int32_t> best;
  {
    std::vector<int> inv;
    std::vector<char> used(n, 0);
    std::vector<int32_t> key;
    inv.reserve(n);
    order_canonical_dfs(a, inv, used, key, best, winners, true);
  }
  CanonicalForm out;
  std::vector<int> best_perm;
  bool first = true;
  for (const auto& inv : winners) {
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[inv[v]] = v;
    std::vector<int32_t> key;
    key.reserve(best.size() + static_cast<size_t>(n) * n + 2);
    key.push_back(n);
    key.insert(key.end(), best.begin(), best.end());
    key.push_back(perm[a.unit]);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) key.push_back(perm[a.prod[inv[x]][inv[y]]]);
    if (first || key < out.key) {
      out.key = std::move(key);
      best_perm = std::move(perm);
      first = false;
    }
  }
  return {std::move(out), std::move(best_perm)};
}

}  // namespace

CanonicalForm canonical(const FinAlgebra& a) { return canonical_with_perm(a).first; }

FinAlgebra canonical_representative(const FinAlgebra& a) {
  auto [form, perm] = canonical_with_perm(a);
  const int n = a.n;
  FinAlgebra b;
  b.n = n;
  b.unit = perm[a.unit];
  BoolMat leq(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) leq[perm[x]][perm[y]] = a.le(x, y);
  bool index_order = true;
  for (int x = 0; x < n && index_order; ++x)
    for (int y = 0; y < n && index_order; ++y)
      if (static_cast<bool>(leq[x][y]) != (x <= y)) index_order = false;
  b.chain = index_order;
  if (!index_order) b.leq = std::move(leq);
  b.prod.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) b.prod[perm[x]][perm[y]] = perm[a.prod[x][y]];
  auto relabel_table = [&](const Table& t) {
    Table out(n, std::vector<int>(n, 0));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) out[perm[x]][perm[y]] = perm[t[x][y]];
    return out;
  };
  if (a.ld) b.ld = relabel_table(*a.ld);
  if (a.rd) b.rd = relabel_table(*a.rd);
  return b;
}

std::optional<Embedding> is_isomorphic(const FinAlgebra& a, const FinAlgebra& b) {
  if (a.n != b.n) return std::nullopt;
  const int n = a.n;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);

  auto consistent = [&](int x, int y) {
    if ((x == a.unit) != (y == b.unit)) return false;
    for (int z = 0; z < n; ++z) {
      if (map[z] < 0) continue;
      if (a.le(x, z) != b.le(y, map[z]) || a.le(z, x) != b.le(map[z], y)) return false;
    }
    return true;
  };
  auto products_ok = [&](int x) {
    for (int z = 0; z < n; ++z) {
      if (map[z] < 0) continue;
      int p1 = a.prod[x][z], p2 = a.prod[z][x];
      if (map[p1] >= 0 && b.prod[map[x]][map[z]] != map[p1]) return false;
      if (map[p2] >= 0 && b.prod[map[z]][map[x]] != map[p2]) return false;
    }
    return true;
  };

  std::function<bool(int)> dfs = [&](int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[y] || !consistent(x, y)) continue;
      map[x] = y;
      used[y] = 1;
      if (products_ok(x) && dfs(x + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  // full re-check: products whose value was unassigned during the search
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (map[a.prod[x][y]] != b.prod[map[x]][map[y]]) return std::nullopt;
  return Embedding{a, b, map};
}

namespace {

// ---------------------------------------------------------------------------
// product-table backtracking on a fixed lattice order
// ---------------------------------------------------------------------------

struct TableSearch {
  const FinAlgebra* shape;  // n, chain/leq, no product
  LatticeOps ops;
  ConstraintSet cs;
  int unit = 0;
  Table prod;
  std::vector<std::pair<int, int>> cells;
  std::vector<FinAlgebra>* out;

  bool preset(int x, int y, int v) {
    int& cur = prod[x][y];
    if (cur >= 0 && cur != v) return false;
    cur = v;
    if (cs.commutative) {
      int& mir = prod[y][x];
      if (mir >= 0 && mir != v) return false;
      mir = v;
    }
    return true;
  }

  bool monotone_ok(int x, int y) {
    int v = prod[x][y];
    for (int y2 = 0; y2 < shape->n; ++y2) {
      int w = prod[x][y2];
      if (w < 0) continue;
      if (shape->le(y2, y) && !shape->le(w, v)) return false;
      if (shape->le(y, y2) && !shape->le(v, w)) return false;
    }
    for (int x2 = 0; x2 < shape->n; ++x2) {
      int w = prod[x2][y];
      if (w < 0) continue;
      if (shape->le(x2, x) && !shape->le(w, v)) return false;
      if (shape->le(x, x2) && !shape->le(v, w)) return false;
    }
    return true;
  }

  bool assoc_partial(int x, int y) {
    const int n = shape->n;
    for (int z = 0; z < n; ++z) {
      int xy = prod[x][y];
      int yz = prod[y][z];
      if (xy >= 0 && yz >= 0 && prod[xy][z] >= 0 && prod[x][yz] >= 0 &&
          prod[xy][z] != prod[x][yz])
        return false;
      int zx = prod[z][x];
      if (zx >= 0 && xy >= 0 && prod[zx][y] >= 0 && prod[z][xy] >= 0 &&
          prod[zx][y] != prod[z][xy])
        return false;
    }
    return true;
  }

  void leaf() {
    const int n = shape->n;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (prod[prod[x][y]][z] != prod[x][prod[y][z]]) return;
    // exact join preservation in both arguments
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (prod[x][ops.join[y][z]] != ops.join[prod[x][y]][prod[x][z]]) return;
          if (prod[ops.join[y][z]][x] != ops.join[prod[y][x]][prod[z][x]]) return;
        }
    FinAlgebra a;
    a.n = n;
    a.chain = shape->chain;
    a.leq = shape->leq;
    a.unit = unit;
    a.prod = prod;
    FinAlgebra full;
    try {
      full = complete_residuals(std::move(a));
    } catch (const Error&) {
      return;
    }
    if (!validate(full).ok) return;
    PropertyFlags f = properties(full);
    if (cs.idempotent && !f.idempotent) return;
    if (cs.commutative && !f.commutative) return;
    if (cs.conservative && !f.conservative) return;
    if (cs.chain && !f.totally_ordered) return;
    out->push_back(std::move(full));
  }

  void dive(size_t k) {
    if (k == cells.size()) {
      leaf();
      return;
    }
    auto [x, y] = cells[k];
    if (prod[x][y] >= 0) {
      if (monotone_ok(x, y) && assoc_partial(x, y)) dive(k + 1);
      return;
    }
    for (int v = 0; v < shape->n; ++v) {
      if (cs.conservative && v != x && v != y) continue;
      prod[x][y] = v;
      int mirror_was = -2;
      if (cs.commutative && x != y) {
        mirror_was = prod[y][x];
        if (mirror_was >= 0 && mirror_was != v) {
          prod[x][y] = -1;
          continue;
        }
        prod[y][x] = v;
      }
      if (monotone_ok(x, y) && assoc_partial(x, y) &&
          (!(cs.commutative && x != y) || (monotone_ok(y, x) && assoc_partial(y, x))))
        dive(k + 1);
      prod[x][y] = -1;
      if (mirror_was != -2) prod[y][x] = mirror_was;
    }
  }

  void run(int chosen_unit) {
    const int n = shape->n;
    unit = chosen_unit;
    prod.assign(n, std::vector<int>(n, -1));
    // fixed cells: unit row/column, annihilating bottom, idempotent diagonal
    for (int x = 0; x < n; ++x) {
      if (!preset(unit, x, x) || !preset(x, unit, x)) return;
      if (!preset(ops.bottom, x, ops.bottom) || !preset(x, ops.bottom, ops.bottom)) return;
      if ((cs.idempotent || cs.conservative) && !preset(x, x, x)) return;
    }
    cells.clear();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (!(cs.commutative && y < x)) cells.push_back({x, y});
    dive(0);
  }
};

// All lattice orders on 0..n-1 whose labeling is natural (x <= y in the
// order implies x <= y as integers). Every isomorphism class appears.
std::vector<FinAlgebra> natural_lattices(int n) {
  std::vector<FinAlgebra> out;
  if (n == 1) {
    FinAlgebra a;
    a.n = 1;
    a.chain = true;
    a.prod = {{0}};
    out.push_back(a);
    return out;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  const int bits = static_cast<int>(pairs.size());
  for (long mask = 0; mask < (1L << bits); ++mask) {
    BoolMat leq(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) leq[i][i] = 1;
    for (int b = 0; b < bits; ++b)
      if (mask & (1L << b)) leq[pairs[b].first][pairs[b].second] = 1;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        for (int z = 0; z < n && ok; ++z)
          if (leq[x][y] && leq[y][z] && !leq[x][z]) ok = false;
    if (!ok) continue;
    FinAlgebra a;
    a.n = n;
    a.chain = false;
    a.leq = std::move(leq);
    a.prod.assign(n, std::vector<int>(n, 0));  // placeholder for dimension checks
    try {
      (void)lattice_ops(a);
    } catch (const Error&) {
      continue;
    }
    bool is_chain = true;
    for (int x = 0; x < n && is_chain; ++x)
      for (int y = 0; y < n && is_chain; ++y)
        if (!a.le(x, y) && !a.le(y, x)) is_chain = false;
    if (is_chain) {
      a.chain = true;
      a.leq.clear();
    }
    out.push_back(std::move(a));
  }
  return out;
}

// Conservative + commutative: the monoidal order is total and determines the
// product, so iterate over (lattice, total order with the bottom least).
void cc_search(const FinAlgebra& shape, std::vector<FinAlgebra>& out) {
  const int n = shape.n;
  LatticeOps ops = lattice_ops(shape);
  std::vector<int> rest;
  for (int x = 0; x < n; ++x)
    if (x != ops.bottom) rest.push_back(x);
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> seq;
    seq.push_back(ops.bottom);
    seq.insert(seq.end(), rest.begin(), rest.end());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[seq[i]] = i;
    FinAlgebra a;
    a.n = n;
    a.chain = shape.chain;
    a.leq = shape.leq;
    a.unit = seq.back();
    a.prod.assign(n, std::vector<int>(n, 0));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) a.prod[x][y] = pos[x] <= pos[y] ? x : y;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        for (int z = 0; z < n && ok; ++z)
          if (a.prod[x][ops.join[y][z]] != ops.join[a.prod[x][y]][a.prod[x][z]]) ok = false;
    if (!ok) continue;
    try {
      FinAlgebra full = complete_residuals(std::move(a));
      if (validate(full).ok) out.push_back(std::move(full));
    } catch (const Error&) {
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
}

// Relabeling into canonical representatives keeps the output independent of
// the search and merge order, not just the set of isomorphism classes.
void dedup_sort(std::vector<FinAlgebra>& models) {
  std::vector<std::pair<CanonicalForm, FinAlgebra>> keyed;
  keyed.reserve(models.size());
  for (auto& m : models) keyed.push_back({canonical(m), canonical_representative(m)});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  models.clear();
  const CanonicalForm* prev = nullptr;
  for (auto& [k, m] : keyed) {
    if (prev == nullptr || !(k == *prev)) models.push_back(std::move(m));
    prev = &k;
  }
}

// Runs fn(0..count-1), each returning a model batch, on `jobs` workers with a
// stride split. The final canonical sort makes the merge order irrelevant.
template <typename Fn>
std::vector<FinAlgebra> parallel_collect(int count, int jobs, Fn&& fn) {
  std::vector<FinAlgebra> all;
  int workers = std::max(1, std::min(jobs, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) {
      auto part = fn(i);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return all;
  }
  std::vector<std::future<std::vector<FinAlgebra>>> futs;
  for (int t = 0; t < workers; ++t)
    futs.push_back(std::async(std::launch::async, [&fn, t, workers, count] {
      std::vector<FinAlgebra> acc;
      for (int i = t; i < count; i += workers) {
        auto part = fn(i);
        acc.insert(acc.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
      }
      return acc;
    }));
  for (auto& f : futs) {
    auto part = f.get();
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace

std::vector<FinAlgebra> brute_force(int n, const ConstraintSet& cs, int max_size, int jobs) {
  if (n < 1) throw Error(Errc::size_too_small, "need n >= 1");
  if (n > max_size)
    throw Error(Errc::too_large, "brute force capped at n = " + std::to_string(max_size) +
                                     " (RESLAT_MAX_BRUTE overrides)");
  std::vector<FinAlgebra> models;

  if (cs.chain) {
    FinAlgebra shape;
    shape.n = n;
    shape.chain = true;
    shape.prod.assign(n, std::vector<int>(n, 0));
    LatticeOps ops = lattice_ops(shape);
    models = parallel_collect(n, jobs, [&](int u) {
      std::vector<FinAlgebra> local;
      TableSearch ts;
      ts.shape = &shape;
      ts.ops = ops;
      ts.cs = cs;
      ts.out = &local;
      ts.run(u);
      return local;
    });
  } else {
    std::vector<FinAlgebra> shapes = natural_lattices(n);
    models = parallel_collect(static_cast<int>(shapes.size()), jobs, [&](int si) {
      const FinAlgebra& shape = shapes[si];
      std::vector<FinAlgebra> local;
      if (cs.conservative && cs.commutative) {
        cc_search(shape, local);
      } else {
        LatticeOps ops = lattice_ops(shape);
        for (int u = 0; u < n; ++u) {
          TableSearch ts;
          ts.shape = &shape;
          ts.ops = ops;
          ts.cs = cs;
          ts.out = &local;
          ts.run(u);
        }
      }
      return local;
    });
  }
  dedup_sort(models);
  return models;
}

}  // namespace reslat
