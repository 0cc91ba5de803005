#include "reslat/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace reslat {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_residuable: return "NotResiduable";
    case Errc::not_idempotent: return "NotIdempotent";
    case Errc::missing_residuals: return "MissingResiduals";
    case Errc::wrong_class: return "WrongClass";
    case Errc::not_injective: return "NotInjective";
    case Errc::too_large: return "TooLarge";
    case Errc::size_too_small: return "SizeTooSmall";
    case Errc::even_size: return "EvenSize";
    case Errc::bad_skeleton: return "BadSkeleton";
    case Errc::bad_fibers: return "BadFibers";
    case Errc::incompatible_span: return "IncompatibleSpan";
    case Errc::no_atom: return "NoAtom";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

namespace {

void check_table(const Table& t, int n, const char* name) {
  if (static_cast<int>(t.size()) != n)
    throw Error(Errc::dimension_mismatch, std::string(name) + " has wrong row count");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::dimension_mismatch, std::string(name) + " has a short row");
    for (int v : row)
      if (v < 0 || v >= n)
        throw Error(Errc::index_out_of_range, std::string(name) + " entry out of range");
  }
}

void check_dims(const FinAlgebra& a) {
  if (a.n <= 0) throw Error(Errc::dimension_mismatch, "empty carrier");
  if (a.unit < 0 || a.unit >= a.n) throw Error(Errc::index_out_of_range, "unit out of range");
  if (!a.chain) {
    if (static_cast<int>(a.leq.size()) != a.n)
      throw Error(Errc::dimension_mismatch, "leq has wrong row count");
    for (const auto& row : a.leq)
      if (static_cast<int>(row.size()) != a.n)
        throw Error(Errc::dimension_mismatch, "leq has a short row");
  }
  check_table(a.prod, a.n, "prod");
  if (a.ld) check_table(*a.ld, a.n, "ld");
  if (a.rd) check_table(*a.rd, a.n, "rd");
}

// Greatest element of a nonempty subset, or -1 when it has none.
int greatest_of(const FinAlgebra& a, const std::vector<int>& xs) {
  for (int m : xs) {
    bool top = true;
    for (int x : xs)
      if (!a.le(x, m)) {
        top = false;
        break;
      }
    if (top) return m;
  }
  return -1;
}

}  // namespace

LatticeOps lattice_ops(const FinAlgebra& a) {
  check_dims(a);
  const int n = a.n;
  LatticeOps ops;
  ops.n = n;
  ops.meet.assign(n, std::vector<int>(n, 0));
  ops.join.assign(n, std::vector<int>(n, 0));
  if (a.chain) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        ops.meet[x][y] = std::min(x, y);
        ops.join[x][y] = std::max(x, y);
      }
    ops.bottom = 0;
    ops.top = n - 1;
    return ops;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::vector<int> lower, upper;
      for (int z = 0; z < n; ++z) {
        if (a.le(z, x) && a.le(z, y)) lower.push_back(z);
        if (a.le(x, z) && a.le(y, z)) upper.push_back(z);
      }
      int m = greatest_of(a, lower);
      if (m < 0) throw Error(Errc::wrong_class, "pair without meet");
      ops.meet[x][y] = m;
      int j = -1;
      for (int cand : upper) {
        bool least = true;
        for (int u : upper)
          if (!a.le(cand, u)) {
            least = false;
            break;
          }
        if (least) {
          j = cand;
          break;
        }
      }
      if (j < 0) throw Error(Errc::wrong_class, "pair without join");
      ops.join[x][y] = j;
    }
  ops.bottom = 0;
  ops.top = 0;
  for (int x = 0; x < n; ++x) {
    ops.bottom = ops.meet[ops.bottom][x];
    ops.top = ops.join[ops.top][x];
  }
  return ops;
}

CheckReport validate(const FinAlgebra& a) {
  check_dims(a);
  const int n = a.n;
  CheckReport r;

  if (!a.chain) {
    for (int x = 0; x < n; ++x)
      if (!a.le(x, x)) r.fail("lattice.reflexive", {x});
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y && a.le(x, y) && a.le(y, x)) r.fail("lattice.antisymmetric", {x, y});
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (a.le(x, y) && a.le(y, z) && !a.le(x, z)) r.fail("lattice.transitive", {x, y, z});
    if (!r.ok) return r;  // meets/joins are meaningless on a non-order
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        std::vector<int> lower, upper;
        for (int z = 0; z < n; ++z) {
          if (a.le(z, x) && a.le(z, y)) lower.push_back(z);
          if (a.le(x, z) && a.le(y, z)) upper.push_back(z);
        }
        if (lower.empty() || greatest_of(a, lower) < 0) r.fail("lattice.meet-exists", {x, y});
        bool has_join = false;
        for (int cand : upper) {
          bool least = true;
          for (int u : upper)
            if (!a.le(cand, u)) least = false;
          if (least) has_join = true;
        }
        if (!has_join) r.fail("lattice.join-exists", {x, y});
      }
  }

  for (int x = 0; x < n; ++x) {
    if (a.prod[a.unit][x] != x) r.fail("monoid.identity", {a.unit, x});
    if (a.prod[x][a.unit] != x) r.fail("monoid.identity", {x, a.unit});
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (a.prod[a.prod[x][y]][z] != a.prod[x][a.prod[y][z]])
          r.fail("monoid.associative", {x, y, z});

  if (a.ld) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int c = 0; c < n; ++c)
          if (a.le(a.prod[x][y], c) != a.le(y, (*a.ld)[x][c]))
            r.fail("residual.left-adjunction", {x, y, c});
  } else {
    for (int x = 0; x < n; ++x)
      for (int c = 0; c < n; ++c)
        if (!left_residual_scan(a, x, c)) r.fail("residual.left-exists", {x, c});
  }
  if (a.rd) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int c = 0; c < n; ++c)
          if (a.le(a.prod[x][y], c) != a.le(x, (*a.rd)[c][y]))
            r.fail("residual.right-adjunction", {x, y, c});
  } else {
    for (int y = 0; y < n; ++y)
      for (int c = 0; c < n; ++c)
        if (!right_residual_scan(a, c, y)) r.fail("residual.right-exists", {c, y});
  }
  return r;
}

std::optional<int> left_residual_scan(const FinAlgebra& a, int x, int c) {
  std::vector<int> zs;
  for (int z = 0; z < a.n; ++z)
    if (a.le(a.prod[x][z], c)) zs.push_back(z);
  if (zs.empty()) return std::nullopt;
  int m = greatest_of(a, zs);
  if (m < 0) return std::nullopt;
  return m;
}

std::optional<int> right_residual_scan(const FinAlgebra& a, int c, int y) {
  std::vector<int> zs;
  for (int z = 0; z < a.n; ++z)
    if (a.le(a.prod[z][y], c)) zs.push_back(z);
  if (zs.empty()) return std::nullopt;
  int m = greatest_of(a, zs);
  if (m < 0) return std::nullopt;
  return m;
}

FinAlgebra complete_residuals(FinAlgebra a) {
  check_dims(a);
  const int n = a.n;
  Table ld(n, std::vector<int>(n, 0)), rd(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < n; ++c) {
      auto l = left_residual_scan(a, x, c);
      if (!l) throw Error(Errc::not_residuable, "no left residual at (" + std::to_string(x) +
                                                    "," + std::to_string(c) + ")");
      ld[x][c] = *l;
      auto rr = right_residual_scan(a, c, x);
      if (!rr) throw Error(Errc::not_residuable, "no right residual at (" + std::to_string(c) +
                                                     "," + std::to_string(x) + ")");
      rd[c][x] = *rr;
    }
  a.ld = std::move(ld);
  a.rd = std::move(rd);
  // The scans can succeed while the adjunction fails (non-join-preserving
  // product); that still means the precondition did not hold.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int c = 0; c < n; ++c) {
        bool pc = a.le(a.prod[x][y], c);
        if (pc != a.le(y, (*a.ld)[x][c]) || pc != a.le(x, (*a.rd)[c][y]))
          throw Error(Errc::not_residuable, "adjunction fails at (" + std::to_string(x) + "," +
                                                std::to_string(y) + "," + std::to_string(c) + ")");
      }
  return a;
}

PropertyFlags properties(const FinAlgebra& a) {
  check_dims(a);
  const int n = a.n;
  PropertyFlags f;
  f.idempotent = true;
  f.commutative = true;
  f.conservative = true;
  f.totally_ordered = true;
  for (int x = 0; x < n; ++x) {
    if (a.prod[x][x] != x) f.idempotent = false;
    for (int y = 0; y < n; ++y) {
      if (a.prod[x][y] != a.prod[y][x]) f.commutative = false;
      if (a.prod[x][y] != x && a.prod[x][y] != y) f.conservative = false;
      if (!a.le(x, y) && !a.le(y, x)) f.totally_ordered = false;
    }
  }
  f.odd_sugihara = f.totally_ordered && f.commutative && f.idempotent;
  if (f.odd_sugihara) {
    std::vector<int> neg(n, -1);
    for (int x = 0; x < n && f.odd_sugihara; ++x) {
      if (a.ld) {
        neg[x] = (*a.ld)[x][a.unit];
      } else {
        auto l = left_residual_scan(a, x, a.unit);
        if (!l) {
          f.odd_sugihara = false;
          break;
        }
        neg[x] = *l;
      }
    }
    if (f.odd_sugihara)
      for (int x = 0; x < n; ++x)
        if (neg[neg[x]] != x) f.odd_sugihara = false;
  }
  return f;
}

BoolMat monoidal_preorder(const FinAlgebra& a) {
  check_dims(a);
  const int n = a.n;
  for (int x = 0; x < n; ++x)
    if (a.prod[x][x] != x)
      throw Error(Errc::not_idempotent, "prod[" + std::to_string(x) + "][" + std::to_string(x) +
                                            "] != " + std::to_string(x));
  const size_t un = static_cast<size_t>(n);
  BoolMat pre(un, std::vector<char>(un, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) pre[x][y] = (a.prod[x][y] == x);
  // Preorder facts from idempotence/associativity; a breach means the input
  // was not a monoid (or its bottom fails to annihilate from the left).
  int bottom = 0;
  for (int x = 0; x < n; ++x)
    if (a.le(x, bottom)) bottom = x;
  for (int x = 0; x < n; ++x) {
    if (!pre[x][x]) throw Error(Errc::internal, "monoidal preorder not reflexive");
    if (!pre[x][a.unit]) throw Error(Errc::internal, "unit not greatest in monoidal preorder");
    if (!pre[bottom][x]) throw Error(Errc::internal, "lattice bottom not least in monoidal preorder");
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (pre[x][y] && pre[y][z] && !pre[x][z])
          throw Error(Errc::internal, "monoidal preorder not transitive");
  }
  return pre;
}

std::vector<int> gamma_closure(const FinAlgebra& a, int elem) {
  check_dims(a);
  if (elem < 0 || elem >= a.n) throw Error(Errc::index_out_of_range, "gamma base element");
  if (!a.has_residuals()) throw Error(Errc::missing_residuals, "gamma_closure needs ld and rd");
  const int n = a.n;
  std::vector<int> g(n);
  for (int x = 0; x < n; ++x) g[x] = (*a.ld)[(*a.rd)[elem][x]][elem];
  for (int x = 0; x < n; ++x) {
    if (!a.le(x, g[x])) throw Error(Errc::internal, "gamma not inflationary");
    if (g[g[x]] != g[x]) throw Error(Errc::internal, "gamma not idempotent");
    for (int y = 0; y < n; ++y)
      if (a.le(x, y) && !a.le(g[x], g[y])) throw Error(Errc::internal, "gamma not monotone");
  }
  return g;
}

namespace {

// Lattice-ascending positions of a totally ordered algebra with arbitrary leq.
std::vector<int> chain_order(const FinAlgebra& a) {
  std::vector<int> idx(a.n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int x, int y) { return x != y && a.le(x, y); });
  return idx;  // idx[k] = element at lattice position k
}

}  // namespace

SkeletonResult skeleton(const FinAlgebra& a) {
  PropertyFlags f = properties(a);
  if (!f.commutative || !f.idempotent || !f.totally_ordered)
    throw Error(Errc::wrong_class, "skeleton needs a commutative idempotent chain");
  FinAlgebra work = a.has_residuals() ? a : complete_residuals(a);
  std::vector<int> g = gamma_closure(work, work.unit);

  std::vector<int> order = chain_order(work);
  std::vector<int> pos(work.n);
  for (int k = 0; k < work.n; ++k) pos[order[k]] = k;

  SkeletonResult out;
  for (int k = 0; k < work.n; ++k)
    if (g[order[k]] == order[k]) out.elements.push_back(order[k]);
  std::vector<int> sk_index(work.n, -1);
  for (int i = 0; i < static_cast<int>(out.elements.size()); ++i) sk_index[out.elements[i]] = i;

  out.fibers.assign(out.elements.size(), {});
  for (int k = 0; k < work.n; ++k) {
    int x = order[k];
    int c = g[x];
    if (sk_index[c] < 0) throw Error(Errc::internal, "gamma image not gamma-closed");
    out.fibers[sk_index[c]].push_back(x);
  }
  for (size_t i = 0; i < out.fibers.size(); ++i) {
    const auto& fib = out.fibers[i];
    if (fib.empty() || fib.back() != out.elements[i])
      throw Error(Errc::internal, "fiber top mismatch");
    for (size_t j = 1; j < fib.size(); ++j)
      if (pos[fib[j]] != pos[fib[j - 1]] + 1) throw Error(Errc::internal, "fiber not an interval");
  }

  const int m = static_cast<int>(out.elements.size());
  FinAlgebra s;
  s.n = m;
  s.chain = true;
  s.unit = sk_index[work.unit];
  s.prod.assign(m, std::vector<int>(m, 0));
  Table ld(m, std::vector<int>(m, 0)), rd(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = work.prod[out.elements[i]][out.elements[j]];
      int l = (*work.ld)[out.elements[i]][out.elements[j]];
      int rr = (*work.rd)[out.elements[i]][out.elements[j]];
      if (sk_index[p] < 0 || sk_index[l] < 0 || sk_index[rr] < 0)
        throw Error(Errc::internal, "skeleton not closed under the operations");
      s.prod[i][j] = sk_index[p];
      ld[i][j] = sk_index[l];
      rd[i][j] = sk_index[rr];
    }
  s.ld = std::move(ld);
  s.rd = std::move(rd);
  if (!properties(s).odd_sugihara)
    throw Error(Errc::internal, "skeleton is not an odd Sugihara chain");
  out.skeleton = std::move(s);
  return out;
}

std::vector<int> generated_subalgebra(const FinAlgebra& a, const std::vector<int>& seed) {
  check_dims(a);
  for (int s : seed)
    if (s < 0 || s >= a.n) throw Error(Errc::index_out_of_range, "seed element");
  LatticeOps ops = lattice_ops(a);
  std::vector<char> in(a.n, 0);
  std::vector<int> work;
  auto add = [&](int x) {
    if (x >= 0 && !in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  };
  add(a.unit);
  for (int s : seed) add(s);
  for (size_t i = 0; i < work.size(); ++i) {
    int x = work[i];
    for (size_t j = 0; j <= i; ++j) {
      int y = work[j];
      for (auto [u, v] : {std::pair{x, y}, std::pair{y, x}}) {
        add(ops.meet[u][v]);
        add(ops.join[u][v]);
        add(a.prod[u][v]);
        if (a.ld) {
          add((*a.ld)[u][v]);
        } else if (auto l = left_residual_scan(a, u, v)) {
          add(*l);
        }
        if (a.rd) {
          add((*a.rd)[u][v]);
        } else if (auto rr = right_residual_scan(a, u, v)) {
          add(*rr);
        }
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < a.n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

namespace {

std::vector<int> normalize_partition(std::vector<int> cls) {
  std::vector<int> remap(cls.size(), -1);
  int next = 0;
  for (int& c : cls) {
    if (remap[c] < 0) remap[c] = next++;
    c = remap[c];
  }
  return cls;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[y] = x;
    return true;
  }
};

std::vector<int> congruence_generated(const FinAlgebra& a, const LatticeOps& ops,
                                      const std::vector<std::pair<int, int>>& pairs) {
  UnionFind uf(a.n);
  std::vector<std::pair<int, int>> queue;
  for (auto [x, y] : pairs)
    if (uf.unite(x, y)) queue.emplace_back(x, y);
  const Table& ld = *a.ld;
  const Table& rd = *a.rd;
  for (size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (int z = 0; z < a.n; ++z) {
      auto push = [&](int u, int v) {
        if (uf.unite(u, v)) queue.emplace_back(u, v);
      };
      push(a.prod[x][z], a.prod[y][z]);
      push(a.prod[z][x], a.prod[z][y]);
      push(ops.meet[x][z], ops.meet[y][z]);
      push(ops.join[x][z], ops.join[y][z]);
      push(ld[x][z], ld[y][z]);
      push(ld[z][x], ld[z][y]);
      push(rd[x][z], rd[y][z]);
      push(rd[z][x], rd[z][y]);
    }
  }
  std::vector<int> cls(a.n);
  for (int x = 0; x < a.n; ++x) cls[x] = uf.find(x);
  return normalize_partition(std::move(cls));
}

}  // namespace

std::vector<std::vector<int>> congruences(const FinAlgebra& a, int max_n) {
  check_dims(a);
  if (a.n > max_n) throw Error(Errc::too_large, "congruence search capped at n = " + std::to_string(max_n));
  FinAlgebra work = a.has_residuals() ? a : complete_residuals(a);
  LatticeOps ops = lattice_ops(work);

  std::set<std::vector<int>> found;
  std::vector<int> delta(work.n);
  std::iota(delta.begin(), delta.end(), 0);
  found.insert(delta);

  std::vector<std::vector<int>> principals;
  for (int x = 0; x < work.n; ++x)
    for (int y = x + 1; y < work.n; ++y) {
      auto cg = congruence_generated(work, ops, {{x, y}});
      if (found.insert(cg).second) principals.push_back(cg);
    }

  // Close under joins; every congruence is a join of principal ones.
  std::vector<std::vector<int>> worklist(found.begin(), found.end());
  for (size_t i = 0; i < worklist.size(); ++i)
    for (const auto& p : principals) {
      std::vector<std::pair<int, int>> pairs;
      for (int x = 0; x < work.n; ++x)
        for (int y = x + 1; y < work.n; ++y)
          if (worklist[i][x] == worklist[i][y] || p[x] == p[y]) pairs.emplace_back(x, y);
      auto joined = congruence_generated(work, ops, pairs);
      if (found.insert(joined).second) worklist.push_back(joined);
    }
  return {found.begin(), found.end()};
}

CheckReport check_homomorphism(const Embedding& e) {
  check_dims(e.source);
  check_dims(e.target);
  if (static_cast<int>(e.map.size()) != e.source.n)
    throw Error(Errc::dimension_mismatch, "map length != source size");
  std::vector<char> seen(e.target.n, 0);
  for (int im : e.map) {
    if (im < 0 || im >= e.target.n) throw Error(Errc::index_out_of_range, "map image");
    if (seen[im]) throw Error(Errc::not_injective, "map repeats " + std::to_string(im));
    seen[im] = 1;
  }
  FinAlgebra src = e.source.has_residuals() ? e.source : complete_residuals(e.source);
  FinAlgebra tgt = e.target.has_residuals() ? e.target : complete_residuals(e.target);
  LatticeOps sops = lattice_ops(src);
  LatticeOps tops = lattice_ops(tgt);
  CheckReport r;
  const auto& m = e.map;
  if (m[src.unit] != tgt.unit) r.fail("hom.unit", {src.unit});
  for (int x = 0; x < src.n; ++x)
    for (int y = 0; y < src.n; ++y) {
      if (m[sops.meet[x][y]] != tops.meet[m[x]][m[y]]) r.fail("hom.meet", {x, y});
      if (m[sops.join[x][y]] != tops.join[m[x]][m[y]]) r.fail("hom.join", {x, y});
      if (m[src.prod[x][y]] != tgt.prod[m[x]][m[y]]) r.fail("hom.prod", {x, y});
      if (m[(*src.ld)[x][y]] != (*tgt.ld)[m[x]][m[y]]) r.fail("hom.ld", {x, y});
      if (m[(*src.rd)[x][y]] != (*tgt.rd)[m[x]][m[y]]) r.fail("hom.rd", {x, y});
    }
  return r;
}

FinAlgebra opposite(const FinAlgebra& a) {
  check_dims(a);
  FinAlgebra b = a;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) b.prod[x][y] = a.prod[y][x];
  if (a.ld && a.rd) {
    Table ld(a.n, std::vector<int>(a.n, 0)), rd(a.n, std::vector<int>(a.n, 0));
    for (int x = 0; x < a.n; ++x)
      for (int c = 0; c < a.n; ++c) {
        ld[x][c] = (*a.rd)[c][x];
        rd[c][x] = (*a.ld)[x][c];
      }
    b.ld = std::move(ld);
    b.rd = std::move(rd);
  } else {
    b.ld.reset();
    b.rd.reset();
  }
  return b;
}

}  // namespace reslat
