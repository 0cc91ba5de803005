#include "reslat/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "reslat/core.hpp"
#include "reslat/chains.hpp"

namespace reslat {

FinAlgebra trivial_algebra() {
  FinAlgebra a;
  a.n = 1;
  a.chain = true;
  a.unit = 0;
  a.prod = {{0}};
  a.ld = Table{{0}};
  a.rd = Table{{0}};
  return a;
}

FinAlgebra c4() { return compile(LacedCode::parse("C")).algebra; }

FinAlgebra sugihara_chain(int n) {
  if (n < 1) throw Error(Errc::size_too_small, "need at least one element");
  if (n % 2 == 0) throw Error(Errc::even_size, "no reflection fixpoint on an even chain");
  FinAlgebra a;
  a.n = n;
  a.chain = true;
  a.unit = (n - 1) / 2;
  a.prod.assign(n, std::vector<int>(n, 0));
  Table ld(n, std::vector<int>(n, 0));
  auto neg = [n](int x) { return n - 1 - x; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      a.prod[x][y] = x <= neg(y) ? std::min(x, y) : std::max(x, y);
      ld[x][y] = x <= y ? std::max(neg(x), y) : std::min(neg(x), y);
    }
  Table rd(n, std::vector<int>(n, 0));  // commutative: rd[c][b] = ld[b][c]
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) rd[c][b] = ld[b][c];
  a.ld = std::move(ld);
  a.rd = std::move(rd);
  return a;
}

FinAlgebra abs_chain(int k) {
  if (k < 1) throw Error(Errc::size_too_small, "need k >= 1");
  const int n = 2 * k + 1;
  FinAlgebra a;
  a.n = n;
  a.chain = true;
  a.unit = k;
  a.prod.assign(n, std::vector<int>(n, 0));
  auto mag = [k](int i) { return std::abs(i - k); };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a.prod[x][y] = mag(x) >= mag(y) ? x : y;
  return a;
}

FinAlgebra tensor(const SkeletonDecomposition& d) {
  const FinAlgebra& s0 = d.skeleton;
  if (static_cast<int>(d.fiber_sizes.size()) != s0.n)
    throw Error(Errc::bad_fibers, "one fiber per skeleton element");
  for (int sz : d.fiber_sizes)
    if (sz < 1) throw Error(Errc::bad_fibers, "fibers are nonempty");
  FinAlgebra s = s0.has_residuals() ? s0 : complete_residuals(s0);
  if (!s.chain) {
    // accept explicit total orders only in index order
    for (int x = 0; x < s.n; ++x)
      for (int y = x; y < s.n; ++y)
        if (!s.le(x, y)) throw Error(Errc::bad_skeleton, "skeleton must be an index-ordered chain");
    s.chain = true;
    s.leq.clear();
  }
  if (!properties(s).odd_sugihara)
    throw Error(Errc::bad_skeleton, "skeleton is not a totally ordered odd Sugihara monoid");

  std::vector<int> offset(s.n, 0);
  int n = 0;
  for (int c = 0; c < s.n; ++c) {
    offset[c] = n;
    n += d.fiber_sizes[c];
  }
  auto top_of = [&](int c) { return offset[c] + d.fiber_sizes[c] - 1; };
  std::vector<int> fiber_of(n);
  for (int c = 0; c < s.n; ++c)
    for (int i = 0; i < d.fiber_sizes[c]; ++i) fiber_of[offset[c] + i] = c;

  FinAlgebra out;
  out.n = n;
  out.chain = true;
  out.unit = top_of(s.unit);
  out.prod.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = fiber_of[x], b = fiber_of[y];
      if (a == b)
        out.prod[x][y] = a <= s.unit ? std::min(x, y) : std::max(x, y);
      else
        out.prod[x][y] = s.prod[a][b] == a ? x : y;
    }
  Table res(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x) {
    int neg_a = top_of((*s.ld)[fiber_of[x]][s.unit]);
    for (int y = 0; y < n; ++y)
      res[x][y] = x <= y ? std::max(neg_a, y) : std::min(neg_a, y);
  }
  out.ld = res;
  Table rd(n, std::vector<int>(n, 0));
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) rd[c][b] = res[b][c];
  out.rd = std::move(rd);
  return out;
}

namespace {

// Monoidal order of a commutative conservative algebra as an ascending
// element sequence; throws wrong_class when it is not a total order.
std::vector<int> monoidal_sequence(const FinAlgebra& a) {
  BoolMat pre = monoidal_preorder(a);
  const int n = a.n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && pre[x][y] && pre[y][x])
        throw Error(Errc::wrong_class, "monoidal preorder is not antisymmetric");
      if (!pre[x][y] && !pre[y][x])
        throw Error(Errc::wrong_class, "monoidal preorder is not total");
    }
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  std::sort(seq.begin(), seq.end(), [&](int x, int y) { return x != y && pre[x][y]; });
  return seq;
}

void require_ccrl(const FinAlgebra& a, const char* who) {
  PropertyFlags f = properties(a);
  if (!f.commutative || !f.conservative)
    throw Error(Errc::wrong_class, std::string(who) + " needs commutative conservative inputs");
}

FinAlgebra restrict_to(const FinAlgebra& c, const std::vector<int>& elems, int unit_elem) {
  const int m = static_cast<int>(elems.size());
  std::vector<int> idx(c.n, -1);
  for (int i = 0; i < m; ++i) idx[elems[i]] = i;
  FinAlgebra out;
  out.n = m;
  out.chain = false;
  out.leq.assign(m, std::vector<char>(m, 0));
  out.prod.assign(m, std::vector<int>(m, 0));
  out.unit = idx[unit_elem];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.leq[i][j] = c.le(elems[i], elems[j]);
      int p = c.prod[elems[i]][elems[j]];
      if (idx[p] < 0) throw Error(Errc::internal, "restriction not closed under the product");
      out.prod[i][j] = idx[p];
    }
  return complete_residuals(std::move(out));
}

}  // namespace

FinAlgebra catalan_sum(const FinAlgebra& a, const FinAlgebra& b) {
  require_ccrl(a, "catalan_sum");
  require_ccrl(b, "catalan_sum");
  std::vector<int> seq_a = monoidal_sequence(a);
  std::vector<int> seq_b = monoidal_sequence(b);
  LatticeOps ops_a = lattice_ops(a);
  LatticeOps ops_b = lattice_ops(b);
  if (seq_a.front() != ops_a.bottom)
    throw Error(Errc::wrong_class, "lattice bottom must be the monoidal least element");

  // New labels follow the glued monoidal order: bot_A, then B, then A\{bot_A}.
  const int n = a.n + b.n;
  std::vector<int> new_a(a.n), new_b(b.n);
  new_a[ops_a.bottom] = 0;
  for (int i = 0; i < b.n; ++i) new_b[seq_b[i]] = 1 + i;
  for (int i = 1; i < a.n; ++i) new_a[seq_a[i]] = b.n + i;

  FinAlgebra c;
  c.n = n;
  c.chain = false;
  c.leq.assign(n, std::vector<char>(n, 0));
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) c.leq[new_a[x]][new_a[y]] = a.le(x, y);
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y) c.leq[new_b[x]][new_b[y]] = b.le(x, y);
  for (int y = 0; y < b.n; ++y) c.leq[new_a[ops_a.bottom]][new_b[y]] = 1;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (b.le(b.unit, y)) c.leq[new_a[x]][new_b[y]] = 1;

  c.unit = a.n > 1 ? new_a[a.unit] : new_b[b.unit];
  c.prod.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) c.prod[x][y] = std::min(x, y);  // new labels = monoidal positions
  return complete_residuals(std::move(c));
}

std::pair<FinAlgebra, FinAlgebra> catalan_decompose(const FinAlgebra& c) {
  require_ccrl(c, "catalan_decompose");
  if (c.n < 2) throw Error(Errc::wrong_class, "nothing to split in a trivial algebra");
  std::vector<int> seq = monoidal_sequence(c);
  int atom = seq[1];

  std::vector<int> belems, aelems;
  for (int x = 0; x < c.n; ++x) (c.le(atom, x) ? belems : aelems).push_back(x);
  if (aelems.empty()) throw Error(Errc::no_atom, "atom below everything");

  // unit of B = the monoidally greatest element of the upper part; unit of A
  // is the global unit unless A degenerated to the bottom singleton.
  int unit_b = -1;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it)
    if (c.le(atom, *it)) {
      unit_b = *it;
      break;
    }
  if (unit_b < 0) throw Error(Errc::no_atom, "empty upper part");
  int unit_a = aelems.size() == 1 ? aelems[0] : c.unit;
  if (std::find(aelems.begin(), aelems.end(), unit_a) == aelems.end())
    throw Error(Errc::no_atom, "unit separated from the lower part");

  return {restrict_to(c, aelems, unit_a), restrict_to(c, belems, unit_b)};
}

std::vector<FinAlgebra> enumerate_catalan(int n) {
  std::vector<FinAlgebra> out;
  enumerate_catalan(n, [&](const FinAlgebra& a) { out.push_back(a); });
  return out;
}

void enumerate_catalan(int n, const std::function<void(const FinAlgebra&)>& visit) {
  if (n < 1) throw Error(Errc::size_too_small, "need n >= 1");
  std::vector<std::vector<FinAlgebra>> memo(n);
  if (n == 1) {
    visit(trivial_algebra());
    return;
  }
  memo[1 - 1] = {trivial_algebra()};
  for (int m = 2; m < n; ++m)
    for (int k = 1; k <= m - 1; ++k)
      for (const FinAlgebra& a : memo[m - k - 1])
        for (const FinAlgebra& b : memo[k - 1]) memo[m - 1].push_back(catalan_sum(a, b));
  for (int k = 1; k <= n - 1; ++k)
    for (const FinAlgebra& a : memo[n - k - 1])
      for (const FinAlgebra& b : memo[k - 1]) visit(catalan_sum(a, b));
}

FepResult fep_closure(const FinAlgebra& a0, std::vector<int> subset) {
  PropertyFlags f = properties(a0);
  if (!f.conservative) throw Error(Errc::wrong_class, "fep_closure needs a conservative input");
  for (int x : subset)
    if (x < 0 || x >= a0.n) throw Error(Errc::index_out_of_range, "subset element");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

  LatticeOps ops0 = lattice_ops(a0);
  // The construction leans on join preservation; reject inputs without it.
  for (int x = 0; x < a0.n; ++x)
    for (int y = 0; y < a0.n; ++y)
      for (int z = 0; z < a0.n; ++z) {
        if (a0.prod[x][ops0.join[y][z]] != ops0.join[a0.prod[x][y]][a0.prod[x][z]] ||
            a0.prod[ops0.join[y][z]][x] != ops0.join[a0.prod[y][x]][a0.prod[z][x]])
          throw Error(Errc::wrong_class, "product does not preserve joins");
      }

  std::vector<int> bprime = subset;
  if (!std::binary_search(bprime.begin(), bprime.end(), a0.unit)) {
    bprime.push_back(a0.unit);
    std::sort(bprime.begin(), bprime.end());
  }
  int top = bprime[0];
  for (int x : bprime) top = ops0.join[top][x];

  FinAlgebra amb = a0;
  bool fresh_bottom = false;
  auto l = left_residual_scan(amb, top, amb.unit);
  auto r = right_residual_scan(amb, amb.unit, top);
  if (!l || !r) {
    // The ambient is only a partial subalgebra of something residuated; a
    // fresh annihilating bottom supplies the missing residual.
    fresh_bottom = true;
    FinAlgebra ext;
    ext.n = a0.n + 1;
    ext.chain = false;
    ext.leq.assign(ext.n, std::vector<char>(ext.n, 0));
    for (int x = 0; x < a0.n; ++x)
      for (int y = 0; y < a0.n; ++y) ext.leq[x][y] = a0.le(x, y);
    for (int x = 0; x < ext.n; ++x) ext.leq[a0.n][x] = 1;
    ext.leq[a0.n][a0.n] = 1;
    ext.unit = a0.unit;
    ext.prod.assign(ext.n, std::vector<int>(ext.n, a0.n));
    for (int x = 0; x < a0.n; ++x)
      for (int y = 0; y < a0.n; ++y) ext.prod[x][y] = a0.prod[x][y];
    amb = std::move(ext);
    l = left_residual_scan(amb, top, amb.unit);
    r = right_residual_scan(amb, amb.unit, top);
    if (!l || !r) throw Error(Errc::wrong_class, "ambient not residuable at the subset supremum");
  }
  LatticeOps ops = fresh_bottom ? lattice_ops(amb) : ops0;

  std::vector<char> in(amb.n, 0);
  std::vector<int> cset;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      cset.push_back(x);
    }
  };
  for (int x : bprime) add(x);
  add(*l);
  add(*r);
  for (int i = 0, m = static_cast<int>(cset.size()); i < m; ++i) add(ops.meet[cset[i]][amb.unit]);
  // join closure
  for (size_t i = 0; i < cset.size(); ++i)
    for (size_t j = 0; j <= i; ++j) add(ops.join[cset[i]][cset[j]]);

  std::vector<int> rank(amb.n, 0);
  for (int x : cset)
    for (int z : cset)
      if (amb.le(z, x)) ++rank[x];
  std::sort(cset.begin(), cset.end(), [&](int x, int y) {
    if (rank[x] != rank[y]) return rank[x] < rank[y];
    return x < y;
  });

  const int m = static_cast<int>(cset.size());
  std::vector<int> idx(amb.n, -1);
  for (int i = 0; i < m; ++i) idx[cset[i]] = i;

  FinAlgebra out;
  out.n = m;
  out.unit = idx[amb.unit];
  bool total = true;
  for (int i = 0; i < m && total; ++i)
    for (int j = 0; j < m; ++j)
      if (!amb.le(cset[i], cset[j]) && !amb.le(cset[j], cset[i])) total = false;
  if (total) {
    out.chain = true;  // cset is rank-sorted, so index order is the order
  } else {
    out.chain = false;
    out.leq.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.leq[i][j] = amb.le(cset[i], cset[j]);
  }
  out.prod.assign(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = amb.prod[cset[i]][cset[j]];
      if (idx[p] < 0) throw Error(Errc::internal, "closure not closed under the product");
      out.prod[i][j] = idx[p];
    }
  // Meets inside the closure may differ from ambient meets; the lattice
  // structure is the induced one, which complete_residuals and validate use
  // through `leq` only. Residuals are the closure-relative maxima.
  out = complete_residuals(std::move(out));

  FepResult res;
  res.carrier.assign(m, -1);
  for (int i = 0; i < m; ++i)
    res.carrier[i] = (fresh_bottom && cset[i] == amb.n - 1) ? -1 : cset[i];
  res.subset = subset;
  for (int x : subset) res.subset_map.push_back(idx[x]);
  res.algebra = std::move(out);
  return res;
}

namespace {

struct ClassId {
  int kind;  // 0 = shared (A), 1 = B-only, 2 = C-only
  int elem;  // index in A, B, or C respectively
  friend bool operator==(const ClassId&, const ClassId&) = default;
};

// Merge two chains sharing an embedded common subchain. `b_elems`/`c_elems`
// ascend; anchors give, per shared element (ascending), its position in each
// list. In every gap B-only elements come first, then C-only, native order.
std::vector<ClassId> merge_chains(const std::vector<int>& b_elems, const std::vector<int>& c_elems,
                                  const std::vector<std::pair<int, int>>& anchors,
                                  const std::vector<int>& shared_names) {
  std::vector<ClassId> out;
  size_t k = 0;
  int bprev = -1, cprev = -1;
  for (; k < anchors.size(); ++k) {
    auto [bpos, cpos] = anchors[k];
    for (int i = bprev + 1; i < bpos; ++i) out.push_back({1, b_elems[i]});
    for (int i = cprev + 1; i < cpos; ++i) out.push_back({2, c_elems[i]});
    out.push_back({0, shared_names[k]});
    bprev = bpos;
    cprev = cpos;
  }
  for (int i = bprev + 1; i < static_cast<int>(b_elems.size()); ++i) out.push_back({1, b_elems[i]});
  for (int i = cprev + 1; i < static_cast<int>(c_elems.size()); ++i) out.push_back({2, c_elems[i]});
  return out;
}

void require_osm(const FinAlgebra& a, const char* who) {
  if (!properties(a).odd_sugihara)
    throw Error(Errc::wrong_class, std::string(who) + " needs totally ordered odd Sugihara monoids");
}

void require_embedding(const FinAlgebra& src, const FinAlgebra& tgt, const std::vector<int>& map,
                       const char* which) {
  CheckReport r = check_homomorphism({src, tgt, map});
  if (!r.ok)
    throw Error(Errc::incompatible_span, std::string(which) + " is not an embedding (" +
                                             r.violations.front().axiom + ")");
}

// Lattice-position table for a totally ordered algebra.
std::vector<int> chain_positions(const FinAlgebra& a) {
  std::vector<int> order(a.n), pos(a.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return x != y && a.le(x, y); });
  for (int k = 0; k < a.n; ++k) pos[order[k]] = k;
  return pos;
}

}  // namespace

Amalgam amalgamate_osm(const Span& s0) {
  Span s = s0;
  for (FinAlgebra* x : {&s.a, &s.b, &s.c})
    if (!x->has_residuals()) *x = complete_residuals(*x);
  require_osm(s.a, "amalgamate_osm");
  require_osm(s.b, "amalgamate_osm");
  require_osm(s.c, "amalgamate_osm");
  require_embedding(s.a, s.b, s.i1, "i1");
  require_embedding(s.a, s.c, s.i2, "i2");

  std::vector<int> pos_a = chain_positions(s.a);
  std::vector<int> pos_b = chain_positions(s.b);
  std::vector<int> pos_c = chain_positions(s.c);

  auto negatives = [&](const FinAlgebra& x, const std::vector<int>& pos) {
    std::vector<int> neg;
    for (int e = 0; e < x.n; ++e)
      if (x.le(e, x.unit)) neg.push_back(e);
    std::sort(neg.begin(), neg.end(), [&](int u, int v) { return pos[u] < pos[v]; });
    return neg;
  };
  std::vector<int> neg_a = negatives(s.a, pos_a);
  std::vector<int> neg_b = negatives(s.b, pos_b);
  std::vector<int> neg_c = negatives(s.c, pos_c);

  auto position_in = [](const std::vector<int>& list, int elem) {
    for (int i = 0; i < static_cast<int>(list.size()); ++i)
      if (list[i] == elem) return i;
    return -1;
  };

  std::vector<std::pair<int, int>> anchors;
  std::vector<int> shared_names;
  for (int a_elem : neg_a) {
    int bpos = position_in(neg_b, s.i1[a_elem]);
    int cpos = position_in(neg_c, s.i2[a_elem]);
    if (bpos < 0 || cpos < 0)
      throw Error(Errc::incompatible_span, "embedding does not preserve the negative cone");
    anchors.push_back({bpos, cpos});
    shared_names.push_back(a_elem);
  }
  std::vector<ClassId> neg_d = merge_chains(neg_b, neg_c, anchors, shared_names);
  if (!(neg_d.back() == ClassId{0, s.a.unit}))
    throw Error(Errc::internal, "merged negatives must end at the shared unit");

  const int m = static_cast<int>(neg_d.size());
  const int nd = 2 * m - 1;
  FinAlgebra d = sugihara_chain(nd);

  auto d_index_of = [&](const ClassId& cls) {
    for (int i = 0; i < m; ++i)
      if (neg_d[i] == cls) return i;
    return -1;
  };
  auto neg_of = [](const FinAlgebra& x, int e) { return (*x.ld)[e][x.unit]; };

  Amalgam out;
  out.d = std::move(d);
  out.j1.assign(s.b.n, -1);
  out.j2.assign(s.c.n, -1);
  std::vector<int> inv1(s.b.n, -1), inv2(s.c.n, -1);
  for (int a_elem = 0; a_elem < s.a.n; ++a_elem) {
    inv1[s.i1[a_elem]] = a_elem;
    inv2[s.i2[a_elem]] = a_elem;
  }
  auto embed = [&](const FinAlgebra& x, const std::vector<int>& inv, int kind,
                   std::vector<int>& j) {
    for (int e = 0; e < x.n; ++e) {
      if (x.le(e, x.unit)) {
        ClassId cls = inv[e] >= 0 ? ClassId{0, inv[e]} : ClassId{kind, e};
        j[e] = d_index_of(cls);
      } else {
        int ne = neg_of(x, e);
        ClassId cls = inv[ne] >= 0 ? ClassId{0, inv[ne]} : ClassId{kind, ne};
        j[e] = nd - 1 - d_index_of(cls);
      }
      if (j[e] < 0) throw Error(Errc::internal, "amalgam misses an element");
    }
  };
  embed(s.b, inv1, 1, out.j1);
  embed(s.c, inv2, 2, out.j2);
  for (int a_elem = 0; a_elem < s.a.n; ++a_elem)
    if (out.j1[s.i1[a_elem]] != out.j2[s.i2[a_elem]])
      throw Error(Errc::internal, "amalgamation square does not commute");
  if (!check_homomorphism({s.b, out.d, out.j1}).ok || !check_homomorphism({s.c, out.d, out.j2}).ok)
    throw Error(Errc::internal, "amalgam injections are not homomorphisms");
  return out;
}

Amalgam amalgamate_cic(const Span& s) {
  for (const FinAlgebra* x : {&s.a, &s.b, &s.c}) {
    PropertyFlags f = properties(*x);
    if (!f.commutative || !f.idempotent || !f.totally_ordered)
      throw Error(Errc::wrong_class, "amalgamate_cic needs commutative idempotent chains");
  }
  require_embedding(s.a, s.b, s.i1, "i1");
  require_embedding(s.a, s.c, s.i2, "i2");

  SkeletonResult sk_a = skeleton(s.a);
  SkeletonResult sk_b = skeleton(s.b);
  SkeletonResult sk_c = skeleton(s.c);

  auto sk_index = [](const SkeletonResult& sk, int orig) {
    for (int i = 0; i < static_cast<int>(sk.elements.size()); ++i)
      if (sk.elements[i] == orig) return i;
    return -1;
  };

  std::vector<int> sigma1(sk_a.elements.size()), sigma2(sk_a.elements.size());
  for (size_t i = 0; i < sk_a.elements.size(); ++i) {
    sigma1[i] = sk_index(sk_b, s.i1[sk_a.elements[i]]);
    sigma2[i] = sk_index(sk_c, s.i2[sk_a.elements[i]]);
    if (sigma1[i] < 0 || sigma2[i] < 0)
      throw Error(Errc::incompatible_span, "embedding does not restrict to the skeletons");
  }

  Amalgam sk_am = amalgamate_osm({sk_a.skeleton, sk_b.skeleton, sk_c.skeleton, sigma1, sigma2});
  const int sn = sk_am.d.n;

  std::vector<int> from_a(sn, -1), from_b(sn, -1), from_c(sn, -1);
  for (int i = 0; i < static_cast<int>(sk_b.elements.size()); ++i) from_b[sk_am.j1[i]] = i;
  for (int i = 0; i < static_cast<int>(sk_c.elements.size()); ++i) from_c[sk_am.j2[i]] = i;
  for (size_t i = 0; i < sigma1.size(); ++i) from_a[sk_am.j1[sigma1[i]]] = static_cast<int>(i);

  // Assemble one fiber per amalgamated skeleton point.
  std::vector<std::vector<ClassId>> fibers(sn);
  for (int t = 0; t < sn; ++t) {
    if (from_a[t] >= 0) {
      const std::vector<int>& fb = sk_b.fibers[from_b[t]];
      const std::vector<int>& fc = sk_c.fibers[from_c[t]];
      const std::vector<int>& fa = sk_a.fibers[from_a[t]];
      std::vector<std::pair<int, int>> anchors;
      std::vector<int> names;
      auto position_in = [](const std::vector<int>& list, int elem) {
        for (int i = 0; i < static_cast<int>(list.size()); ++i)
          if (list[i] == elem) return i;
        return -1;
      };
      for (int a_elem : fa) {
        int bp = position_in(fb, s.i1[a_elem]);
        int cp = position_in(fc, s.i2[a_elem]);
        if (bp < 0 || cp < 0)
          throw Error(Errc::incompatible_span, "embedding does not preserve fibers");
        anchors.push_back({bp, cp});
        names.push_back(a_elem);
      }
      fibers[t] = merge_chains(fb, fc, anchors, names);
    } else if (from_b[t] >= 0) {
      for (int e : sk_b.fibers[from_b[t]]) fibers[t].push_back({1, e});
    } else if (from_c[t] >= 0) {
      for (int e : sk_c.fibers[from_c[t]]) fibers[t].push_back({2, e});
    } else {
      throw Error(Errc::internal, "amalgamated skeleton point with no origin");
    }
  }

  std::vector<int> sizes(sn);
  std::vector<int> offsets(sn);
  int total = 0;
  for (int t = 0; t < sn; ++t) {
    sizes[t] = static_cast<int>(fibers[t].size());
    offsets[t] = total;
    total += sizes[t];
  }
  Amalgam out;
  out.d = tensor({sk_am.d, sizes});

  std::vector<int> inv1(s.b.n, -1), inv2(s.c.n, -1);
  for (int a_elem = 0; a_elem < s.a.n; ++a_elem) {
    inv1[s.i1[a_elem]] = a_elem;
    inv2[s.i2[a_elem]] = a_elem;
  }
  auto locate = [&](int kind, int elem, const std::vector<int>& inv, const std::vector<int>& jsk,
                    const SkeletonResult& sk) {
    // fiber of `elem` in its own algebra -> amalgamated skeleton point
    int own_fiber = -1;
    for (int i = 0; i < static_cast<int>(sk.fibers.size()); ++i)
      for (int e : sk.fibers[i])
        if (e == elem) own_fiber = i;
    int t = jsk[own_fiber];
    ClassId cls = inv[elem] >= 0 ? ClassId{0, inv[elem]} : ClassId{kind, elem};
    for (int p = 0; p < sizes[t]; ++p)
      if (fibers[t][p] == cls) return offsets[t] + p;
    return -1;
  };
  out.j1.assign(s.b.n, -1);
  out.j2.assign(s.c.n, -1);
  for (int e = 0; e < s.b.n; ++e) out.j1[e] = locate(1, e, inv1, sk_am.j1, sk_b);
  for (int e = 0; e < s.c.n; ++e) out.j2[e] = locate(2, e, inv2, sk_am.j2, sk_c);
  for (int e = 0; e < s.b.n; ++e)
    if (out.j1[e] < 0) throw Error(Errc::internal, "amalgam misses a B element");
  for (int e = 0; e < s.c.n; ++e)
    if (out.j2[e] < 0) throw Error(Errc::internal, "amalgam misses a C element");
  for (int a_elem = 0; a_elem < s.a.n; ++a_elem)
    if (out.j1[s.i1[a_elem]] != out.j2[s.i2[a_elem]])
      throw Error(Errc::internal, "amalgamation square does not commute");
  if (!check_homomorphism({s.b, out.d, out.j1}).ok || !check_homomorphism({s.c, out.d, out.j2}).ok)
    throw Error(Errc::internal, "amalgam injections are not homomorphisms");
  return out;
}

}  // namespace reslat
