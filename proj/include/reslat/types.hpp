#ifndef RESLAT_TYPES_HPP
#define RESLAT_TYPES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reslat {

using Table = std::vector<std::vector<int>>;
using BoolMat = std::vector<std::vector<char>>;

enum class Errc {
  dimension_mismatch,
  index_out_of_range,
  not_residuable,
  not_idempotent,
  missing_residuals,
  wrong_class,
  not_injective,
  too_large,
  size_too_small,
  even_size,
  bad_skeleton,
  bad_fibers,
  incompatible_span,
  no_atom,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/** A finite residuated-lattice candidate.
 *
 * Carrier is 0..n-1. When `chain` is set the lattice order is the index
 * order and `leq` stays empty; otherwise `leq` is the full n x n order
 * matrix. `prod` is the multiplication table (row = left argument) and
 * `ld`/`rd` are the optional residual tables, ld[x][c] = x\c and
 * rd[c][b] = c/b.
 */
struct FinAlgebra {
  int n = 0;
  bool chain = true;
  BoolMat leq;
  int unit = 0;
  Table prod;
  std::optional<Table> ld;
  std::optional<Table> rd;

  bool le(int x, int y) const { return chain ? x <= y : leq[x][y] != 0; }
  int mul(int x, int y) const { return prod[x][y]; }
  bool has_residuals() const { return ld.has_value() && rd.has_value(); }

  friend bool operator==(const FinAlgebra& a, const FinAlgebra& b) {
    return a.n == b.n && a.chain == b.chain && a.leq == b.leq && a.unit == b.unit &&
           a.prod == b.prod && a.ld == b.ld && a.rd == b.rd;
  }
};

struct Violation {
  std::string axiom;
  std::vector<int> witness;
};

struct CheckReport {
  bool ok = true;
  std::vector<Violation> violations;

  void fail(std::string axiom, std::vector<int> witness) {
    ok = false;
    violations.push_back({std::move(axiom), std::move(witness)});
  }
  bool has(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return true;
    return false;
  }
};

struct PropertyFlags {
  bool idempotent = false;
  bool commutative = false;
  bool conservative = false;
  bool totally_ordered = false;
  bool odd_sugihara = false;
};

struct Embedding {
  FinAlgebra source;
  FinAlgebra target;
  std::vector<int> map;
};

}  // namespace reslat

#endif
