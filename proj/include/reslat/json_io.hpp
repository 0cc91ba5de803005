#ifndef RESLAT_JSON_IO_HPP
#define RESLAT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "reslat/types.hpp"

namespace reslat {

/** Algebra document: {"n": int, "unit": int, "leq": "chain" | [[0/1,...],...],
 * "prod": [[int,...],...], "ld": optional, "rd": optional}; row-major,
 * row index = left/first argument. */
nlohmann::json to_json(const FinAlgebra& a);
FinAlgebra algebra_from_json(const nlohmann::json& j);

/** Stable serialization (sorted keys, two-space indent, trailing newline);
 * re-parsing and re-serializing is byte-identical. */
std::string to_json_string(const FinAlgebra& a);

/** Reads an algebra document from a file path, "-" meaning stdin. */
FinAlgebra read_algebra_file(const std::string& path);

/** DOT rendering of the covering edges of the lattice order (solid) and of
 * the monoidal preorder (dashed; mutual pairs drawn undirected with a "~"
 * label). `merged` puts both relations into one digraph. The unit is drawn
 * as a filled double circle. */
std::string to_dot(const FinAlgebra& a, bool with_leq, bool with_preorder, bool merged);

}  // namespace reslat

#endif
