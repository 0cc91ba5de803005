#include "reslat/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "reslat/core.hpp"

namespace reslat {

using nlohmann::json;

namespace {

json table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t) rows.push_back(row);
  return rows;
}

Table table_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw Error(Errc::dimension_mismatch, std::string(name) + " must be an array");
  Table t;
  for (const auto& row : j) {
    if (!row.is_array())
      throw Error(Errc::dimension_mismatch, std::string(name) + " rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer())
        throw Error(Errc::dimension_mismatch, std::string(name) + " entries must be integers");
      r.push_back(v.get<int>());
    }
    t.push_back(std::move(r));
  }
  return t;
}

}  // namespace

json to_json(const FinAlgebra& a) {
  json j;
  j["n"] = a.n;
  j["unit"] = a.unit;
  if (a.chain) {
    j["leq"] = "chain";
  } else {
    json rows = json::array();
    for (const auto& row : a.leq) {
      json r = json::array();
      for (char v : row) r.push_back(v ? 1 : 0);
      rows.push_back(std::move(r));
    }
    j["leq"] = std::move(rows);
  }
  j["prod"] = table_to_json(a.prod);
  if (a.ld) j["ld"] = table_to_json(*a.ld);
  if (a.rd) j["rd"] = table_to_json(*a.rd);
  return j;
}

FinAlgebra algebra_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::dimension_mismatch, "algebra document must be an object");
  FinAlgebra a;
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw Error(Errc::dimension_mismatch, "missing integer field 'n'");
  a.n = j["n"].get<int>();
  if (a.n <= 0) throw Error(Errc::dimension_mismatch, "n must be positive");
  if (!j.contains("unit") || !j["unit"].is_number_integer())
    throw Error(Errc::dimension_mismatch, "missing integer field 'unit'");
  a.unit = j["unit"].get<int>();
  if (a.unit < 0 || a.unit >= a.n) throw Error(Errc::index_out_of_range, "unit");
  if (!j.contains("leq")) throw Error(Errc::dimension_mismatch, "missing field 'leq'");
  if (j["leq"].is_string()) {
    if (j["leq"].get<std::string>() != "chain")
      throw Error(Errc::dimension_mismatch, "leq must be \"chain\" or a 0/1 matrix");
    a.chain = true;
  } else {
    a.chain = false;
    Table t = table_from_json(j["leq"], "leq");
    if (static_cast<int>(t.size()) != a.n) throw Error(Errc::dimension_mismatch, "leq rows");
    a.leq.assign(a.n, std::vector<char>(a.n, 0));
    for (int x = 0; x < a.n; ++x) {
      if (static_cast<int>(t[x].size()) != a.n) throw Error(Errc::dimension_mismatch, "leq cols");
      for (int y = 0; y < a.n; ++y) {
        if (t[x][y] != 0 && t[x][y] != 1)
          throw Error(Errc::dimension_mismatch, "leq entries must be 0 or 1");
        a.leq[x][y] = static_cast<char>(t[x][y]);
      }
    }
  }
  if (!j.contains("prod")) throw Error(Errc::dimension_mismatch, "missing field 'prod'");
  a.prod = table_from_json(j["prod"], "prod");
  if (j.contains("ld") && !j["ld"].is_null()) a.ld = table_from_json(j["ld"], "ld");
  if (j.contains("rd") && !j["rd"].is_null()) a.rd = table_from_json(j["rd"], "rd");
  // dimension and range checks
  auto check = [&](const Table& t, const char* name) {
    if (static_cast<int>(t.size()) != a.n)
      throw Error(Errc::dimension_mismatch, std::string(name) + " rows");
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != a.n)
        throw Error(Errc::dimension_mismatch, std::string(name) + " cols");
      for (int v : row)
        if (v < 0 || v >= a.n)
          throw Error(Errc::index_out_of_range, std::string(name) + " entry");
    }
  };
  check(a.prod, "prod");
  if (a.ld) check(*a.ld, "ld");
  if (a.rd) check(*a.rd, "rd");
  return a;
}

std::string to_json_string(const FinAlgebra& a) { return to_json(a).dump(2) + "\n"; }

FinAlgebra read_algebra_file(const std::string& path) {
  json j;
  try {
    if (path == "-") {
      j = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw Error(Errc::dimension_mismatch, "cannot open '" + path + "'");
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::dimension_mismatch, "cannot parse '" + path + "': " + e.what());
  }
  return algebra_from_json(j);
}

namespace {

void leq_edges(const FinAlgebra& a, std::ostream& os) {
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      if (x == y || !a.le(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < a.n && cover; ++z)
        if (z != x && z != y && a.le(x, z) && a.le(z, y)) cover = false;
      if (cover) os << "  e" << x << " -> e" << y << ";\n";
    }
}

void preorder_edges(const FinAlgebra& a, std::ostream& os) {
  BoolMat pre = monoidal_preorder(a);
  auto strict = [&](int x, int y) { return pre[x][y] && !pre[y][x]; };
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      if (!strict(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < a.n && cover; ++z)
        if (strict(x, z) && strict(z, y)) cover = false;
      if (cover) os << "  e" << x << " -> e" << y << " [style=dashed];\n";
    }
  for (int x = 0; x < a.n; ++x)
    for (int y = x + 1; y < a.n; ++y)
      if (pre[x][y] && pre[y][x])
        os << "  e" << x << " -> e" << y << " [style=dashed, dir=none, label=\"~\"];\n";
}

void node_decls(const FinAlgebra& a, std::ostream& os) {
  for (int x = 0; x < a.n; ++x) {
    os << "  e" << x << " [label=\"" << x << "\"";
    if (x == a.unit) os << ", shape=doublecircle, style=filled, fillcolor=lightgray";
    os << "];\n";
  }
}

}  // namespace

std::string to_dot(const FinAlgebra& a, bool with_leq, bool with_preorder, bool merged) {
  std::ostringstream os;
  if (merged) {
    os << "digraph algebra {\n  rankdir=BT;\n  node [shape=circle];\n";
    node_decls(a, os);
    if (with_leq) leq_edges(a, os);
    if (with_preorder) preorder_edges(a, os);
    os << "}\n";
    return os.str();
  }
  if (with_leq) {
    os << "digraph lattice_order {\n  rankdir=BT;\n  node [shape=circle];\n";
    node_decls(a, os);
    leq_edges(a, os);
    os << "}\n";
  }
  if (with_preorder) {
    os << "digraph monoidal_preorder {\n  rankdir=BT;\n  node [shape=circle];\n";
    node_decls(a, os);
    preorder_edges(a, os);
    os << "}\n";
  }
  return os.str();
}

}  // namespace reslat
