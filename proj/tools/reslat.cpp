#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reslat/chains.hpp"
#include "reslat/constructions.hpp"
#include "reslat/core.hpp"
#include "reslat/counting.hpp"
#include "reslat/json_io.hpp"
#include "reslat/oracle.hpp"

using namespace reslat;
using nlohmann::json;

namespace {

int brute_cap() {
  if (const char* env = std::getenv("RESLAT_MAX_BRUTE")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 6;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error(Errc::dimension_mismatch, "cannot write '" + out_path + "'");
    f << text;
  }
}

void print_report(const CheckReport& r) {
  if (r.ok) {
    std::cout << "ok\n";
    return;
  }
  std::cout << "invalid: " << r.violations.size() << " violation(s)\n";
  size_t shown = 0;
  for (const auto& v : r.violations) {
    std::cout << "  " << v.axiom << " at (";
    for (size_t i = 0; i < v.witness.size(); ++i)
      std::cout << (i ? "," : "") << v.witness[i];
    std::cout << ")\n";
    if (++shown == 20 && r.violations.size() > 20) {
      std::cout << "  ... " << (r.violations.size() - 20) << " more\n";
      break;
    }
  }
}

void emit_models(const std::vector<FinAlgebra>& models, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& m : models) {
    std::string name = canonical(m).hex() + ".json";
    std::ofstream f(std::filesystem::path(dir) / name);
    f << to_json_string(m);
  }
}

struct CountRow {
  int size;
  std::vector<std::string> values;
};

std::string count_value_raw(const std::string& cls, const std::string& method, int size, int jobs);

// brute force beyond the size cap degrades to "-" instead of failing the table
std::string count_value(const std::string& cls, const std::string& method, int size, int jobs) {
  try {
    return count_value_raw(cls, method, size, jobs);
  } catch (const Error& e) {
    if (method == "bruteforce" && e.code() == Errc::too_large) return "-";
    throw;
  }
}

std::string count_value_raw(const std::string& cls, const std::string& method, int size, int jobs) {
  if (cls == "cic") {
    if (method == "formula") return count_cic(size).str();
    if (method == "enumerate") return std::to_string(enumerate_codes(size, true).size());
    if (method == "bruteforce") {
      ConstraintSet cs;
      cs.idempotent = cs.chain = cs.commutative = true;
      return std::to_string(brute_force(size, cs, brute_cap(), jobs).size());
    }
  } else if (cls == "ic") {
    if (method == "formula") return count_ic_formula(size).str();
    if (method == "recurrence") return count_ic_recurrence(size).str();
    if (method == "closed") return count_ic_closed(size).str();
    if (method == "enumerate") return std::to_string(enumerate_codes(size, false).size());
    if (method == "bruteforce") {
      ConstraintSet cs;
      cs.idempotent = cs.chain = true;
      return std::to_string(brute_force(size, cs, brute_cap(), jobs).size());
    }
  } else if (cls == "catalan") {
    if (method == "formula") return catalan_count(size).str();
    if (method == "enumerate") {
      size_t count = 0;
      enumerate_catalan(size, [&](const FinAlgebra&) { ++count; });
      return std::to_string(count);
    }
    if (method == "bruteforce") {
      ConstraintSet cs;
      cs.conservative = cs.commutative = true;
      return std::to_string(brute_force(size, cs, brute_cap(), jobs).size());
    }
  }
  throw CLI::ValidationError("count", "method '" + method + "' not available for class '" + cls + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reslat: a workbench for finite residuated lattices"};
  app.require_subcommand(1);

  std::string file, out_path, emit_dir, cls = "ic", mode, constraints, subset_csv, map1_csv,
                               map2_csv, methods_csv = "formula,enumerate";
  int size = 0, from = 0, to = 0, jobs = 1;
  bool list_flag = false, json_flag = false, both = false;
  bool want_c4 = false;
  int sugihara_n = 0, abs_k = 0;
  std::vector<std::string> sum_files, tensor_args, amalg_files;

  auto* c_check = app.add_subcommand("check", "validate an algebra document");
  c_check->add_option("file", file, "algebra JSON ('-' = stdin)")->required();

  auto* c_props = app.add_subcommand("props", "print property flags");
  c_props->add_option("file", file)->required();

  auto* c_enum = app.add_subcommand("enumerate", "structural enumeration up to isomorphism");
  c_enum->add_option("--class", cls, "cic | ic | catalan")->required();
  c_enum->add_option("--size", size)->required();
  c_enum->add_option("--emit", emit_dir, "write each algebra to DIR");
  c_enum->add_flag("--list", list_flag, "print chain codes");
  c_enum->add_flag("--json", json_flag);

  auto* c_count = app.add_subcommand("count", "compare census methods");
  c_count->add_option("--class", cls)->required();
  c_count->add_option("--size", size);
  c_count->add_option("--from", from);
  c_count->add_option("--to", to);
  c_count->add_option("--methods", methods_csv, "comma list: formula,recurrence,closed,enumerate,bruteforce");
  c_count->add_option("--jobs", jobs);
  c_count->add_flag("--json", json_flag);

  auto* c_brute = app.add_subcommand("bruteforce", "exhaustive model search");
  c_brute->add_option("--size", size)->required();
  c_brute->add_option("--constraints", constraints, "comma list of constraint flags")->required();
  c_brute->add_option("--emit", emit_dir);
  c_brute->add_option("--jobs", jobs);
  c_brute->add_flag("--json", json_flag);

  auto* c_construct = app.add_subcommand("construct", "build a named algebra");
  c_construct->add_option("--sugihara", sugihara_n, "odd Sugihara chain of odd size K");
  c_construct->add_option("--abs", abs_k, "absolute-value chain on -K..K");
  c_construct->add_flag("--c4", want_c4, "the 4-element noncommutative chain");
  c_construct->add_option("--catalan-sum", sum_files, "two algebra files")->expected(2);
  c_construct->add_option("--tensor", tensor_args, "skeleton file + comma fiber sizes")->expected(2);
  c_construct->add_option("--code", mode, "compile a chain code such as nCp");
  c_construct->add_option("--out", out_path);

  auto* c_decomp = app.add_subcommand("decompose", "split an algebra");
  c_decomp->add_option("--mode", mode, "catalan | skeleton")->required();
  c_decomp->add_option("file", file)->required();
  c_decomp->add_option("--out", out_path);

  auto* c_amalg = app.add_subcommand("amalgamate", "amalgamate a span");
  c_amalg->add_option("files", amalg_files, "A B C algebra files")->expected(3);
  c_amalg->add_option("--map1", map1_csv, "embedding A->B as comma indices")->required();
  c_amalg->add_option("--map2", map2_csv, "embedding A->C as comma indices")->required();
  c_amalg->add_option("--mode", mode, "cic (default) | osm");
  c_amalg->add_option("--out", out_path);

  auto* c_fep = app.add_subcommand("fep", "finite-embeddability closure of a subset");
  c_fep->add_option("file", file)->required();
  c_fep->add_option("--subset", subset_csv, "comma indices")->required();
  c_fep->add_option("--out", out_path);

  auto* c_export = app.add_subcommand("export", "DOT diagrams of the two orders");
  c_export->add_option("--dot", file, "algebra JSON file")->required();
  c_export->add_flag("--both", both, "one digraph with both relations");
  c_export->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_check) {
      CheckReport r = validate(read_algebra_file(file));
      print_report(r);
      return r.ok ? 0 : 1;
    }

    if (*c_props) {
      PropertyFlags f = properties(read_algebra_file(file));
      std::cout << "idempotent: " << (f.idempotent ? "true" : "false") << "\n"
                << "commutative: " << (f.commutative ? "true" : "false") << "\n"
                << "conservative: " << (f.conservative ? "true" : "false") << "\n"
                << "totally_ordered: " << (f.totally_ordered ? "true" : "false") << "\n"
                << "odd_sugihara: " << (f.odd_sugihara ? "true" : "false") << "\n";
      return 0;
    }

    if (*c_enum) {
      std::vector<FinAlgebra> models;
      std::vector<std::string> labels;
      if (cls == "cic" || cls == "ic") {
        for (const LacedCode& code : enumerate_codes(size, cls == "cic")) {
          models.push_back(compile(code).algebra);
          labels.push_back(code.str().empty() ? "(empty)" : code.str());
        }
      } else if (cls == "catalan") {
        models = enumerate_catalan(size);
      } else {
        throw CLI::ValidationError("enumerate", "unknown class '" + cls + "'");
      }
      if (list_flag)
        for (const auto& l : labels) std::cout << l << "\n";
      if (!emit_dir.empty()) emit_models(models, emit_dir);
      if (json_flag) {
        json j;
        j["class"] = cls;
        j["size"] = size;
        j["count"] = models.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "class=" << cls << " size=" << size << " count=" << models.size() << "\n";
      }
      return 0;
    }

    if (*c_count) {
      if (from == 0 && to == 0) from = to = size;
      if (from == 0 || to == 0 || from > to)
        throw CLI::ValidationError("count", "give --size N or --from A --to B");
      std::vector<std::string> methods;
      {
        std::stringstream ss(methods_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
          if (!tok.empty()) methods.push_back(tok);
      }
      std::vector<CountRow> rows;
      bool mismatch = false;
      for (int nn = from; nn <= to; ++nn) {
        CountRow row;
        row.size = nn;
        for (const auto& m : methods) row.values.push_back(count_value(cls, m, nn, jobs));
        std::string ref;
        for (const auto& v : row.values) {
          if (v == "-") continue;
          if (ref.empty()) ref = v;
          if (v != ref) mismatch = true;
        }
        rows.push_back(std::move(row));
      }
      if (json_flag) {
        json j = json::array();
        for (const auto& row : rows) {
          json r;
          r["size"] = row.size;
          for (size_t i = 0; i < methods.size(); ++i) r[methods[i]] = row.values[i];
          j.push_back(std::move(r));
        }
        std::cout << j.dump(2) << "\n";
      } else {
        size_t w = 10;
        for (const auto& m : methods) w = std::max(w, m.size() + 2);
        for (const auto& row : rows)
          for (const auto& v : row.values) w = std::max(w, v.size() + 1);
        std::cout << "size";
        for (const auto& m : methods) {
          std::cout.width(static_cast<std::streamsize>(w));
          std::cout << std::right << m;
        }
        std::cout << "\n";
        for (const auto& row : rows) {
          std::cout.width(4);
          std::cout << std::right << row.size;
          for (const auto& v : row.values) {
            std::cout.width(static_cast<std::streamsize>(w));
            std::cout << std::right << v;
          }
          std::cout << "\n";
        }
      }
      if (mismatch) std::cerr << "count: methods disagree\n";
      return mismatch ? 1 : 0;
    }

    if (*c_brute) {
      ConstraintSet cs = ConstraintSet::parse(constraints);
      std::vector<FinAlgebra> models = brute_force(size, cs, brute_cap(), jobs);
      if (!emit_dir.empty()) emit_models(models, emit_dir);
      if (json_flag) {
        json j;
        j["size"] = size;
        j["constraints"] = cs.str();
        j["count"] = models.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "size=" << size << " constraints=" << cs.str() << " count=" << models.size()
                  << "\n";
      }
      return 0;
    }

    if (*c_construct) {
      FinAlgebra a;
      bool have_code = c_construct->count("--code") > 0;
      int chosen = (sugihara_n > 0) + (abs_k > 0) + want_c4 + !sum_files.empty() +
                   !tensor_args.empty() + have_code;
      if (chosen != 1)
        throw CLI::ValidationError("construct", "choose exactly one construction");
      if (sugihara_n > 0) {
        a = sugihara_chain(sugihara_n);
      } else if (abs_k > 0) {
        a = abs_chain(abs_k);
      } else if (want_c4) {
        a = c4();
      } else if (!sum_files.empty()) {
        a = catalan_sum(read_algebra_file(sum_files[0]), read_algebra_file(sum_files[1]));
      } else if (!tensor_args.empty()) {
        SkeletonDecomposition d;
        d.skeleton = read_algebra_file(tensor_args[0]);
        d.fiber_sizes = parse_int_list(tensor_args[1]);
        a = tensor(d);
      } else {
        LacedCode code;
        try {
          code = LacedCode::parse(mode);
        } catch (const Error& e) {
          throw CLI::ValidationError("construct", e.what());
        }
        a = compile(code).algebra;
      }
      write_output(to_json_string(a), out_path);
      return 0;
    }

    if (*c_decomp) {
      FinAlgebra a = read_algebra_file(file);
      json j;
      if (mode == "catalan") {
        auto [left, right] = catalan_decompose(a);
        j["a"] = to_json(left);
        j["b"] = to_json(right);
      } else if (mode == "skeleton") {
        SkeletonResult sk = skeleton(a);
        j["skeleton"] = to_json(sk.skeleton);
        j["elements"] = sk.elements;
        j["fibers"] = sk.fibers;
      } else {
        throw CLI::ValidationError("decompose", "mode must be catalan or skeleton");
      }
      write_output(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (*c_amalg) {
      Span s;
      s.a = read_algebra_file(amalg_files[0]);
      s.b = read_algebra_file(amalg_files[1]);
      s.c = read_algebra_file(amalg_files[2]);
      s.i1 = parse_int_list(map1_csv);
      s.i2 = parse_int_list(map2_csv);
      Amalgam am = (mode == "osm") ? amalgamate_osm(s) : amalgamate_cic(s);
      json j;
      j["d"] = to_json(am.d);
      j["j1"] = am.j1;
      j["j2"] = am.j2;
      write_output(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (*c_fep) {
      FepResult r = fep_closure(read_algebra_file(file), parse_int_list(subset_csv));
      json j;
      j["algebra"] = to_json(r.algebra);
      j["carrier"] = r.carrier;
      j["subset"] = r.subset;
      j["embedding"] = r.subset_map;
      write_output(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (*c_export) {
      FinAlgebra a = read_algebra_file(file);
      write_output(to_dot(a, true, true, both), out_path);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::internal ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
