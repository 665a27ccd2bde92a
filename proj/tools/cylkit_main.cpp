#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cylkit/check.hpp"
#include "cylkit/duality.hpp"
#include "cylkit/parse.hpp"
#include "cylkit/represent.hpp"
#include "cylkit/search.hpp"
#include "json.hpp"

// cylkit: run axiom suites and single equations against finite algebras,
// build complex algebras and ultrafilter frames, replay the representation
// pipelines, and export suites as equation files.
//
// Exit codes: 0 all checks passed, 1 a validity check failed, 2 input error.

namespace {

using namespace cylkit;

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CYLKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path);
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct CheckArgs {
  std::string suite;
  std::string eq;
  std::string eq_file;
  int alpha = 3;
  int base = 2;
  std::string mode = "exhaustive";
  uint64_t samples = 10000;
  uint64_t seed = 0;
  int threads = 0;
  bool fail_fast = false;
  bool include_optional = false;
  std::string out;
  std::string json_out;
};

int run_check(const CheckArgs& a) {
  Dimension dim(a.alpha);
  SetAlgebra alg(dim, Base(static_cast<uint32_t>(a.base)));
  CheckStrategy strat;
  strat.mode = a.mode == "random" ? CheckStrategy::Random
                                  : CheckStrategy::Exhaustive;
  if (a.mode != "random" && a.mode != "exhaustive")
    throw InputError("mode must be exhaustive or random");
  strat.samples = a.samples;
  strat.seed = a.seed;

  suites::SuiteInstance inst{suites::SuiteId::FPA,
                             Signature(SigTag::Any, dim),
                             {},
                             {}};
  if (!a.suite.empty()) {
    const auto id = suites::suite_from_string(a.suite);
    if (!id) throw InputError("unknown suite id " + a.suite);
    suites::InstantiateOptions opts;
    opts.include_optional = a.include_optional;
    inst = suites::instantiate(*id, dim, opts);
  } else if (!a.eq.empty()) {
    inst.equations.push_back(
        parse_equation(a.eq, Signature(SigTag::Any, dim), "eq"));
  } else if (!a.eq_file.empty()) {
    std::ifstream is(a.eq_file);
    if (!is) throw InputError("cannot read " + a.eq_file);
    inst.equations = suites::read_equation_file(is, Signature(SigTag::Any, dim));
  } else {
    throw InputError("one of --suite, --eq, --eq-file is required");
  }

  SuiteReport report =
      check_suite(alg, inst, strat, thread_count(a.threads), a.fail_fast);
  if (a.suite.empty())
    report.suite_name = a.eq.empty() ? "file:" + a.eq_file : "adhoc";
  const std::string text = report.to_text();
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  if (!a.json_out.empty()) write_file(a.json_out, report.summary_json());

  if (!report.all_passed()) {
    const auto* f = report.first_failure();
    std::cerr << "FAIL " << f->label << "  " << f->verdict.detail << "\n";
    return 1;
  }
  return 0;
}

int run_search(const std::string& eq_text, int alpha, int max_atoms,
               const std::string& out) {
  Dimension dim(alpha);
  const Equation eq = parse_equation(eq_text, Signature(SigTag::Any, dim), "eq");
  SearchBounds bounds;
  bounds.max_atoms = max_atoms;
  const SearchResult res = search_counterexample(eq, dim, bounds);
  nlohmann::json j;
  j["equation"] = print(eq);
  j["found"] = res.found;
  j["structures_tried"] = res.structures_tried;
  j["budget_exhausted"] = res.budget_exhausted;
  if (res.found) {
    j["structure"] = nlohmann::json::parse(res.structure->to_json());
    j["counterexample"] = res.counterexample;
  }
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return res.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cylkit: finite-model workbench for algebras of alpha-ary "
               "relations"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand(
      "check", "check a suite, an equation, or an equation file");
  check->add_option("--suite", check_args.suite,
                    "suite id (CA, SCA, FPA, PA_SUBST, THM2, THM3, DERIVED_P, "
                    "DERIVED_A, FPEA_DIAG)");
  check->add_option("--eq", check_args.eq, "equation text");
  check->add_option("--eq-file", check_args.eq_file, "equation-per-line file");
  check->add_option("--alpha", check_args.alpha, "dimension (default 3)");
  check->add_option("--base", check_args.base, "base size |U| (default 2)");
  check->add_option("--mode", check_args.mode, "exhaustive|random");
  check->add_option("--samples", check_args.samples, "random samples per instance");
  check->add_option("--seed", check_args.seed, "PRNG seed");
  check->add_option("--threads", check_args.threads,
                    "worker threads (or CYLKIT_THREADS)");
  check->add_flag("--fail-fast", check_args.fail_fast, "stop at first failure");
  check->add_flag("--include-optional", check_args.include_optional,
                  "emit optional schemas too");
  check->add_option("--out", check_args.out, "report path (default stdout)");
  check->add_option("--json", check_args.json_out, "JSON summary path");

  std::string export_suite, export_out;
  int export_alpha = 3;
  bool export_optional = false;
  auto* exporter =
      app.add_subcommand("export-suite", "write a suite as an equation file");
  exporter->add_option("--suite", export_suite, "suite id")->required();
  exporter->add_option("--alpha", export_alpha, "dimension");
  exporter->add_option("--out", export_out, "output path (default stdout)");
  exporter->add_flag("--include-optional", export_optional,
                     "emit optional schemas too");

  std::string cm_in, cm_out;
  auto* cm = app.add_subcommand(
      "cm", "build the complex algebra of an atom-structure JSON");
  cm->add_option("--in", cm_in, "AtomStructure JSON path")->required();
  cm->add_option("--out", cm_out, "summary path (default stdout)");

  std::string uf_in, uf_out, uf_tables;
  auto* ufc = app.add_subcommand(
      "uf", "ultrafilter frame of the complex algebra of a structure");
  ufc->add_option("--in", uf_in, "AtomStructure JSON path");
  ufc->add_option("--tables", uf_tables,
                  "algebra-with-tables JSON path (alternative input)");
  ufc->add_option("--out", uf_out, "dual structure path (default stdout)");

  std::string rt_in, rt_tables;
  auto* rt = app.add_subcommand("roundtrip",
                                "check Em(A) = Cm(Uf(A)) is an isomorphism");
  rt->add_option("--in", rt_in, "AtomStructure JSON path");
  rt->add_option("--tables", rt_tables, "algebra-with-tables JSON path");

  std::string rep_demo = "sec5";
  int rep_alpha = 3, rep_base = 2, rep_w = 0;
  uint64_t rep_seed = 0;
  std::string rep_out;
  auto* rep = app.add_subcommand("represent", "run a representation pipeline");
  rep->add_option("--demo", rep_demo, "sec5|sec6");
  rep->add_option("--alpha", rep_alpha, "dimension");
  rep->add_option("--base", rep_base, "base size |U|");
  rep->add_option("--W", rep_w, "blow-up factor size (sec5; default |U|*alpha)");
  rep->add_option("--seed", rep_seed, "PRNG seed");
  rep->add_option("--out", rep_out, "manifest path (default stdout)");

  std::string search_eq, search_out;
  int search_alpha = 3, search_atoms = 4;
  auto* search = app.add_subcommand(
      "search", "search small atom structures for a counter-model");
  search->add_option("--eq", search_eq, "equation text")->required();
  search->add_option("--alpha", search_alpha, "dimension");
  search->add_option("--max-atoms", search_atoms, "atom bound (<= 6)");
  search->add_option("--out", search_out, "witness path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_args);

    if (exporter->parsed()) {
      const auto id = cylkit::suites::suite_from_string(export_suite);
      if (!id) throw cylkit::InputError("unknown suite id " + export_suite);
      cylkit::suites::InstantiateOptions opts;
      opts.include_optional = export_optional;
      const auto inst =
          cylkit::suites::instantiate(*id, cylkit::Dimension(export_alpha), opts);
      std::ostringstream os;
      cylkit::suites::write_suite(os, inst);
      if (export_out.empty())
        std::cout << os.str();
      else
        write_file(export_out, os.str());
      return 0;
    }

    auto load_algebra = [&](const std::string& structure_path,
                            const std::string& tables_path) {
      using cylkit::duality::FiniteAlgebra;
      if (!structure_path.empty())
        return FiniteAlgebra::cm(
            cylkit::duality::AtomStructure::from_json(read_file(structure_path)));
      if (tables_path.empty())
        throw cylkit::InputError("need --in or --tables");
      const auto j = nlohmann::json::parse(read_file(tables_path));
      const int atoms = j.at("atoms").get<int>();
      const uint64_t carrier = j.at("carrier").get<uint64_t>();
      if (atoms < 1 || carrier != (uint64_t(1) << atoms))
        throw cylkit::InputError(
            "carrier is not the power set of the atoms (" +
            std::to_string(carrier) + " elements for " +
            std::to_string(atoms) + " atoms)");
      cylkit::Dimension dim(j.at("alpha").get<int>());
      std::vector<std::vector<uint64_t>> cyl_tables;
      for (const auto& t : j.at("tables").at("c"))
        cyl_tables.push_back(t.get<std::vector<uint64_t>>());
      return FiniteAlgebra::from_tables(atoms, dim, cyl_tables);
    };

    if (cm->parsed()) {
      const auto s =
          cylkit::duality::AtomStructure::from_json(read_file(cm_in));
      const auto alg = cylkit::duality::FiniteAlgebra::cm(s);
      nlohmann::json j;
      j["atoms"] = alg.atoms();
      j["alpha"] = alg.dim().alpha();
      j["carrier"] = uint64_t(1) << alg.atoms();
      nlohmann::json ops = nlohmann::json::object();
      for (int i = 0; i < alg.dim().alpha(); ++i)
        if (alg.has_cyl(i)) {
          std::vector<uint64_t> table;
          for (uint64_t x = 0; x < (uint64_t(1) << alg.atoms()); ++x)
            table.push_back(alg.cyl(i, x));
          ops["c" + std::to_string(i)] = table;
        }
      j["operator_tables"] = ops;
      const std::string text = j.dump(2) + "\n";
      if (cm_out.empty())
        std::cout << text;
      else
        write_file(cm_out, text);
      return 0;
    }

    if (ufc->parsed()) {
      const auto alg = load_algebra(uf_in, uf_tables);
      const auto dual = cylkit::duality::uf(alg);
      const std::string text = dual.to_json() + "\n";
      if (uf_out.empty())
        std::cout << text;
      else
        write_file(uf_out, text);
      return 0;
    }

    if (rt->parsed()) {
      const auto alg = load_algebra(rt_in, rt_tables);
      const auto rep_res = cylkit::duality::em_roundtrip(alg);
      std::cout << (rep_res.isomorphic ? "isomorphic" : "NOT isomorphic: " +
                                                            rep_res.detail)
                << "\n";
      return rep_res.isomorphic ? 0 : 1;
    }

    if (rep->parsed()) {
      cylkit::Dimension dim(rep_alpha);
      cylkit::Base base(static_cast<uint32_t>(rep_base));
      std::string manifest;
      bool passed = false;
      if (rep_demo == "sec5") {
        const uint32_t w = rep_w > 0
                               ? static_cast<uint32_t>(rep_w)
                               : static_cast<uint32_t>(rep_base * rep_alpha);
        const auto result =
            cylkit::represent::run_sec5(dim, base, w, rep_seed);
        manifest = result.manifest_json;
        passed = result.all_passed();
        if (!passed)
          for (const auto& f : result.failures) std::cerr << "FAIL " << f << "\n";
      } else if (rep_demo == "sec6") {
        const auto result = cylkit::represent::run_sec6(dim, base, rep_seed);
        manifest = result.manifest_json;
        passed = result.all_passed();
        if (!passed)
          for (const auto& f : result.failures) std::cerr << "FAIL " << f << "\n";
      } else {
        throw cylkit::InputError("unknown demo " + rep_demo);
      }
      if (rep_out.empty())
        std::cout << manifest << "\n";
      else
        write_file(rep_out, manifest);
      return passed ? 0 : 1;
    }

    if (search->parsed())
      return run_search(search_eq, search_alpha, search_atoms, search_out);
  } catch (const cylkit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const cylkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
