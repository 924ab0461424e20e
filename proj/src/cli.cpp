#include "gennum/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gennum/report.hpp"
#include "gennum/specparse.hpp"

namespace gennum::cli {

namespace {

using report::json;

struct CommonOpts {
  Int max_index = 2;
  std::string precision = "auto";
  Int budget = Int{1} << 21;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  bool timing = false;
  std::string input_path;
};

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o.out_path, "also write the report to this path");
  cmd->add_flag("--timing", o.timing, "include wall-clock timing in the report");
}

void add_group_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input_path, "spec file ('-' or absent reads stdin)");
  cmd->add_option("--max-index", o.max_index,
                  "verify subgroups up to index p^m")
      ->check(CLI::Range(Int{0}, Int{6}));
  cmd->add_option("--precision", o.precision,
                  "quotient precision: auto or an explicit exponent K");
  cmd->add_option("--budget", o.budget, "element budget for closures")
      ->check(CLI::Range(Int{1}, Int{1} << 28));
  cmd->add_option("--seed", o.seed, "seed echoed into the report");
  add_output_opts(cmd, o);
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::semantic_error, "cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

catalog::BuildOptions build_options(const CommonOpts& o) {
  catalog::BuildOptions b;
  b.budget = o.budget;
  if (o.precision != "auto") {
    std::size_t used = 0;
    Int k = 0;
    try {
      k = std::stoll(o.precision, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == o.precision.size() && k >= 1 && k <= 16, errc::semantic_error,
            "precision must be 'auto' or an integer in [1, 16]");
    b.forced_K = k;
  }
  return b;
}

json params_json(const CommonOpts& o) {
  json p;
  p["max_index"] = o.max_index;
  p["precision"] = o.precision;
  p["budget"] = o.budget;
  p["seed"] = o.seed;
  return p;
}

void emit(json& rep, const CommonOpts& o,
          std::chrono::steady_clock::time_point t0, std::ostream& out) {
  if (o.timing) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    rep["timing"] = {
        {"seconds",
         std::chrono::duration_cast<std::chrono::milliseconds>(dt).count() / 1000.0}};
  }
  const std::string body =
      o.format == "text" ? report::render_text(rep) : rep.dump(2) + "\n";
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    require(f.good(), errc::semantic_error, "cannot open output file: " + o.out_path);
    f << body;
  }
  out << body;
}

int error_code_for(const error& e) {
  switch (e.code()) {
    case errc::certificate_unavailable:
    case errc::budget_exceeded:
    case errc::precision_exhausted:
      return 2;
    default:
      return 3;
  }
}

json error_json(const error& e) {
  json out;
  out["code"] = errc_name(e.code());
  out["message"] = e.what();
  return out;
}

// shared driver for the group verification commands
int run_group_check(const std::string& command, const CommonOpts& o,
                    std::optional<Int> en_n, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto specs = specparse::parse_spec(read_input(o.input_path));
  require(!specs.empty(), errc::semantic_error, "input contains no groups");
  json params = params_json(o);
  if (en_n) params["n"] = *en_n;
  json rep = report::make_report(command, params);
  int code = 0;
  for (const auto& spec : specs) {
    json res;
    res["spec"] = specparse::render_spec(spec);
    res["kind"] = catalog::spec_kind(spec);
    try {
      const catalog::BuiltGroup g = catalog::build(spec, o.max_index, build_options(o));
      if (command == "verify star") {
        const verify::Verdict v = verify::star_check(g, o.max_index);
        res["star"] = report::verdict_json(v);
        if (!v.pass) code = std::max(code, 1);
      } else if (command == "verify en") {
        const verify::Verdict v = verify::en_check(g, o.max_index, *en_n);
        res["en"] = report::verdict_json(v);
        if (!v.pass) code = std::max(code, 1);
      } else if (command == "verify schreier") {
        res["schreier"] = report::defect_json(verify::schreier_defect_report(g, o.max_index));
      } else {
        res["oracle"] = report::oracle_json(verify::theorem_oracle(spec));
        res["profile"] = report::profile_json(verify::d_profile(g, o.max_index));
      }
    } catch (const error& e) {
      res["error"] = error_json(e);
      code = std::max(code, error_code_for(e));
    }
    rep["results"].push_back(std::move(res));
  }
  emit(rep, o, t0, out);
  return code;
}

Mat parse_matrix_input(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_array()) {
    require(!j.empty() && j.front().is_array(), errc::syntax_error,
            "matrix JSON must be an array of rows");
    const Int rows = static_cast<Int>(j.size());
    const Int cols = static_cast<Int>(j.front().size());
    Mat m(rows, cols);
    for (Int r = 0; r < rows; ++r) {
      require(j[r].is_array() && static_cast<Int>(j[r].size()) == cols,
              errc::syntax_error, "matrix rows differ in length");
      for (Int c = 0; c < cols; ++c) {
        require(j[r][c].is_number_integer(), errc::syntax_error,
                "matrix entries must be integers");
        m(r, c) = j[r][c].get<Int>();
      }
    }
    return m;
  }
  // whitespace grid, one row per line
  std::vector<std::vector<Int>> grid;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::vector<Int> row;
    std::string tok;
    while (toks >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(tok, &used));
        require(used == tok.size(), errc::syntax_error, "");
      } catch (const std::exception&) {
        fail(errc::syntax_error,
             "matrix input is neither JSON nor an integer grid: '" + tok + "'");
      }
    }
    if (!row.empty()) grid.push_back(std::move(row));
  }
  require(!grid.empty(), errc::syntax_error, "matrix input is empty");
  const Int cols = static_cast<Int>(grid.front().size());
  Mat m(static_cast<Int>(grid.size()), cols);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    require(static_cast<Int>(grid[r].size()) == cols, errc::syntax_error,
            "matrix rows differ in length");
    for (Int c = 0; c < cols; ++c) m(static_cast<Int>(r), c) = grid[r][c];
  }
  return m;
}

int run_decompose(const CommonOpts& o, Int p, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Mat t = parse_matrix_input(read_input(o.input_path));
  json params = params_json(o);
  params["p"] = p;
  json rep = report::make_report("decompose", params);
  const repdecomp::DecompositionCounts c = repdecomp::decompose(p, t);
  json res;
  res["counts"] = report::counts_json(c);
  rep["results"].push_back(std::move(res));
  emit(rep, o, t0, out);
  return 0;
}

int run_table1(const CommonOpts& o, Int p, Int max_dim, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  json params = params_json(o);
  params["p"] = p;
  params["max_dim"] = max_dim;
  json rep = report::make_report("table1", params);
  json res;
  res["rows"] = report::table_json(repdecomp::table1(p, max_dim));
  rep["results"].push_back(std::move(res));
  emit(rep, o, t0, out);
  return 0;
}

lielattice::LieLattice parse_lattice_input(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  require(j.is_object() && j.contains("p") && j.contains("dim") && j.contains("c"),
          errc::syntax_error,
          "lattice input must be a JSON object with p, dim, and c");
  require(j["p"].is_number_integer() && j["dim"].is_number_integer() &&
              j["c"].is_array(),
          errc::syntax_error, "lattice fields have the wrong shape");
  const Int p = j["p"].get<Int>();
  const Int dim = j["dim"].get<Int>();
  require(static_cast<Int>(j["c"].size()) == dim, errc::syntax_error,
          "structure tensor must list one matrix per basis vector");
  std::vector<Mat> c;
  for (const auto& slab : j["c"]) {
    require(slab.is_array() && static_cast<Int>(slab.size()) == dim,
            errc::syntax_error, "structure matrices must be dim x dim");
    Mat m(dim, dim);
    for (Int r = 0; r < dim; ++r) {
      require(slab[r].is_array() && static_cast<Int>(slab[r].size()) == dim,
              errc::syntax_error, "structure matrices must be dim x dim");
      for (Int k = 0; k < dim; ++k) {
        require(slab[r][k].is_number_integer(), errc::syntax_error,
                "structure constants must be integers");
        m(r, k) = slab[r][k].get<Int>();
      }
    }
    c.push_back(std::move(m));
  }
  return lielattice::make_lie_lattice(p, dim, c);
}

int run_lattice(const CommonOpts& o, Int d_expected, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const lielattice::LieLattice l = parse_lattice_input(read_input(o.input_path));
  json params = params_json(o);
  if (d_expected >= 0) params["d_expected"] = d_expected;
  json rep = report::make_report("lattice", params);
  const lielattice::LatticeVerdict v =
      lielattice::star_check_lattice(l, o.max_index, d_expected);
  json res;
  res["lattice"] = report::lattice_verdict_json(v);
  rep["results"].push_back(std::move(res));
  emit(rep, o, t0, out);
  return v.pass ? 0 : 1;
}

int run_catalog_list(const CommonOpts& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  json rep = report::make_report("catalog list", json::object());
  auto add = [&rep](Int item, const std::string& kind, const std::string& params,
                    const catalog::GroupSpec& sample) {
    json res;
    res["item"] = item;
    res["kind"] = kind;
    res["parameters"] = params;
    res["example"] = specparse::render_spec(sample);
    rep["results"].push_back(std::move(res));
  };
  add(1, "abelian", "p prime, rank >= 1", catalog::family(1, 3, 2));
  add(2, "scalar", "lambda = 1+p^s with s >= 1 for odd p; lambda = +-(1+2^s) with s >= 2 for p = 2",
      catalog::family(2, 3, 2, 1));
  add(3, "maxclass3", "p = 3, dimension 2", catalog::family(3, 3, 2));
  add(4, "scalar", "lambda = -1, p = 2", catalog::family(4, 2, 2));
  json mutants;
  mutants["kinds"] = json::array({"matrix", "torsion", "affine"});
  mutants["note"] = "negative-control constructors; oracle classification NotListed or Unknown";
  rep["results"].push_back(std::move(mutants));
  emit(rep, o, t0, out);
  return 0;
}

Mat json_to_mat(const json& j) {
  require(j.is_array() && !j.empty() && j.front().is_array(), errc::syntax_error,
          "witness matrix must be an array of rows");
  const Int rows = static_cast<Int>(j.size());
  const Int cols = static_cast<Int>(j.front().size());
  Mat m(rows, cols);
  for (Int r = 0; r < rows; ++r)
    for (Int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<Int>();
  return m;
}

Vec json_to_vec(const json& j) {
  require(j.is_array(), errc::syntax_error, "witness vector must be an array");
  Vec v(static_cast<Int>(j.size()));
  for (Int i = 0; i < v.size(); ++i) v(i) = j[i].get<Int>();
  return v;
}

// rebuild each witnessed group at the reported precision and confirm the
// witness subgroup really has the reported index and generator number
int run_recheck(const CommonOpts& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const json loaded = json::parse(read_input(o.input_path), nullptr, false);
  require(loaded.is_object() && loaded.contains("results"), errc::syntax_error,
          "recheck input is not a gennum report");
  json rep = report::make_report("recheck", params_json(o));
  int code = 0;
  for (const auto& prior : loaded["results"]) {
    const json* verdict = nullptr;
    for (const char* key : {"star", "en"})
      if (prior.contains(key) && prior[key].contains("witness")) verdict = &prior[key];
    json res;
    if (!prior.contains("spec")) continue;
    res["spec"] = prior["spec"];
    if (!verdict) {
      res["witness_confirmed"] = nullptr;
      rep["results"].push_back(std::move(res));
      continue;
    }
    const auto specs = specparse::parse_spec(prior["spec"].get<std::string>());
    require(specs.size() == 1, errc::semantic_error, "spec echo must hold one group");
    const json& cert = (*verdict)["certificate"];
    const json& wit = (*verdict)["witness"];
    catalog::BuildOptions opts;
    opts.budget = o.budget;
    opts.forced_K = cert["precision"].get<Int>();
    const catalog::BuiltGroup g =
        catalog::build(specs[0], cert["max_index_exp"].get<Int>(), opts);
    std::vector<std::int32_t> gen_ids;
    for (const auto& genj : wit["generators"]) {
      const pgroup::AffineElement e = pgroup::AffineElement::make(
          g.quotient->ring(), json_to_mat(genj["m"]), json_to_vec(genj["v"]));
      const std::int32_t id = g.quotient->id_of(e);
      require(id >= 0, errc::semantic_error,
              "witness generator is not an element of the rebuilt quotient");
      gen_ids.push_back(id);
    }
    const pgroup::Subgroup h = pgroup::subgroup_closure(g.quotient, gen_ids);
    const Int index_exp = g.quotient->order_exp() - h.order_exp();
    const Int d = pgroup::dmin(h);
    const bool confirmed = index_exp == wit["index_exp"].get<Int>() &&
                           d == wit["d_found"].get<Int>() &&
                           d != wit["d_expected"].get<Int>();
    res["witness_confirmed"] = confirmed;
    res["index_exp"] = index_exp;
    res["d_found"] = d;
    if (!confirmed) code = std::max(code, 1);
    rep["results"].push_back(std::move(res));
  }
  emit(rep, o, t0, out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified finite-quotient explorer for pro-p groups of finite rank"};
  app.name("gennum");
  app.require_subcommand(1);

  CommonOpts o;

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a subgroup-census check");
  verify_cmd->require_subcommand(1);
  CLI::App* star = verify_cmd->add_subcommand(
      "star", "check d(H) = d(G) on every open subgroup up to the index bound");
  add_group_opts(star, o);
  Int en_n = 0;
  CLI::App* en = verify_cmd->add_subcommand(
      "en", "check d(H) - n = |G:H| (d(G) - n) on every open subgroup");
  add_group_opts(en, o);
  en->add_option("--n", en_n, "the class parameter n")->required();
  CLI::App* schreier = verify_cmd->add_subcommand(
      "schreier", "report generator defects against the free-group value");
  add_group_opts(schreier, o);

  CLI::App* profile = app.add_subcommand("profile", "census d-profile per index");
  add_group_opts(profile, o);

  Int dec_p = 2;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "invariants of an order-p integer matrix action");
  decompose->add_option("input", o.input_path, "matrix file: JSON or whitespace grid");
  decompose->add_option("--p", dec_p, "the prime")->required();
  add_output_opts(decompose, o);

  Int t1_p = 2, t1_max = 4;
  CLI::App* table1 = app.add_subcommand(
      "table1", "feasible decomposition triples with their case labels");
  table1->add_option("--p", t1_p, "the prime")->required();
  table1->add_option("--max-dim", t1_max, "largest ambient dimension")->required();
  add_output_opts(table1, o);

  Int lat_expected = -1;
  CLI::App* lattice = app.add_subcommand(
      "lattice", "sublattice generator-number check from JSON structure constants");
  lattice->add_option("input", o.input_path, "lattice file: JSON {p, dim, c}");
  lattice->add_option("--max-index", o.max_index, "index bound exponent")
      ->check(CLI::Range(Int{0}, Int{6}));
  lattice->add_option("--d-expected", lat_expected,
                      "expected generator number (defaults to the whole lattice's)");
  add_output_opts(lattice, o);

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "catalog information");
  CLI::App* catalog_list = catalog_cmd->add_subcommand("list", "list the group families");
  add_output_opts(catalog_list, o);

  CLI::App* recheck = app.add_subcommand("recheck", "re-verify witnesses in a report");
  recheck->add_option("input", o.input_path, "report JSON produced by this tool");
  recheck->add_option("--budget", o.budget, "element budget for closures")
      ->check(CLI::Range(Int{1}, Int{1} << 28));
  add_output_opts(recheck, o);

  std::vector<const char*> argv;
  argv.push_back("gennum");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (star->parsed()) return run_group_check("verify star", o, std::nullopt, out);
    if (en->parsed()) return run_group_check("verify en", o, en_n, out);
    if (schreier->parsed()) return run_group_check("verify schreier", o, std::nullopt, out);
    if (profile->parsed()) return run_group_check("profile", o, std::nullopt, out);
    if (decompose->parsed()) return run_decompose(o, dec_p, out);
    if (table1->parsed()) return run_table1(o, t1_p, t1_max, out);
    if (lattice->parsed()) return run_lattice(o, lat_expected, out);
    if (catalog_list->parsed()) return run_catalog_list(o, out);
    if (recheck->parsed()) return run_recheck(o, out);
    err << "error: no subcommand selected\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return error_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gennum::cli
