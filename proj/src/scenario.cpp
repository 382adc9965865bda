#include "hausdorff/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace hausdorff {

namespace {

[[noreturn]] void bad(const std::string& ctx, const std::string& msg) {
  throw std::invalid_argument("scenario config: " + ctx + ": " + msg);
}

void expect_keys(const json& j, const std::string& ctx, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(ctx, "expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) { ok = true; break; }
    if (!ok) bad(ctx, "unknown key '" + key + "'");
  }
}

double num(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) bad(ctx, std::string("missing key '") + key + "'");
  if (!j[key].is_number()) bad(ctx, std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

double num_or(const json& j, const char* key, double dflt) {
  return j.contains(key) ? j[key].get<double>() : dflt;
}

int int_of(const json& j, const std::string& ctx, const char* key) {
  const double v = num(j, ctx, key);
  if (v != std::floor(v)) bad(ctx, std::string("'") + key + "' must be an integer");
  return static_cast<int>(v);
}

int int_or(const json& j, const char* key, int dflt) {
  return j.contains(key) ? j[key].get<int>() : dflt;
}

std::string str(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) bad(ctx, std::string("missing string '") + key + "'");
  return j[key].get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& ctx, const char* key) {
  if (!j.contains(key)) bad(ctx, std::string("missing list '") + key + "'");
  if (!j[key].is_array()) bad(ctx, std::string("'") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j[key]) out.push_back(v.get<double>());
  return out;
}

ExponentFunction parse_exponent(const json& j, const std::string& ctx, int dim, ValueClass cls) {
  expect_keys(j, ctx, {"kind", "value", "a", "b"});
  const std::string kind = str(j, ctx, "kind");
  if (kind == "constant") return ExponentFunction::constant(dim, num(j, ctx, "value"), cls);
  if (kind == "rational_bump")
    return ExponentFunction::rational_bump(dim, num(j, ctx, "a"), num(j, ctx, "b"), cls);
  if (kind == "clamp_log")
    return ExponentFunction::clamp_log(dim, num(j, ctx, "a"), num(j, ctx, "b"), cls);
  bad(ctx, "unknown exponent kind '" + kind + "'");
}

TestFunction parse_testfn(const json& j, const std::string& ctx, int dim) {
  expect_keys(j, ctx,
              {"kind", "a", "radius", "r1", "r2", "value", "index", "declared_lip"});
  const std::string kind = str(j, ctx, "kind");
  TestFunction f;
  if (kind == "truncated_power")
    f = TestFunction::truncated_power(dim, num(j, ctx, "a"), num(j, ctx, "radius"));
  else if (kind == "gaussian")
    f = TestFunction::gaussian(dim, num_or(j, "a", 1.0));
  else if (kind == "bump")
    f = TestFunction::bump(dim, num(j, ctx, "radius"));
  else if (kind == "indicator_annulus")
    f = TestFunction::indicator_annulus(dim, num(j, ctx, "r1"), num(j, ctx, "r2"));
  else if (kind == "constant")
    f = TestFunction::constant(dim, num(j, ctx, "value"));
  else if (kind == "linear_coordinate")
    f = TestFunction::linear_coordinate(dim, int_or(j, "index", 0));
  else if (kind == "abs_power")
    f = TestFunction::abs_power(dim, num(j, ctx, "a"));
  else if (kind == "sign_coordinate")
    f = TestFunction::sign_coordinate(dim, int_or(j, "index", 0));
  else if (kind == "radial_step")
    f = TestFunction::radial_step(dim, num(j, ctx, "radius"));
  else
    bad(ctx, "unknown function kind '" + kind + "'");
  if (j.contains("declared_lip")) {
    const auto& d = j["declared_lip"];
    expect_keys(d, ctx + ".declared_lip", {"beta", "constant"});
    f.with_declared_lip(num(d, ctx, "beta"), num(d, ctx, "constant"));
  }
  return f;
}

ScalarFn parse_scalarfn(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"kind", "value", "index", "scale", "exponent"});
  const std::string kind = str(j, ctx, "kind");
  if (kind == "constant") return ScalarFn::constant(num(j, ctx, "value"));
  if (kind == "coordinate") return ScalarFn::coordinate(int_or(j, "index", 0), num_or(j, "scale", 1.0));
  if (kind == "norm") return ScalarFn::norm(num_or(j, "scale", 1.0));
  if (kind == "power")
    return ScalarFn::power(int_or(j, "index", 0), num_or(j, "scale", 1.0), num(j, ctx, "exponent"));
  bad(ctx, "unknown scalar function kind '" + kind + "'");
}

MatrixFamily parse_family(const json& j, const std::string& ctx, int dim) {
  expect_keys(j, ctx, {"kind", "coordinate", "scale", "powers", "s", "angle"});
  const std::string kind = str(j, ctx, "kind");
  if (kind == "scalar")
    return MatrixFamily::scalar(dim, int_or(j, "coordinate", 0), num_or(j, "scale", 1.0));
  if (kind == "scaled_identity") {
    if (!j.contains("s")) bad(ctx, "scaled_identity needs 's'");
    return MatrixFamily::scaled_identity_family(dim, parse_scalarfn(j["s"], ctx + ".s"));
  }
  if (kind == "diagonal_powers") {
    auto p = num_list(j, ctx, "powers");
    return MatrixFamily::diagonal_powers(dim, std::move(p));
  }
  if (kind == "rotation_scalar") {
    if (!j.contains("s") || !j.contains("angle")) bad(ctx, "rotation_scalar needs 's' and 'angle'");
    return MatrixFamily::rotation_scalar(dim, parse_scalarfn(j["s"], ctx + ".s"),
                                         parse_scalarfn(j["angle"], ctx + ".angle"));
  }
  bad(ctx, "unknown family kind '" + kind + "'");
}

KernelSpec parse_kernel(const json& j, const std::string& ctx, int dim) {
  expect_keys(j, ctx, {"kind", "sigma", "r1", "r2", "positive_orthant", "c", "a", "powers"});
  const std::string kind = str(j, ctx, "kind");
  if (kind == "power_annulus")
    return KernelSpec::power_annulus(dim, num_or(j, "sigma", 0.0), num(j, ctx, "r1"),
                                     num(j, ctx, "r2"),
                                     j.contains("positive_orthant") && j["positive_orthant"].get<bool>());
  if (kind == "power_cube") {
    std::vector<double> powers;
    if (j.contains("powers")) powers = num_list(j, ctx, "powers");
    return KernelSpec::power_cube(dim, num_or(j, "c", 1.0), num_or(j, "sigma", 0.0), powers);
  }
  if (kind == "gaussian_tail")
    return KernelSpec::gaussian_tail(dim, num_or(j, "c", 1.0), num_or(j, "a", 1.0),
                                     num_or(j, "sigma", 0.0));
  if (kind == "zero") return KernelSpec::zero(dim);
  bad(ctx, "unknown kernel kind '" + kind + "'");
}

GridSpec parse_gridspec(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"k_min", "k_max", "radial", "angular", "rule"});
  GridSpec g;
  g.k_min = int_of(j, ctx, "k_min");
  g.k_max = int_of(j, ctx, "k_max");
  g.radial_nodes = int_of(j, ctx, "radial");
  g.angular_nodes = int_or(j, "angular", 32);
  if (j.contains("rule")) {
    const std::string r = j["rule"].get<std::string>();
    if (r == "midpoint")
      g.rule = QuadRule::midpoint;
    else if (r == "gauss_legendre")
      g.rule = QuadRule::gauss_legendre;
    else
      bad(ctx, "unknown rule '" + r + "'");
  }
  return g;
}

std::vector<Vec> parse_points(const json& j, const std::string& ctx, int dim) {
  std::vector<Vec> pts;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      bad(ctx, "each sample must be an array of length dimension");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = row[static_cast<size_t>(i)].get<double>();
    pts.push_back(v);
  }
  return pts;
}

std::function<double(const Vec&)> parse_cube_weight(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"kind", "value", "scale", "powers"});
  const std::string kind = str(j, ctx, "kind");
  if (kind == "constant") {
    const double v = num(j, ctx, "value");
    if (v < 0.0) bad(ctx, "cube weight must be nonnegative");
    return [v](const Vec&) { return v; };
  }
  if (kind == "product_powers") {
    const double scale = num_or(j, "scale", 1.0);
    const auto powers = num_list(j, ctx, "powers");
    return [scale, powers](const Vec& t) {
      double v = scale;
      for (size_t i = 0; i < powers.size(); ++i)
        if (powers[i] != 0.0) v *= std::pow(t[static_cast<int>(i)], powers[i]);
      return v;
    };
  }
  bad(ctx, "unknown cube weight kind '" + kind + "'");
}

}  // namespace

Scenario parse_scenario(const json& j, const std::string& source_name) {
  expect_keys(j, source_name,
              {"schema_version", "name", "theorem", "dimension", "arity", "parameters", "kernel",
               "families", "exponents", "weights", "symbols", "inputs", "grids", "scan",
               "special", "seed", "workers"});
  if (int_of(j, source_name, "schema_version") != 1)
    bad(source_name, "unsupported schema_version");
  Scenario sc;
  sc.name = str(j, source_name, "name");
  const int dim = int_of(j, source_name, "dimension");
  const int arity = int_of(j, source_name, "arity");
  sc.op.dim = dim;
  sc.op.arity = arity;
  sc.seed = static_cast<uint64_t>(int_or(j, "seed", 1));
  sc.workers = int_or(j, "workers", 1);

  // grids
  if (!j.contains("grids")) bad(source_name, "missing 'grids'");
  const auto& jg = j["grids"];
  expect_keys(jg, "grids",
              {"x_grid", "t_grid", "k0_lo", "k0_hi", "radius_log2_lo", "radius_log2_hi",
               "x_samples", "t_samples", "lip_pairs", "cube_panels", "cube_points"});
  if (jg.contains("x_grid")) sc.grids.x_grid = make_grid(parse_gridspec(jg["x_grid"], "grids.x_grid"));
  if (jg.contains("t_grid")) {
    GridSpec ts = parse_gridspec(jg["t_grid"], "grids.t_grid");
    ts.dim = dim;
    sc.grids.t_grid = make_grid(ts);
  }
  if (sc.grids.x_grid == nullptr && jg.contains("t_grid")) sc.grids.x_grid = sc.grids.t_grid;
  sc.grids.herz.k0_lo = int_or(jg, "k0_lo", -20);
  sc.grids.herz.k0_hi = int_or(jg, "k0_hi", 20);
  sc.grids.radii.log2_lo = int_or(jg, "radius_log2_lo", -20);
  sc.grids.radii.log2_hi = int_or(jg, "radius_log2_hi", 20);
  if (jg.contains("x_samples")) sc.grids.x_samples = parse_points(jg["x_samples"], "grids.x_samples", dim);
  if (jg.contains("t_samples")) sc.grids.t_samples = parse_points(jg["t_samples"], "grids.t_samples", dim);
  if (jg.contains("lip_pairs")) {
    const auto& lp = jg["lip_pairs"];
    expect_keys(lp, "grids.lip_pairs", {"count", "radius", "dyadic_levels"});
    sc.grids.lip_pairs.count = int_or(lp, "count", 512);
    sc.grids.lip_pairs.radius = num_or(lp, "radius", 8.0);
    sc.grids.lip_pairs.dyadic_levels = int_or(lp, "dyadic_levels", 40);
  }
  sc.grids.lip_pairs.seed = sc.seed;
  sc.grids.cube_panels = int_or(jg, "cube_panels", 64);
  sc.grids.cube_points = int_or(jg, "cube_points", 8);

  // fix the x grid dimension
  if (sc.grids.x_grid && sc.grids.x_grid->dim() != dim) {
    GridSpec xs = sc.grids.x_grid->spec();
    xs.dim = dim;
    sc.grids.x_grid = make_grid(xs);
  }

  // inputs / symbols
  if (!j.contains("inputs")) bad(source_name, "missing 'inputs'");
  for (const auto& jf : j["inputs"]) sc.op.inputs.push_back(parse_testfn(jf, "inputs", dim));
  if (j.contains("symbols"))
    for (const auto& jb : j["symbols"]) sc.op.symbols.push_back(parse_testfn(jb, "symbols", dim));

  // special (reduction) block: derive the general operator from it
  if (j.contains("special")) {
    const auto& js = j["special"];
    expect_keys(js, "special", {"kind", "weight", "s", "cube_panels", "cube_points"});
    SpecialSpec sp;
    const std::string kind = str(js, "special", "kind");
    if (kind == "hardy_14")
      sp.kind = SpecialKind::hardy_14;
    else if (kind == "hardy_cesaro_15")
      sp.kind = SpecialKind::hardy_cesaro_15;
    else
      bad("special", "unknown kind '" + kind + "'");
    sp.dim = dim;
    sp.arity = arity;
    if (js.contains("weight")) sp.cube_weight = parse_cube_weight(js["weight"], "special.weight");
    if (js.contains("s"))
      for (const auto& jfn : js["s"]) sp.s.push_back(parse_scalarfn(jfn, "special.s"));
    sp.symbols = sc.op.symbols;
    sp.inputs = sc.op.inputs;
    sp.cube_panels = sc.grids.cube_panels;
    sp.cube_points = sc.grids.cube_points;
    sc.special = sp;
    if (!sc.grids.t_grid) bad(source_name, "special scenarios need grids.t_grid");
    sc.op = general_form_of(sp, sc.grids.t_grid);
  } else {
    if (!j.contains("kernel") || !j.contains("families"))
      bad(source_name, "missing 'kernel' or 'families'");
    sc.op.kernel = parse_kernel(j["kernel"], "kernel", dim);
    for (const auto& jf : j["families"]) sc.op.families.push_back(parse_family(jf, "families", dim));
    sc.op.t_grid = sc.grids.t_grid;
  }

  // theorem wiring
  if (j.contains("theorem")) {
    sc.theorem = theorem_from_string(str(j, source_name, "theorem"));
    if (!j.contains("exponents")) bad(source_name, "missing 'exponents'");
    const auto& je = j["exponents"];
    expect_keys(je, "exponents", {"q", "r", "alpha"});
    if (!je.contains("q") || !je.contains("r")) bad("exponents", "need 'q' and 'r' lists");
    for (const auto& q : je["q"])
      sc.params.q.push_back(parse_exponent(q, "exponents.q", dim, ValueClass::exponent_class));
    for (const auto& r : je["r"])
      sc.params.r.push_back(parse_exponent(r, "exponents.r", dim, ValueClass::exponent_class));
    if (je.contains("alpha"))
      for (const auto& a : je["alpha"])
        sc.params.alpha.push_back(parse_exponent(a, "exponents.alpha", dim, ValueClass::real_class));
    if (!j.contains("weights")) bad(source_name, "missing 'weights'");
    expect_keys(j["weights"], "weights", {"gamma"});
    sc.params.gamma = num_list(j["weights"], "weights", "gamma");
    if (!j.contains("parameters")) bad(source_name, "missing 'parameters'");
    const auto& jp = j["parameters"];
    expect_keys(jp, "parameters",
                {"zeta", "lambda", "beta", "p", "p_out", "lambda_out", "gamma_out",
                 "alpha_weights"});
    sc.params.zeta = num_or(jp, "zeta", 1.0);
    if (jp.contains("lambda")) sc.params.lambda = num_list(jp, "parameters", "lambda");
    if (jp.contains("beta")) sc.params.beta = num_list(jp, "parameters", "beta");
    if (jp.contains("p")) sc.params.p_i = num_list(jp, "parameters", "p");
    sc.params.p_out = num_or(jp, "p_out", 1.0);
    sc.params.lambda_out = num_or(jp, "lambda_out", 0.0);
    sc.params.gamma_out = num_or(jp, "gamma_out", 0.0);
    if (jp.contains("alpha_weights"))
      sc.params.alpha_weights = num_list(jp, "parameters", "alpha_weights");
    // Lipschitz orders default to the symbols' declarations
    if (sc.params.beta.empty())
      for (const auto& b : sc.op.symbols)
        sc.params.beta.push_back(b.declared_lip() ? b.declared_lip()->beta : 1.0);
    if (sc.params.lambda.empty()) sc.params.lambda.assign(static_cast<size_t>(arity), 0.0);
    if (sc.params.p_i.empty()) sc.params.p_i.assign(static_cast<size_t>(arity), sc.params.p_out);
  }

  if (j.contains("scan")) {
    const auto& js = j["scan"];
    expect_keys(js, "scan",
                {"dilation_log2_lo", "dilation_log2_hi", "dilation_step", "amplitude_log4_lo",
                 "amplitude_log4_hi", "symbol_log4_lo", "symbol_log4_hi"});
    sc.scan.dilation_log2_lo = int_or(js, "dilation_log2_lo", -6);
    sc.scan.dilation_log2_hi = int_or(js, "dilation_log2_hi", 6);
    sc.scan.dilation_step = int_or(js, "dilation_step", 1);
    sc.scan.amplitude_log4_lo = int_or(js, "amplitude_log4_lo", -3);
    sc.scan.amplitude_log4_hi = int_or(js, "amplitude_log4_hi", 3);
    sc.scan.symbol_log4_lo = int_or(js, "symbol_log4_lo", -3);
    sc.scan.symbol_log4_hi = int_or(js, "symbol_log4_hi", 3);
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("scenario parse error in " + path + ": " + e.what());
  }
  return parse_scenario(j, path);
}

bool is_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  json j;
  in >> j;
  return j.is_object() && j.contains("suite");
}

SuiteSpec load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open suite file: " + path);
  json j;
  in >> j;
  expect_keys(j, path, {"schema_version", "suite"});
  const auto& js = j["suite"];
  expect_keys(js, "suite", {"scenarios"});
  SuiteSpec spec;
  const auto base = std::filesystem::path(path).parent_path();
  for (const auto& p : js["scenarios"])
    spec.scenario_paths.push_back((base / p.get<std::string>()).string());
  return spec;
}

json report_header(const std::string& command, const Scenario& sc) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["scenario"] = sc.name;
  j["seed"] = sc.seed;
  j["workers"] = sc.workers;
  return j;
}

namespace {

json flags_json(const Flags& f) { return json(std::vector<std::string>(f.begin(), f.end())); }

json hypotheses_json(const std::vector<HypothesisResult>& hs) {
  json arr = json::array();
  for (const auto& h : hs) {
    json e;
    e["name"] = h.name;
    e["pass"] = h.pass;
    e["blocking"] = h.blocking;
    e["detail"] = h.detail;
    arr.push_back(e);
  }
  return arr;
}

json verify_json(const VerificationReport& rep) {
  json r;
  r["hypotheses"] = hypotheses_json(rep.hypotheses);
  r["hypotheses_pass"] = rep.hypotheses_pass;
  r["computed"] = rep.computed;
  r["constant_id"] = rep.constant_id;
  r["constant_value"] = rep.constant_value;
  r["source_norms"] = rep.source_norms;
  r["symbol_norms"] = rep.symbol_norms;
  r["lhs"] = rep.lhs;
  r["rhs_core"] = rep.rhs_core;
  r["ratio"] = rep.ratio;
  r["flags"] = flags_json(rep.flags);
  return r;
}

json scan_json(const ScanResult& sr) {
  json r;
  r["family"] = to_string(sr.family);
  r["factors"] = sr.factors;
  json ratios = json::array();
  for (double v : sr.ratios) {
    if (std::isfinite(v))
      ratios.push_back(v);
    else
      ratios.push_back(nullptr);
  }
  r["ratios"] = ratios;
  r["base_ratio"] = sr.base_ratio;
  r["sup_ratio"] = sr.sup_ratio;
  r["drift"] = sr.drift;
  r["flags"] = flags_json(sr.flags);
  return r;
}

std::vector<Vec> commutator_sample_points(int dim, int count) {
  std::vector<Vec> pts;
  const auto dirs = probe_directions(dim);
  for (int i = 0; i < count; ++i) {
    const double r = std::exp2((i % 10) - 3);
    pts.push_back(dirs[static_cast<size_t>(i) % dirs.size()].scaled(r));
  }
  return pts;
}

}  // namespace

json run_norm_command(const Scenario& sc) {
  json j = report_header("norm", sc);
  if (sc.params.q.empty())
    throw std::invalid_argument("norm command: scenario has no theorem wiring");
  json sources = json::array();
  json symbols = json::array();
  VerificationReport rep = verify_theorem(sc, /*run_hypotheses=*/false);
  for (int i = 0; i < sc.op.arity; ++i) {
    json e;
    e["function"] = sc.op.inputs[static_cast<size_t>(i)].name();
    e["value"] = rep.source_norms[static_cast<size_t>(i)];
    sources.push_back(e);
  }
  for (int i = 0; i < static_cast<int>(sc.op.symbols.size()); ++i) {
    json e;
    e["function"] = sc.op.symbols[static_cast<size_t>(i)].name();
    e["value"] = rep.symbol_norms[static_cast<size_t>(i)];
    symbols.push_back(e);
  }
  j["source_norms"] = sources;
  j["symbol_norms"] = symbols;
  j["target_norm_of_output"] = rep.lhs;
  j["flags"] = flags_json(rep.flags);
  return j;
}

json run_apply_command(const Scenario& sc) {
  json j = report_header("apply", sc);
  const auto pts = sc.grids.x_samples.empty() ? commutator_sample_points(sc.op.dim, 5)
                                              : sc.grids.x_samples;
  json vals = json::array();
  Flags fl;
  for (const Vec& x : pts) {
    const auto r = apply(sc.op, x, sc.workers);
    json e;
    json coords = json::array();
    for (int i = 0; i < x.dim(); ++i) coords.push_back(x[i]);
    e["x"] = coords;
    e["value"] = r.value;
    merge_flags(fl, r.flags);
    vals.push_back(e);
  }
  j["values"] = vals;
  if (sc.special) {
    json specials = json::array();
    for (const Vec& x : pts) specials.push_back(special_apply(*sc.special, x));
    j["special_values"] = specials;
    std::vector<Vec> xs(pts.begin(), pts.end());
    j["reduction_max_difference"] = reduction_check(*sc.special, sc.grids.t_grid, xs, sc.workers);
  }
  j["flags"] = flags_json(fl);
  return j;
}

json run_constant_command(const Scenario& sc) {
  json j = report_header("constant", sc);
  if (sc.params.q.empty())
    throw std::invalid_argument("constant command: scenario has no theorem wiring");
  const auto nv = scenario_bound_constant(sc);
  j["constant_id"] = to_string(constant_for(sc.theorem));
  j["value"] = nv.value;
  j["flags"] = flags_json(nv.flags);
  return j;
}

json run_verify_command(const Scenario& sc) {
  json j = report_header("verify", sc);
  j["theorem"] = to_string(sc.theorem);
  j["report"] = verify_json(verify_theorem(sc));
  return j;
}

json run_scan_command(const Scenario& sc) {
  json j = report_header("scan", sc);
  j["theorem"] = to_string(sc.theorem);
  j["dilation"] = scan_json(ratio_scan(sc, ScanFamily::dilation));
  j["amplitude"] = scan_json(ratio_scan(sc, ScanFamily::amplitude));
  j["symbol"] = scan_json(ratio_scan(sc, ScanFamily::symbol));
  return j;
}

SuiteOutcome run_suite(const SuiteSpec& suite, int workers_override, uint64_t seed_override) {
  SuiteOutcome out;
  out.exact_invariants_pass = true;
  json scenarios = json::array();

  // global exact invariants: determinant bounds and dyadic bracketing
  {
    std::mt19937_64 rng(seed_override ? seed_override : 20240501ULL);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    bool det_ok = true;
    int produced = 0;
    while (produced < 100) {
      const int n = 2 + (produced % 2);
      SquareMatrix a(n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a.at(r, c) = u(rng) + (r == c ? 2.5 : 0.0);
      if (std::fabs(a.det()) < 0.1) continue;
      ++produced;
      if (!det_bounds_check(a).holds) det_ok = false;
    }
    bool theta_ok = true;
    for (double rho : {1.0, 2.0, 4.0, 1024.0, std::exp2(40), M_PI, std::sqrt(2.0), 1.5, 2.5}) {
      const int t = theta_index(rho);
      if (!(std::ldexp(rho, t) < 1.0 && std::ldexp(rho, t + 1) >= 1.0)) theta_ok = false;
    }
    json g;
    g["determinant_bounds_pass"] = det_ok;
    g["dyadic_bracketing_pass"] = theta_ok;
    out.report = json();
    out.report["schema_version"] = 1;
    out.report["command"] = "suite";
    out.report["global_invariants"] = g;
    out.exact_invariants_pass = out.exact_invariants_pass && det_ok && theta_ok;
  }

  for (const auto& path : suite.scenario_paths) {
    Scenario sc = load_scenario_file(path);
    if (workers_override > 0) sc.workers = workers_override;
    if (seed_override != 0) {
      sc.seed = seed_override;
      sc.grids.lip_pairs.seed = seed_override;
    }
    json entry;
    entry["scenario"] = sc.name;

    if (sc.special) {
      const auto pts = sc.grids.x_samples.empty() ? commutator_sample_points(sc.op.dim, 5)
                                                  : sc.grids.x_samples;
      std::vector<Vec> xs(pts.begin(), pts.end());
      entry["reduction_max_difference"] = reduction_check(*sc.special, sc.grids.t_grid, xs, sc.workers);
      scenarios.push_back(entry);
      continue;
    }
    if (sc.params.q.empty()) {
      scenarios.push_back(entry);
      continue;
    }

    entry["verify"] = verify_json(verify_theorem(sc));

    // exact invariant 1: ratio invariance under power-of-four scalings
    bool exact_ok = true;
    for (ScanFamily fam : {ScanFamily::amplitude, ScanFamily::symbol}) {
      const auto sr = ratio_scan(sc, fam);
      double worst = 0.0;
      for (double r : sr.ratios)
        if (std::isfinite(r)) worst = std::max(worst, std::fabs(r - sr.base_ratio));
      const bool ok = worst <= 1e-12 * std::max(1.0, sr.base_ratio);
      exact_ok = exact_ok && ok;
      json e = scan_json(sr);
      e["max_ratio_deviation"] = worst;
      e["exact_invariance_pass"] = ok;
      entry[to_string(fam) + "_scan"] = e;
    }

    // exact invariant 2: constant symbols kill the commutator
    {
      bool zero_ok = true;
      for (size_t i = 0; i < sc.op.symbols.size(); ++i) {
        Scenario flat = sc;
        flat.op.symbols[i] = TestFunction::constant(sc.op.dim, 3.0);
        for (const Vec& x : commutator_sample_points(sc.op.dim, 20))
          if (std::fabs(apply(flat.op, x, sc.workers).value) > 1e-12) zero_ok = false;
        const auto rep = verify_theorem(flat, /*run_hypotheses=*/false);
        if (rep.lhs != 0.0) zero_ok = false;
      }
      entry["commutator_vanishing_pass"] = zero_ok;
      exact_ok = exact_ok && zero_ok;
    }

    entry["exact_invariants_pass"] = exact_ok;
    out.exact_invariants_pass = out.exact_invariants_pass && exact_ok;
    scenarios.push_back(entry);
  }
  out.report["scenarios"] = scenarios;
  out.report["exact_invariants_pass"] = out.exact_invariants_pass;
  return out;
}

namespace {
void render_plain_rec(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      render_plain_rec(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& v : j) render_plain_rec(v, prefix + "[" + std::to_string(i++) + "]", os);
  } else {
    os << prefix << " = " << j.dump() << "\n";
  }
}
}  // namespace

std::string render_plain(const json& j) {
  std::ostringstream os;
  render_plain_rec(j, "", os);
  return os.str();
}

}  // namespace hausdorff
