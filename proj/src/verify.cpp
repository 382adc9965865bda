#include "hausdorff/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}
}  // namespace

std::string to_string(TheoremKind k) {
  switch (k) {
    case TheoremKind::morrey_herz_lipschitz: return "morrey_herz_lipschitz";
    case TheoremKind::herz_lipschitz: return "herz_lipschitz";
    case TheoremKind::lebesgue_lipschitz: return "lebesgue_lipschitz";
    case TheoremKind::morrey_herz_cmo: return "morrey_herz_cmo";
    case TheoremKind::herz_cmo: return "herz_cmo";
    case TheoremKind::central_morrey_lipschitz: return "central_morrey_lipschitz";
    case TheoremKind::central_morrey_cmo: return "central_morrey_cmo";
  }
  throw std::logic_error("unreachable");
}

TheoremKind theorem_from_string(const std::string& s) {
  for (auto k : {TheoremKind::morrey_herz_lipschitz, TheoremKind::herz_lipschitz,
                 TheoremKind::lebesgue_lipschitz, TheoremKind::morrey_herz_cmo,
                 TheoremKind::herz_cmo, TheoremKind::central_morrey_lipschitz,
                 TheoremKind::central_morrey_cmo})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown theorem kind: " + s);
}

BoundConstantId constant_for(TheoremKind k) {
  switch (k) {
    case TheoremKind::morrey_herz_lipschitz: return BoundConstantId::c1;
    case TheoremKind::herz_lipschitz: return BoundConstantId::c2;
    case TheoremKind::lebesgue_lipschitz: return BoundConstantId::c3;
    case TheoremKind::morrey_herz_cmo: return BoundConstantId::c4;
    case TheoremKind::herz_cmo: return BoundConstantId::c5;
    case TheoremKind::central_morrey_lipschitz: return BoundConstantId::c6;
    case TheoremKind::central_morrey_cmo: return BoundConstantId::c7;
  }
  throw std::logic_error("unreachable");
}

std::string to_string(ScanFamily f) {
  switch (f) {
    case ScanFamily::dilation: return "dilation";
    case ScanFamily::amplitude: return "amplitude";
    case ScanFamily::symbol: return "symbol";
  }
  throw std::logic_error("unreachable");
}

namespace {

bool is_cmo_kind(TheoremKind k) {
  return k == TheoremKind::morrey_herz_cmo || k == TheoremKind::herz_cmo ||
         k == TheoremKind::central_morrey_cmo;
}

bool is_central_morrey(TheoremKind k) {
  return k == TheoremKind::central_morrey_lipschitz || k == TheoremKind::central_morrey_cmo;
}

bool is_herz_scale(TheoremKind k) {
  return k == TheoremKind::morrey_herz_lipschitz || k == TheoremKind::herz_lipschitz ||
         k == TheoremKind::morrey_herz_cmo || k == TheoremKind::herz_cmo;
}

double effective_zeta(const Scenario& sc) {
  return is_central_morrey(sc.theorem) ? 1.0 : sc.params.zeta;
}

PowerWeight weight_from(const ExponentFunction& gamma_fn) {
  if (gamma_fn.is_constant()) return PowerWeight::constant_power(gamma_fn.constant_value());
  return PowerWeight::variable_power(gamma_fn);
}

void check_sizes(const Scenario& sc) {
  const size_t m = static_cast<size_t>(sc.op.arity);
  const auto& p = sc.params;
  const bool central = is_central_morrey(sc.theorem);
  if (p.gamma.size() != m || p.q.size() != m || p.r.size() != m)
    throw std::invalid_argument("scenario: gamma/q/r lists must have length arity");
  if (!central && (p.lambda.size() != m || p.alpha.size() != m))
    throw std::invalid_argument("scenario: lambda/alpha lists must have length arity");
  if (central && (p.lambda.size() != m || p.alpha_weights.size() != m))
    throw std::invalid_argument("scenario: lambda/alpha_weights lists must have length arity");
  if (!is_cmo_kind(sc.theorem) && p.beta.size() != m)
    throw std::invalid_argument("scenario: beta list must have length arity");
  if (!sc.grids.x_grid || !sc.grids.t_grid)
    throw std::invalid_argument("scenario: grids missing");
}

std::vector<Vec> default_t_samples(const Scenario& sc) {
  if (!sc.grids.t_samples.empty()) return sc.grids.t_samples;
  const int n = sc.op.dim;
  const double inner = sc.op.kernel.support_inner();
  const double outer = std::min(sc.op.kernel.support_outer(),
                                std::ldexp(1.0, sc.grids.t_grid->k_max()));
  std::vector<Vec> ts;
  Vec dir(n);
  for (int i = 0; i < n; ++i) dir[i] = 1.0 / std::sqrt(static_cast<double>(n));
  for (double frac : {0.25, 0.5, 0.75})
    ts.push_back(dir.scaled(inner + frac * (outer - inner)));
  return ts;
}

ConstantInputs build_constant_inputs(const Scenario& sc) {
  ConstantInputs in;
  in.kernel = sc.op.kernel;
  in.families = sc.op.families;
  in.p_out = sc.params.p_out;
  in.workers = sc.workers;
  const int m = sc.op.arity;
  const int n = sc.op.dim;
  const bool central = is_central_morrey(sc.theorem);
  const bool herz_type = is_herz_scale(sc.theorem);
  for (int i = 0; i < m; ++i) {
    FactorParams fp;
    fp.q = sc.params.q[static_cast<size_t>(i)];
    fp.zeta = effective_zeta(sc);
    if (central) {
      fp.gamma = sc.params.alpha_weights[static_cast<size_t>(i)];
      fp.alpha = ExponentFunction::constant(n, sc.params.alpha_weights[static_cast<size_t>(i)],
                                            ValueClass::real_class);
      fp.lambda = 0.0;
    } else {
      fp.gamma = sc.params.gamma[static_cast<size_t>(i)];
      fp.alpha = sc.params.alpha[static_cast<size_t>(i)];
      // the Herz-scale constants with lambda use lambda_i; the lambda = 0
      // variants use the phi factor at 0
      const bool lambda_zero = sc.theorem == TheoremKind::herz_lipschitz ||
                               sc.theorem == TheoremKind::herz_cmo ||
                               sc.theorem == TheoremKind::lebesgue_lipschitz;
      fp.lambda = lambda_zero ? 0.0 : sc.params.lambda[static_cast<size_t>(i)];
    }
    fp.beta = is_cmo_kind(sc.theorem) ? 1.0 : sc.params.beta[static_cast<size_t>(i)];
    const auto& r = sc.params.r[static_cast<size_t>(i)];
    if (r.is_constant()) fp.r = r.constant_value();
    in.params.push_back(std::move(fp));
    if (central) {
      const auto qinf = sc.params.q[static_cast<size_t>(i)].at_infinity();
      if (!qinf) throw std::invalid_argument("bound constant: q_i needs a limit at infinity");
      in.power_exponents.push_back((n + sc.params.gamma[static_cast<size_t>(i)]) *
                                   (1.0 / *qinf + sc.params.lambda[static_cast<size_t>(i)]));
    }
  }
  (void)herz_type;
  return in;
}

struct Targets {
  CompositeExponents comp;
  ExponentFunction target_q;
  PowerWeight target_weight = PowerWeight::unit();
};

Targets build_targets(const Scenario& sc) {
  Targets tg;
  const bool central = is_central_morrey(sc.theorem);
  ComposeInputs ci;
  ci.n = sc.op.dim;
  ci.q = sc.params.q;
  ci.r = sc.params.r;
  ci.gamma = sc.params.gamma;
  if (central) {
    const size_t m = sc.params.q.size();
    ci.lambda = sc.params.lambda;
    ci.beta.assign(m, 0.0);
    for (size_t i = 0; i < m; ++i)
      ci.alpha.push_back(ExponentFunction::constant(
          sc.op.dim, sc.params.alpha_weights[i], ValueClass::real_class));
    // central Morrey composition: the inner weight power is
    // alpha = sum alpha_i + sum alpha_i / r_i
    ci.gamma = sc.params.alpha_weights;
  } else {
    ci.lambda = sc.params.lambda;
    ci.beta = is_cmo_kind(sc.theorem) ? std::vector<double>(sc.params.q.size(), 0.0)
                                      : sc.params.beta;
    ci.alpha = sc.params.alpha;
  }
  tg.comp = compose_theorem_exponents(ci);
  tg.target_q = compose_target_exponent(effective_zeta(sc), sc.params.q, sc.params.r);
  if (central) {
    tg.target_weight = PowerWeight::constant_power(sc.params.gamma_out);
  } else {
    // rebuild gamma(.) from the true gamma_i list (ci.gamma was repurposed
    // above only in the central branch)
    tg.target_weight = weight_from(tg.comp.gamma_fn);
  }
  return tg;
}

// inner weight power for central Morrey targets: sum alpha_i (1 + 1/r_i)
double central_inner_power(const Scenario& sc) {
  double a = 0.0;
  for (size_t i = 0; i < sc.params.alpha_weights.size(); ++i) {
    if (!sc.params.r[i].is_constant())
      throw std::invalid_argument("central Morrey scenario: r_i must be constant");
    a += sc.params.alpha_weights[i] * (1.0 + 1.0 / sc.params.r[i].constant_value());
  }
  return a;
}

}  // namespace

std::vector<HypothesisResult> check_hypotheses(const Scenario& sc) {
  check_sizes(sc);
  sc.op.validate();
  std::vector<HypothesisResult> out;
  const auto add = [&](const std::string& name, bool pass, bool blocking,
                       const std::string& detail) {
    out.push_back(HypothesisResult{name, pass, blocking, detail});
  };
  const int m = sc.op.arity;
  const int n = sc.op.dim;
  const double zeta = effective_zeta(sc);
  const auto t_samples = default_t_samples(sc);
  const bool central = is_central_morrey(sc.theorem);
  const bool cmo = is_cmo_kind(sc.theorem);
  const bool herz_type = is_herz_scale(sc.theorem);

  // composition of the target exponents must stay in the exponent class
  bool composed_ok = true;
  std::string compose_detail = "ok";
  try {
    build_targets(sc);
  } catch (const std::exception& e) {
    composed_ok = false;
    compose_detail = e.what();
  }
  add("compose_valid", composed_ok, true, compose_detail);

  // (exponent domination) q_i(A_i^{-1}(t) x) <= zeta q_i(x) on sampled (t, x)
  {
    bool pass = true;
    std::string detail = "holds on sampled (t,x)";
    for (const Vec& t : t_samples) {
      for (int i = 0; i < m && pass; ++i) {
        SquareMatrix inv(1);
        try {
          inv = sc.op.families[static_cast<size_t>(i)].eval(t).inverse();
        } catch (const std::exception& e) {
          pass = false;
          detail = e.what();
          break;
        }
        const auto& q = sc.params.q[static_cast<size_t>(i)];
        for (const Vec& dir : probe_directions(n)) {
          for (int j = -10; j <= 10 && pass; j += 2) {
            const Vec x = dir.scaled(std::exp2(j));
            if (q(inv.apply(x)) > zeta * q(x) + 1e-9) {
              pass = false;
              detail = "violated at t=" + t.str() + ", x=" + x.str();
            }
          }
          if (!pass) break;
        }
      }
      if (!pass) break;
    }
    add("dk_nhung", pass, true, detail);
  }

  // finiteness of ||1|| in the transported exponent
  {
    bool pass = true;
    std::string detail;
    for (const Vec& t : t_samples) {
      for (int i = 0; i < m; ++i) {
        try {
          const auto inv = sc.op.families[static_cast<size_t>(i)].eval(t).inverse();
          const auto th = theta_exponent(sc.params.q[static_cast<size_t>(i)], inv, zeta);
          if (th.essentially_infinite()) {
            detail = "theta == inf, ||1|| = 1 exactly";
          } else {
            LuxemburgOptions lopt;
            lopt.tail = TailPolicy::restricted;
            const auto nv = luxemburg_norm(TestFunction::constant(n, 1.0), th,
                                           PowerWeight::unit(), *sc.grids.x_grid, lopt);
            detail = "grid-annulus value " + fmt(nv.value) + " (DOMAIN_TRUNCATED)";
            if (!std::isfinite(nv.value)) pass = false;
          }
        } catch (const HypothesisViolation& e) {
          pass = false;
          detail = e.what();
        }
      }
    }
    add("one_norm_theta_finite", pass, false, detail);
  }

  if (herz_type) {
    bool pass = true;
    std::string detail;
    for (int i = 0; i < m; ++i) {
      const auto& a = sc.params.alpha[static_cast<size_t>(i)];
      if (!a.at_infinity()) { pass = false; detail = "alpha_" + std::to_string(i) + " has no limit"; break; }
      const double d = a.at_origin() - *a.at_infinity();
      if (d < -1e-12) { pass = false; detail = "alpha(0) - alpha_inf = " + fmt(d); }
    }
    add("dk_alpha", pass, false, detail.empty() ? "alpha_i(0) >= alpha_i_inf" : detail);
  }

  if (sc.theorem == TheoremKind::herz_lipschitz || sc.theorem == TheoremKind::herz_cmo) {
    bool pass = true;
    for (int i = 0; i < m; ++i) {
      const auto& a = sc.params.alpha[static_cast<size_t>(i)];
      if (!a.at_infinity() || std::fabs(a.at_origin() - *a.at_infinity()) > 1e-12) pass = false;
      if (sc.params.lambda[static_cast<size_t>(i)] != 0.0) pass = false;
    }
    add("lambda_zero_alpha_constant", pass, false, "lambda_i = 0 and alpha_i(0) = alpha_i_inf");
    double inv_sum = 0.0;
    for (double pi : sc.params.p_i) inv_sum += 1.0 / pi;
    const bool pip = std::fabs(inv_sum - 1.0 / sc.params.p_out) <= 1e-12;
    add("dk_pip", pip, false, "sum 1/p_i = " + fmt(inv_sum) + ", 1/p = " + fmt(1.0 / sc.params.p_out));
    bool prange = sc.params.p_out >= 1.0;
    for (double pi : sc.params.p_i) prange = prange && pi >= 1.0 && std::isfinite(pi);
    add("p_range", prange, false, "p, p_i in [1, inf)");
  }

  if (sc.theorem == TheoremKind::morrey_herz_lipschitz ||
      sc.theorem == TheoremKind::morrey_herz_cmo) {
    bool pass = true;
    for (double l : sc.params.lambda) pass = pass && l > 0.0;
    add("lambda_positive", pass, false, "lambda_i > 0");
  }

  if (sc.theorem == TheoremKind::morrey_herz_lipschitz ||
      sc.theorem == TheoremKind::herz_lipschitz) {
    // three alternative sign regimes for gamma_i and the r_i endpoints
    bool alt1 = true, alt2 = true, alt3 = true;
    for (int i = 0; i < m; ++i) {
      const double g = sc.params.gamma[static_cast<size_t>(i)];
      const auto& r = sc.params.r[static_cast<size_t>(i)];
      const double r0 = r.at_origin();
      const double rinf = r.at_infinity() ? *r.at_infinity() : kInf;
      alt1 = alt1 && g > -n && std::fabs(r0 - r.maximum()) <= 1e-12 &&
             std::fabs(rinf - r.minimum()) <= 1e-12;
      alt2 = alt2 && g < -n && std::fabs(r0 - r.minimum()) <= 1e-12 &&
             std::fabs(rinf - r.maximum()) <= 1e-12;
      alt3 = alt3 && g == -static_cast<double>(n);
    }
    const bool pass = alt1 || alt2 || alt3;
    std::string which = alt1 ? "gamma_i > -n with r(0) = r_+, r_inf = r_-"
                      : alt2 ? "gamma_i < -n with r(0) = r_-, r_inf = r_+"
                      : alt3 ? "gamma_i = -n" : "none of the three alternatives";
    add("dk_gamma_ri", pass, false, which);
  }

  if (sc.theorem == TheoremKind::morrey_herz_cmo || sc.theorem == TheoremKind::herz_cmo) {
    bool pass = true;
    for (double g : sc.params.gamma) pass = pass && g > -n;
    add("gamma_gt_minus_n", pass, false, "gamma_i > -n");
    bool rconst = true;
    for (const auto& r : sc.params.r) rconst = rconst && r.is_constant();
    add("h1_r_constant", rconst, false, "alpha** needs constant r_i");
  }

  if (cmo || sc.theorem == TheoremKind::central_morrey_cmo) {
    bool pass = true;
    std::string detail = "A_i(t) = s_i(t) a_i(t)";
    for (const auto& fam : sc.op.families)
      if (!fam.has_scalar_rotation()) { pass = false; detail = fam.name() + " lacks s_i(t)"; }
    add("h2_scalar_rotation", pass, false, detail);
  }

  if (sc.theorem == TheoremKind::lebesgue_lipschitz) {
    bool pass = true;
    for (double g : sc.params.gamma) pass = pass && g < 0.0;
    add("gamma_negative", pass, false, "gamma_i < 0");
    // || |x|^{beta_i + gamma_i / r_i(.)} ||_{L^{r_i(.)}_{w_i}} < infinity
    bool finite = true;
    std::string detail;
    for (int i = 0; i < m; ++i) {
      const auto& r = sc.params.r[static_cast<size_t>(i)];
      const double g = sc.params.gamma[static_cast<size_t>(i)];
      const double b = sc.params.beta[static_cast<size_t>(i)];
      ExponentFunction rr = r;
      const TestFunction power_fn(
          n, [b, g, rr](const Vec& x) { return std::pow(x.norm(), b + g / rr(x)); }, kInf, true,
          "power_factor");
      LuxemburgOptions lopt;
      lopt.tail = TailPolicy::full;
      const auto nv = luxemburg_norm(power_fn, r, PowerWeight::constant_power(g),
                                     *sc.grids.x_grid, lopt);
      detail += (i ? "; " : "") + fmt(nv.value);
      if (!std::isfinite(nv.value)) finite = false;
    }
    add("dk_x_beta", finite, false, "||.|^{beta_i + gamma_i/r_i(.)}||: " + detail);
  }

  if (herz_type || sc.theorem == TheoremKind::lebesgue_lipschitz) {
    bool qb = true;
    std::string detail;
    for (const auto& q : sc.params.q) qb = qb && q.minimum() > 1.0 && std::isfinite(q.maximum());
    try {
      const auto tq = compose_target_exponent(zeta, sc.params.q, sc.params.r);
      if (!(tq.minimum() > 1.0 && std::isfinite(tq.maximum()))) qb = false;
      detail = "target q in [" + fmt(tq.minimum()) + ", " + fmt(tq.maximum()) + "]";
    } catch (const std::exception& e) {
      qb = false;
      detail = e.what();
    }
    add("q_in_Pb", qb, false, detail);
    bool rinf = true;
    for (const auto& r : sc.params.r) rinf = rinf && r.at_infinity().has_value();
    add("r_in_Pinfty", rinf, false, "r_i has a limit at infinity");
  }

  if (central) {
    bool pinf = true;
    for (const auto& q : sc.params.q) pinf = pinf && q.at_infinity().has_value();
    add("q_in_Pinfty", pinf, false, "q_i has a limit at infinity");
    bool rconst = true;
    for (const auto& r : sc.params.r) rconst = rconst && r.is_constant();
    add("r_constant", rconst, false, "r_i constant");
    bool lrange = true;
    for (int i = 0; i < m; ++i) {
      const auto qinf = sc.params.q[static_cast<size_t>(i)].at_infinity();
      const double l = sc.params.lambda[static_cast<size_t>(i)];
      lrange = lrange && qinf && l > -1.0 / *qinf && l < 0.0;
    }
    add("lambda_i_range", lrange, false, "lambda_i in (-1/q_i_inf, 0)");
    bool arange = true;
    for (int i = 0; i < m; ++i)
      arange = arange && sc.params.alpha_weights[static_cast<size_t>(i)] > -n &&
               sc.params.gamma[static_cast<size_t>(i)] > -n;
    add("alpha_gamma_range", arange, false, "alpha_i, gamma_i in (-n, inf)");

    // scaling balance linking the weight powers across source and target
    double lhs = central_inner_power(sc);
    const auto qinf_t = compose_target_exponent(1.0, sc.params.q, sc.params.r).at_infinity();
    if (!qinf_t) {
      add(sc.theorem == TheoremKind::central_morrey_cmo ? "dk_lambda1" : "dk_lambda", false,
          false, "target q has no limit at infinity");
    } else {
      lhs -= sc.params.gamma_out / *qinf_t;
      for (int i = 0; i < m; ++i) {
        const auto qinf = sc.params.q[static_cast<size_t>(i)].at_infinity();
        lhs += (sc.params.gamma[static_cast<size_t>(i)] + n) * sc.params.lambda[static_cast<size_t>(i)] -
               sc.params.alpha_weights[static_cast<size_t>(i)] +
               sc.params.gamma[static_cast<size_t>(i)] / *qinf;
      }
      if (sc.theorem == TheoremKind::central_morrey_lipschitz)
        for (double b : sc.params.beta) lhs += b;
      const double rhs = (sc.params.gamma_out + n) * sc.params.lambda_out;
      const bool pass = std::fabs(lhs - rhs) <= 1e-9;
      add(sc.theorem == TheoremKind::central_morrey_cmo ? "dk_lambda1" : "dk_lambda", pass, false,
          fmt(lhs) + " vs " + fmt(rhs));
    }
  }

  if (!cmo) {
    bool brange = true;
    for (double b : sc.params.beta) brange = brange && b > 0.0 && b <= 1.0;
    add("beta_range", brange, false, "beta_i in (0,1]");
    bool lip = true;
    std::string detail;
    for (int i = 0; i < m; ++i) {
      auto ls = lipschitz_seminorm(sc.op.symbols[static_cast<size_t>(i)],
                                   sc.params.beta[static_cast<size_t>(i)], sc.grids.lip_pairs);
      if (ls.flags.count(flag::kDeclaredInconsistent)) lip = false;
      detail += (i ? "; " : "") + fmt(ls.reconciled);
    }
    add("symbols_lipschitz", lip, false, "reconciled seminorms: " + detail);
  } else {
    bool fin = true;
    std::string detail;
    for (int i = 0; i < m; ++i) {
      const auto& r = sc.params.r[static_cast<size_t>(i)];
      if (!r.is_constant()) { fin = false; detail = "r_i not constant"; break; }
      const double wpow = sc.theorem == TheoremKind::central_morrey_cmo
                              ? sc.params.alpha_weights[static_cast<size_t>(i)]
                              : sc.params.gamma[static_cast<size_t>(i)];
      auto nv = cmo_norm(sc.op.symbols[static_cast<size_t>(i)], r.constant_value(),
                         PowerWeight::constant_power(wpow), *sc.grids.x_grid, sc.grids.radii,
                         sc.workers);
      detail += (i ? "; " : "") + fmt(nv.value);
      if (!std::isfinite(nv.value)) fin = false;
    }
    add("symbols_cmo_finite", fin, false, "central oscillation norms: " + detail);
  }

  if (herz_type && composed_ok) {
    // the target dyadic weight must be bounded with controlled moduli;
    // reported, no threshold imposed
    const auto tg = build_targets(sc);
    const auto& a = sc.theorem == TheoremKind::morrey_herz_cmo || sc.theorem == TheoremKind::herz_cmo
                        ? *tg.comp.alpha_star_star
                        : tg.comp.alpha_star;
    const auto radii = make_log_radii(-20, 20, 2);
    const auto rep = classify_exponent(a, radii);
    add("alpha_log_holder", true, false,
        "modulus estimates: origin " + fmt(rep.c0_log_estimate) + ", infinity " +
            fmt(rep.cinf_log_estimate));
  }

  // finiteness of the theorem's kernel integral
  {
    bool pass = true;
    std::string detail;
    try {
      const auto in = build_constant_inputs(sc);
      const auto nv = bound_constant(constant_for(sc.theorem), in, *sc.grids.t_grid,
                                     *sc.grids.x_grid);
      pass = std::isfinite(nv.value);
      detail = to_string(constant_for(sc.theorem)) + " = " + fmt(nv.value);
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    add("constant_finite", pass, true, detail);
  }
  return out;
}

namespace {

NormValue source_norm(const Scenario& sc, int i) {
  const auto& f = sc.op.inputs[static_cast<size_t>(i)];
  const double zeta = effective_zeta(sc);
  const auto q_scaled = scaled_exponent(sc.params.q[static_cast<size_t>(i)], zeta);
  const PowerWeight w = PowerWeight::constant_power(sc.params.gamma[static_cast<size_t>(i)]);
  switch (sc.theorem) {
    case TheoremKind::morrey_herz_lipschitz:
    case TheoremKind::morrey_herz_cmo:
      return herz_morrey_norm(f, sc.params.alpha[static_cast<size_t>(i)],
                              sc.params.lambda[static_cast<size_t>(i)],
                              sc.params.p_i[static_cast<size_t>(i)], q_scaled, w,
                              *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::herz_lipschitz:
    case TheoremKind::herz_cmo:
      return herz_morrey_norm(f, sc.params.alpha[static_cast<size_t>(i)], 0.0,
                              sc.params.p_i[static_cast<size_t>(i)], q_scaled, w,
                              *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::lebesgue_lipschitz: {
      LuxemburgOptions lopt;
      lopt.workers = sc.workers;
      return luxemburg_norm(f, q_scaled, w, *sc.grids.x_grid, lopt);
    }
    case TheoremKind::central_morrey_lipschitz:
    case TheoremKind::central_morrey_cmo: {
      const PowerWeight inner = PowerWeight::constant_power(
          sc.params.alpha_weights[static_cast<size_t>(i)]);
      return central_morrey_norm(f, sc.params.q[static_cast<size_t>(i)],
                                 sc.params.lambda[static_cast<size_t>(i)], w, inner,
                                 *sc.grids.x_grid, sc.grids.radii, sc.workers);
    }
  }
  throw std::logic_error("unreachable");
}

NormValue symbol_norm(const Scenario& sc, int i) {
  const auto& b = sc.op.symbols[static_cast<size_t>(i)];
  if (!is_cmo_kind(sc.theorem)) {
    auto ls = lipschitz_seminorm(b, sc.params.beta[static_cast<size_t>(i)], sc.grids.lip_pairs);
    NormValue nv;
    nv.value = ls.reconciled;
    nv.flags = ls.flags;
    return nv;
  }
  const double r = sc.params.r[static_cast<size_t>(i)].constant_value();
  const double wpow = sc.theorem == TheoremKind::central_morrey_cmo
                          ? sc.params.alpha_weights[static_cast<size_t>(i)]
                          : sc.params.gamma[static_cast<size_t>(i)];
  return cmo_norm(b, r, PowerWeight::constant_power(wpow), *sc.grids.x_grid, sc.grids.radii,
                  sc.workers);
}

NormValue target_norm(const Scenario& sc, const Targets& tg, const TestFunction& h) {
  switch (sc.theorem) {
    case TheoremKind::morrey_herz_lipschitz:
      return herz_morrey_norm(h, tg.comp.alpha_star, tg.comp.lambda, sc.params.p_out,
                              tg.target_q, tg.target_weight, *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::herz_lipschitz:
      return herz_morrey_norm(h, tg.comp.alpha_star, 0.0, sc.params.p_out, tg.target_q,
                              tg.target_weight, *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::morrey_herz_cmo:
      return herz_morrey_norm(h, *tg.comp.alpha_star_star, tg.comp.lambda, sc.params.p_out,
                              tg.target_q, tg.target_weight, *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::herz_cmo:
      return herz_morrey_norm(h, *tg.comp.alpha_star_star, 0.0, sc.params.p_out, tg.target_q,
                              tg.target_weight, *sc.grids.x_grid, sc.grids.herz);
    case TheoremKind::lebesgue_lipschitz: {
      LuxemburgOptions lopt;
      lopt.workers = sc.workers;
      return luxemburg_norm(h, tg.target_q, tg.target_weight, *sc.grids.x_grid, lopt);
    }
    case TheoremKind::central_morrey_lipschitz:
    case TheoremKind::central_morrey_cmo: {
      const PowerWeight inner = PowerWeight::constant_power(central_inner_power(sc));
      return central_morrey_norm(h, tg.target_q, sc.params.lambda_out, tg.target_weight, inner,
                                 *sc.grids.x_grid, sc.grids.radii, sc.workers);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

NormValue scenario_bound_constant(const Scenario& sc) {
  check_sizes(sc);
  sc.op.validate();
  const auto in = build_constant_inputs(sc);
  return bound_constant(constant_for(sc.theorem), in, *sc.grids.t_grid, *sc.grids.x_grid);
}

VerificationReport verify_theorem(const Scenario& sc, bool run_hypotheses) {
  const auto t0 = std::chrono::steady_clock::now();
  check_sizes(sc);
  sc.op.validate();
  VerificationReport rep;
  rep.constant_id = to_string(constant_for(sc.theorem));
  if (run_hypotheses) {
    rep.hypotheses = check_hypotheses(sc);
    rep.hypotheses_pass =
        std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                    [](const HypothesisResult& h) { return h.pass; });
    if (!rep.hypotheses_pass) rep.flags.insert(flag::kHypothesisFail);
    const bool blocked =
        std::any_of(rep.hypotheses.begin(), rep.hypotheses.end(),
                    [](const HypothesisResult& h) { return h.blocking && !h.pass; });
    if (blocked) {
      rep.computed = false;
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return rep;
    }
  }

  const auto targets = build_targets(sc);
  const auto cinput = build_constant_inputs(sc);
  const auto cval = bound_constant(constant_for(sc.theorem), cinput, *sc.grids.t_grid,
                                   *sc.grids.x_grid);
  rep.constant_value = cval.value;
  merge_flags(rep.flags, cval.flags);

  for (int i = 0; i < sc.op.arity; ++i) {
    const auto nv = source_norm(sc, i);
    rep.source_norms.push_back(nv.value);
    merge_flags(rep.flags, nv.flags);
  }
  for (int i = 0; i < sc.op.arity; ++i) {
    const auto nv = symbol_norm(sc, i);
    rep.symbol_norms.push_back(nv.value);
    merge_flags(rep.flags, nv.flags);
  }

  auto out = operator_output(sc.op, sc.workers);
  const auto lhs = target_norm(sc, targets, out.fn);
  rep.lhs = lhs.value;
  merge_flags(rep.flags, lhs.flags);
  merge_flags(rep.flags, *out.flags_seen);

  rep.rhs_core = rep.constant_value;
  for (double v : rep.source_norms) rep.rhs_core *= v;
  for (double v : rep.symbol_norms) rep.rhs_core *= v;

  if (rep.lhs == 0.0) {
    rep.ratio = 0.0;
  } else if (rep.rhs_core == 0.0) {
    rep.ratio = kInf;
    rep.flags.insert(flag::kInequalityDegenerate);
  } else {
    rep.ratio = rep.lhs / rep.rhs_core;
  }
  rep.computed = true;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ScanResult ratio_scan(const Scenario& sc, ScanFamily family) {
  ScanResult res;
  res.family = family;
  const auto base = verify_theorem(sc);
  if (!base.computed || !std::isfinite(base.ratio))
    throw std::invalid_argument("ratio_scan: base scenario does not verify to a finite ratio");
  res.base_ratio = base.ratio;
  merge_flags(res.flags, base.flags);

  std::vector<double> factors;
  if (family == ScanFamily::dilation) {
    for (int j = sc.scan.dilation_log2_lo; j <= sc.scan.dilation_log2_hi;
         j += std::max(1, sc.scan.dilation_step))
      factors.push_back(std::exp2(j));
  } else if (family == ScanFamily::amplitude) {
    for (int j = sc.scan.amplitude_log4_lo; j <= sc.scan.amplitude_log4_hi; ++j)
      factors.push_back(std::exp2(2 * j));
  } else {
    for (int j = sc.scan.symbol_log4_lo; j <= sc.scan.symbol_log4_hi; ++j)
      factors.push_back(std::exp2(2 * j));
  }

  std::vector<double> logs;
  for (double c : factors) {
    Scenario member = sc;
    if (family == ScanFamily::dilation) {
      for (auto& f : member.op.inputs) f = TestFunction::dilated(f, c);
    } else if (family == ScanFamily::amplitude) {
      for (auto& f : member.op.inputs) f = TestFunction::scaled(f, c);
    } else {
      for (auto& b : member.op.symbols) b = TestFunction::scaled(b, c);
    }
    double ratio = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto r = verify_theorem(member, /*run_hypotheses=*/false);
      if (std::isfinite(r.ratio)) {
        ratio = r.ratio;
      } else {
        res.flags.insert(flag::kMemberExcluded);
        merge_flags(res.flags, r.flags);
      }
    } catch (const std::exception&) {
      res.flags.insert(flag::kMemberExcluded);
    }
    res.factors.push_back(c);
    res.ratios.push_back(ratio);
    if (std::isfinite(ratio) && ratio > 0.0) logs.push_back(std::log(ratio));
  }
  double sup = 0.0;
  for (double r : res.ratios)
    if (std::isfinite(r)) sup = std::max(sup, r);
  res.sup_ratio = sup;
  if (!logs.empty()) {
    std::vector<double> sorted = logs;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    double drift = 0.0;
    for (double l : logs) drift = std::max(drift, std::fabs(l - median));
    res.drift = drift;
  }
  return res;
}

std::vector<InequalityWitness> proof_inequality_check(ProofInequality id, const Scenario& sc,
                                                      int k, int family_index) {
  check_sizes(sc);
  sc.op.validate();
  const int i = family_index;
  const auto& fam = sc.op.families.at(static_cast<size_t>(i));
  const auto& grid = *sc.grids.x_grid;
  const double zeta = effective_zeta(sc);
  std::vector<InequalityWitness> out;

  for (const Vec& t : default_t_samples(sc)) {
    InequalityWitness w;
    w.k = k;
    w.t_coord = t[0];
    if (id == ProofInequality::shell_transport) {
      const SquareMatrix a = fam.eval(t);
      const int ell = dyadic_index(a.frobenius());
      const int theta = theta_star(sc.op.families, t);
      FactorParams fp;
      fp.q = sc.params.q[static_cast<size_t>(i)];
      fp.gamma = sc.params.gamma[static_cast<size_t>(i)];
      fp.alpha = is_central_morrey(sc.theorem)
                     ? ExponentFunction::constant(sc.op.dim, 0.0, ValueClass::real_class)
                     : sc.params.alpha[static_cast<size_t>(i)];
      fp.beta = 1.0;
      fp.zeta = zeta;
      const auto fb = structural_factors(fam, fp, t, grid, theta);
      merge_flags(w.flags, fb.flags);

      const auto& f = sc.op.inputs[static_cast<size_t>(i)];
      const PowerWeight wi = PowerWeight::constant_power(sc.params.gamma[static_cast<size_t>(i)]);
      const TestFunction transported(
          sc.op.dim, [&f, a](const Vec& x) { return f(a.apply(x)); },
          std::numeric_limits<double>::infinity(), false, "transported");
      LuxemburgOptions lopt;
      lopt.k_lo = k;
      lopt.k_hi = k;
      lopt.tail = TailPolicy::restricted;
      w.lhs = luxemburg_norm(transported, sc.params.q[static_cast<size_t>(i)], wi, grid, lopt).value;

      const auto q_scaled = scaled_exponent(sc.params.q[static_cast<size_t>(i)], zeta);
      double sum = 0.0;
      for (int r = theta - 1; r <= 0; ++r) {
        LuxemburgOptions sopt;
        sopt.k_lo = k + ell + r;
        sopt.k_hi = k + ell + r;
        sopt.tail = TailPolicy::restricted;
        sum += luxemburg_norm(f, q_scaled, wi, grid, sopt).value;
      }
      w.rhs_without_constant = fb.c * fb.one_norm_theta * sum;
    } else {
      if (!fam.has_scalar_rotation())
        throw std::invalid_argument("cmo_gap: family lacks scalar-rotation structure");
      const auto& r_exp = sc.params.r[static_cast<size_t>(i)];
      if (!r_exp.is_constant())
        throw std::invalid_argument("cmo_gap: needs constant r_i");
      const double r = r_exp.constant_value();
      const double g = is_central_morrey(sc.theorem)
                           ? sc.params.alpha_weights[static_cast<size_t>(i)]
                           : sc.params.gamma[static_cast<size_t>(i)];
      const PowerWeight wi = PowerWeight::constant_power(g);
      const auto& b = sc.op.symbols[static_cast<size_t>(i)];
      const SquareMatrix a = fam.eval(t);
      const int n = sc.op.dim;

      const auto parts = grid.shell_sums(
          [&](const Vec& x) {
            const double gap = b(x) - b(a.apply(x));
            return pow_outer(std::fabs(gap), r) * wi(x);
          },
          grid.k_min(), std::min(k, grid.k_max()), sc.workers);
      double acc = 0.0;
      for (double s : parts) acc += s;
      w.lhs = pow_outer(acc, 1.0 / r);

      FactorParams fp;
      fp.q = sc.params.q[static_cast<size_t>(i)];
      fp.gamma = g;
      fp.alpha = ExponentFunction::constant(n, 0.0, ValueClass::real_class);
      fp.zeta = zeta;
      const auto fb = structural_factors(fam, fp, t, grid);
      merge_flags(w.flags, fb.flags);
      const double s = std::fabs(fam.scalar_part(t));
      const auto cmo = cmo_norm(b, r, wi, grid, sc.grids.radii, sc.workers);
      merge_flags(w.flags, cmo.flags);
      w.rhs_without_constant =
          std::exp2(k * (g + n) / r) *
          (1.0 + std::pow(fb.psi, 1.0 / r) * std::pow(s, (g + n) / r) + *fb.varphi) * cmo.value;
    }
    if (w.lhs == 0.0) {
      w.empirical_constant = 0.0;
    } else if (w.rhs_without_constant == 0.0) {
      w.empirical_constant = kInf;
      w.flags.insert(flag::kInequalityDegenerate);
    } else {
      w.empirical_constant = w.lhs / w.rhs_without_constant;
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace hausdorff
