#include "hausdorff/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool full_range(const LuxemburgOptions& opt, const QuadratureGrid& grid) {
  return opt.k_lo <= grid.k_min() && opt.k_hi >= grid.k_max();
}
}  // namespace

NormValue luxemburg_norm(const TestFunction& f, const ExponentFunction& p, const PowerWeight& w,
                         const QuadratureGrid& grid, const LuxemburgOptions& opt) {
  if (p.value_class() != ValueClass::exponent_class)
    throw std::invalid_argument("luxemburg_norm: p must be exponent-class");
  NormValue out;
  const ModularOptions mopt{opt.k_lo, opt.k_hi, opt.workers};
  const auto F = [&](double eta) { return modular(f, p, w, eta, grid, mopt); };

  const double limit = std::ldexp(1.0, opt.bracket_log2_limit);
  double lo = 1.0, hi = 1.0;
  double m1 = F(1.0);
  if (m1 <= 1.0) {
    // norm <= 1: walk the power-of-4 lattice down until the modular crosses 1
    hi = 1.0;
    lo = 0.25;
    double ml = F(lo);
    while (ml <= 1.0) {
      if (lo <= 1.0 / limit) {
        // never crosses: f vanishes on the grid (or is numerically negligible)
        out.value = 0.0;
        return out;
      }
      hi = lo;
      lo *= 0.25;
      ml = F(lo);
    }
  } else {
    lo = 1.0;
    hi = 4.0;
    double mh = F(hi);
    while (mh > 1.0) {
      if (hi >= limit) {
        out.value = kInf;
        out.flags.insert(flag::kNormInfinite);
        return out;
      }
      lo = hi;
      hi *= 4.0;
      mh = F(hi);
    }
  }

  // geometric bisection; sqrt(lo)*sqrt(hi) keeps midpoints equivariant under
  // scaling the whole bracket by a power of four
  int iter = 0;
  while (hi / lo - 1.0 > opt.rel_tol && iter < opt.max_iter) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++iter;
  }
  out.value = std::sqrt(lo) * std::sqrt(hi);

  if (opt.tail == TailPolicy::full && full_range(opt, grid)) {
    std::vector<double> parts;
    modular(f, p, w, out.value, grid, mopt, &parts);
    const bool skip_outer = std::isfinite(f.support_radius()) &&
                            f.support_radius() <= std::ldexp(1.0, grid.k_max());
    const auto tc = analyze_tails(parts, 1e-8, true, !skip_outer);
    if (tc.suspect) out.flags.insert(flag::kTruncationSuspect);
    if (tc.divergent_inner || tc.divergent_outer) {
      out.value = kInf;
      out.flags.insert(flag::kNormInfinite);
      out.flags.insert(flag::kTruncationSuspect);
    }
  }
  return out;
}

BracketCheck modular_norm_bracket_check(const TestFunction& f, const ExponentFunction& p,
                                        const PowerWeight& w, const QuadratureGrid& grid,
                                        double tol, int workers) {
  if (!(p.minimum() > 1.0) || !std::isfinite(p.maximum()))
    throw std::invalid_argument("modular_norm_bracket_check: p must lie in P_b");
  BracketCheck bc;
  LuxemburgOptions opt;
  opt.workers = workers;
  opt.tail = TailPolicy::restricted;
  bc.modular_value = modular(f, p, w, 1.0, grid, ModularOptions{grid.k_min(), grid.k_max(), workers});
  if (!(bc.modular_value > 0.0) || !std::isfinite(bc.modular_value))
    throw std::invalid_argument("modular_norm_bracket_check: needs 0 < F_p(f) < inf");
  bc.norm = luxemburg_norm(f, p, w, grid, opt).value;
  const double C = bc.modular_value;
  const double lo_exp = 1.0 / p.minimum(), hi_exp = 1.0 / p.maximum();
  const double a = std::pow(C, lo_exp), b = std::pow(C, hi_exp);
  const double scale = std::max(1.0, std::max(a, b));
  bc.holds_i = bc.norm <= std::max(a, b) + tol * scale;
  bc.holds_ii = bc.norm >= std::min(a, b) - tol * scale;
  return bc;
}

namespace {

// ||2^{k alpha(.)} f chi_k||_{L^{q(.)}_w} for a single shell.
NormValue shell_norm(const TestFunction& f, const ExponentFunction& alpha, int k,
                     const ExponentFunction& q, const PowerWeight& w, const QuadratureGrid& grid,
                     int workers) {
  LuxemburgOptions opt;
  opt.k_lo = k;
  opt.k_hi = k;
  opt.workers = workers;
  opt.tail = TailPolicy::restricted;
  if (alpha.is_constant()) {
    const double factor = std::exp2(k * alpha.constant_value());
    const TestFunction g(f.dim(),
                         [factor, &f](const Vec& x) { return factor * f(x); },
                         f.support_radius(), f.radial(), "shell_term");
    return luxemburg_norm(g, q, w, grid, opt);
  }
  const TestFunction g(f.dim(),
                       [k, &alpha, &f](const Vec& x) { return std::exp2(k * alpha(x)) * f(x); },
                       f.support_radius(), f.radial(), "shell_term");
  return luxemburg_norm(g, q, w, grid, opt);
}

}  // namespace

NormValue herz_morrey_norm(const TestFunction& f, const ExponentFunction& alpha, double lambda,
                           double p, const ExponentFunction& q, const PowerWeight& w,
                           const QuadratureGrid& grid, const HerzOptions& opt) {
  if (!(p > 0.0)) throw std::invalid_argument("herz_morrey_norm: outer exponent p must be > 0");
  if (lambda < 0.0) throw std::invalid_argument("herz_morrey_norm: lambda must be >= 0");
  NormValue out;
  const int klo = grid.k_min(), khi = grid.k_max();
  std::vector<double> term(static_cast<size_t>(khi - klo + 1), 0.0);
  for (int k = klo; k <= khi; ++k) {
    auto nv = shell_norm(f, alpha, k, q, w, grid, opt.workers);
    merge_flags(out.flags, nv.flags);
    term[static_cast<size_t>(k - klo)] = pow_outer(nv.value, p);
  }

  if (lambda == 0.0) {
    double total = 0.0;
    for (double t : term) total += t;
    out.value = pow_outer(total, 1.0 / p);
    if (total > 0.0 &&
        (term.front() > 1e-8 * total ||
         (term.back() > 1e-8 * total &&
          !(std::isfinite(f.support_radius()) && f.support_radius() <= std::ldexp(1.0, khi)))))
      out.flags.insert(flag::kTruncationSuspect);
    return out;
  }

  const int k0_lo = std::max(opt.k0_lo, klo);
  const int k0_hi = opt.k0_hi;
  double best = 0.0;
  int best_k0 = k0_lo;
  double prefix = 0.0;
  int next_k = klo;
  for (int k0 = k0_lo; k0 <= k0_hi; ++k0) {
    while (next_k <= std::min(k0, khi)) {
      prefix += term[static_cast<size_t>(next_k - klo)];
      ++next_k;
    }
    const double v = std::exp2(-static_cast<double>(k0) * lambda) * pow_outer(prefix, 1.0 / p);
    if (v > best) {
      best = v;
      best_k0 = k0;
    }
  }
  out.value = best;
  if (best > 0.0 && (best_k0 == k0_lo || best_k0 == k0_hi))
    out.flags.insert(flag::kSupAtBoundary);
  return out;
}

NormValue central_morrey_norm(const TestFunction& f, const ExponentFunction& p, double lambda,
                              const PowerWeight& w1, const PowerWeight& w2,
                              const QuadratureGrid& grid, const RadiusGrid& radii, int workers) {
  if (!p.at_infinity())
    throw std::invalid_argument("central_morrey_norm: p must lie in P_infty (limit required)");
  if (!w1.is_constant_power() || w1.gamma() <= -grid.dim())
    throw std::invalid_argument(
        "central_morrey_norm: w1 must be a constant power with gamma > -n (ball weight diverges)");
  NormValue out;
  const double expo = -(lambda + 1.0 / *p.at_infinity());
  double best = 0.0;
  int best_j = radii.log2_lo;
  for (int j = radii.log2_lo; j <= radii.log2_hi; ++j) {
    if (j < grid.k_min()) continue;  // no shells inside this ball
    LuxemburgOptions opt;
    opt.k_lo = grid.k_min();
    opt.k_hi = std::min(j, grid.k_max());
    opt.workers = workers;
    opt.tail = TailPolicy::restricted;
    auto nv = luxemburg_norm(f, p, w2, grid, opt);
    merge_flags(out.flags, nv.flags);
    const double mass = w1.ball_mass(std::ldexp(1.0, j), grid.dim());
    const double v = std::pow(mass, expo) * nv.value;
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  out.value = best;
  if (best > 0.0 && (best_j == radii.log2_lo || best_j == radii.log2_hi))
    out.flags.insert(flag::kSupAtBoundary);
  return out;
}

NormValue cmo_norm(const TestFunction& b, double q, const PowerWeight& w,
                   const QuadratureGrid& grid, const RadiusGrid& radii, int workers) {
  if (q < 1.0) throw std::invalid_argument("cmo_norm: q must be >= 1");
  NormValue out;
  double best = 0.0;
  int best_j = radii.log2_lo;
  bool any = false;
  for (int j = radii.log2_lo; j <= radii.log2_hi; ++j) {
    if (j < grid.k_min()) continue;
    const int khi = std::min(j, grid.k_max());
    const auto mass_parts =
        grid.shell_sums([&](const Vec& x) { return w(x); }, grid.k_min(), khi, workers);
    double mass = 0.0;
    for (double s : mass_parts) mass += s;
    if (!(mass > 0.0))
      throw std::invalid_argument("cmo_norm: nonpositive weight mass on ball 2^" +
                                  std::to_string(j));
    const auto avg_parts =
        grid.shell_sums([&](const Vec& x) { return b(x) * w(x); }, grid.k_min(), khi, workers);
    double avg = 0.0;
    for (double s : avg_parts) avg += s;
    avg /= mass;
    const auto osc_parts = grid.shell_sums(
        [&](const Vec& x) { return pow_outer(std::fabs(b(x) - avg), q) * w(x); }, grid.k_min(),
        khi, workers);
    double osc = 0.0;
    for (double s : osc_parts) osc += s;
    const double v = pow_outer(osc / mass, 1.0 / q);
    any = true;
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  if (!any) throw std::invalid_argument("cmo_norm: no radius intersects the grid");
  out.value = best;
  if (best > 0.0 && (best_j == radii.log2_lo || best_j == radii.log2_hi))
    out.flags.insert(flag::kSupAtBoundary);
  return out;
}

LipschitzResult lipschitz_seminorm(const TestFunction& b, double beta, const PairSampling& pairs,
                                   double tol) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("lipschitz_seminorm: beta must lie in (0,1]");
  if (pairs.count < 1 && pairs.dyadic_levels < 1)
    throw std::invalid_argument("lipschitz_seminorm: empty pair sampling");
  LipschitzResult res;
  const int dim = b.dim();
  double emp = 0.0;
  const auto probe = [&](const Vec& x, const Vec& y) {
    Vec d(dim);
    for (int i = 0; i < dim; ++i) d[i] = x[i] - y[i];
    const double dist = d.norm();
    if (dist < 1e-300) return;
    const double num = std::fabs(b(x) - b(y));
    emp = std::max(emp, num / std::pow(dist, beta));
  };
  // structured pairs marching into the origin along each probe direction
  for (const Vec& dir : probe_directions(dim)) {
    for (int j = 0; j <= pairs.dyadic_levels; ++j) {
      const double r = std::ldexp(1.0, -j);
      probe(dir.scaled(r), Vec(dim));
      probe(dir.scaled(r), dir.scaled(0.5 * r));
    }
  }
  std::mt19937_64 rng(pairs.seed);
  std::uniform_real_distribution<double> u(-pairs.radius, pairs.radius);
  for (int i = 0; i < pairs.count; ++i) {
    Vec x(dim), y(dim);
    for (int d = 0; d < dim; ++d) x[d] = u(rng);
    for (int d = 0; d < dim; ++d) y[d] = u(rng);
    probe(x, y);
  }
  res.empirical_lower_bound = emp;
  if (b.declared_lip() && b.declared_lip()->beta == beta) {
    res.declared = b.declared_lip()->constant;
    if (*res.declared < emp - tol) {
      res.flags.insert(flag::kDeclaredInconsistent);
      res.reconciled = emp;
    } else {
      res.reconciled = std::max(*res.declared, emp);
    }
  } else {
    res.reconciled = emp;
    res.flags.insert(flag::kUndeclared);
  }
  return res;
}

std::vector<Cube> default_cube_family(int dim, int count, uint64_t seed) {
  std::vector<Cube> cubes;
  cubes.reserve(static_cast<size_t>(count));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> center(-4.0, 4.0);
  std::uniform_real_distribution<double> width(-4.0, 2.0);
  for (int i = 0; i < count; ++i) {
    Cube c{Vec(dim), std::exp2(width(rng))};
    for (int d = 0; d < dim; ++d) c.center[d] = center(rng);
    cubes.push_back(c);
  }
  // always include origin-centered cubes
  for (int j = -3; j <= 3; ++j) cubes.push_back(Cube{Vec(dim), std::exp2(j)});
  return cubes;
}

double bmo_norm(const TestFunction& b, std::span<const Cube> cubes, int nodes_per_axis) {
  if (cubes.empty()) throw std::invalid_argument("bmo_norm: empty cube family");
  const int dim = b.dim();
  const int n1 = dim == 1 ? nodes_per_axis : (dim == 2 ? 256 : 64);
  double best = 0.0;
  std::vector<double> mids(static_cast<size_t>(n1));
  for (int i = 0; i < n1; ++i) mids[static_cast<size_t>(i)] = (i + 0.5) / n1 * 2.0 - 1.0;
  const auto cube_mean = [&](const Cube& c, const std::function<double(const Vec&)>& g) {
    double s = 0.0;
    Vec x(dim);
    if (dim == 1) {
      for (double u : mids) {
        x[0] = c.center[0] + c.half_width * u;
        s += g(x);
      }
      return s / n1;
    }
    if (dim == 2) {
      for (double u : mids)
        for (double v : mids) {
          x[0] = c.center[0] + c.half_width * u;
          x[1] = c.center[1] + c.half_width * v;
          s += g(x);
        }
      return s / (static_cast<double>(n1) * n1);
    }
    for (double u : mids)
      for (double v : mids)
        for (double t : mids) {
          x[0] = c.center[0] + c.half_width * u;
          x[1] = c.center[1] + c.half_width * v;
          x[2] = c.center[2] + c.half_width * t;
          s += g(x);
        }
    return s / (static_cast<double>(n1) * n1 * n1);
  };
  for (const Cube& c : cubes) {
    const double mean = cube_mean(c, [&](const Vec& x) { return b(x); });
    const double osc = cube_mean(c, [&](const Vec& x) { return std::fabs(b(x) - mean); });
    best = std::max(best, osc);
  }
  return best;
}

EmbeddingResult embedding_constant(const TestFunction& f, const ExponentFunction& p,
                                   const ExponentFunction& q, const PowerWeight& w,
                                   const QuadratureGrid& grid, int workers) {
  // sampled precondition: q <= p
  for (const Vec& dir : probe_directions(q.dim()))
    for (int j = -16; j <= 16; j += 2) {
      const Vec x = dir.scaled(std::exp2(j));
      if (q(x) > p(x) + 1e-12)
        throw std::invalid_argument("embedding_constant: q(x) > p(x) at x=" + x.str());
    }
  EmbeddingResult res;
  const int dim = q.dim();
  ExponentFunction pp = p, qq = q;
  const auto inv_r = [pp, qq](const Vec& x) {
    const double a = 1.0 / qq(x) - 1.0 / pp(x);
    return a;
  };
  const double r_min_inv = 1.0 / q.minimum() - (p.maximum() == kInf ? 0.0 : 1.0 / p.maximum());
  res.r_exponent = ExponentFunction::derived(
      dim, ValueClass::exponent_class,
      [inv_r](const Vec& x) {
        const double a = inv_r(x);
        return a > 1e-15 ? 1.0 / a : kInf;
      },
      r_min_inv > 1e-15 ? 1.0 / r_min_inv : kInf, kInf,
      inv_r(Vec(dim)) > 1e-15 ? 1.0 / inv_r(Vec(dim)) : kInf, std::nullopt, "embedding_r");

  LuxemburgOptions opt;
  opt.workers = workers;
  opt.tail = TailPolicy::restricted;

  const bool r_identically_inf = res.r_exponent.essentially_infinite();
  // ||1||_{L^{r(.)}} over R^n is infinite whenever r has a finite limit at
  // infinity; fall back to the indicator of supp f.
  bool support_restricted = false;
  if (r_identically_inf) {
    res.one_norm = 1.0;
  } else if (std::isfinite(f.support_radius())) {
    support_restricted = true;
    const double R = f.support_radius();
    const TestFunction chi(dim, [R](const Vec& x) { return x.norm() <= R ? 1.0 : 0.0; }, R, true,
                           "chi_supp");
    res.one_norm = luxemburg_norm(chi, res.r_exponent, PowerWeight::unit(), grid, opt).value;
    res.flags.insert(flag::kSupportRestricted);
  } else {
    const TestFunction one = TestFunction::constant(dim, 1.0);
    res.one_norm = luxemburg_norm(one, res.r_exponent, PowerWeight::unit(), grid, opt).value;
    res.flags.insert(flag::kDomainTruncated);
  }
  (void)support_restricted;

  const double nq = luxemburg_norm(f, q, w, grid, opt).value;
  const double np = luxemburg_norm(f, p, w, grid, opt).value;
  if (nq == 0.0 && np == 0.0) {
    res.empirical_K = std::numeric_limits<double>::quiet_NaN();
    res.flags.insert(flag::kZeroInput);
    return res;
  }
  res.empirical_K = nq / (res.one_norm * np);
  return res;
}

LemmaShellResult lemma_ve_check(const TestFunction& f, const ExponentFunction& alpha,
                                double lambda, double p, const ExponentFunction& q,
                                const PowerWeight& w, int j, const QuadratureGrid& grid,
                                const HerzOptions& opt) {
  LemmaShellResult res;
  LuxemburgOptions lopt;
  lopt.k_lo = j;
  lopt.k_hi = j;
  lopt.workers = opt.workers;
  lopt.tail = TailPolicy::restricted;
  res.lhs = luxemburg_norm(f, q, w, grid, lopt).value;
  auto mk = herz_morrey_norm(f, alpha, lambda, p, q, w, grid, opt);
  merge_flags(res.flags, mk.flags);
  if (mk.value == 0.0) {
    res.flags.insert(flag::kZeroInput);
    return res;
  }
  double expo;
  if (j < 0) {
    expo = lambda - alpha.at_origin();
  } else {
    if (!alpha.at_infinity())
      throw std::invalid_argument("lemma_ve_check: alpha needs a limit at infinity for j >= 0");
    expo = lambda - *alpha.at_infinity();
  }
  res.rhs_without_constant = std::exp2(j * expo) * mk.value;
  res.ratio = res.lhs / res.rhs_without_constant;
  return res;
}

}  // namespace hausdorff
