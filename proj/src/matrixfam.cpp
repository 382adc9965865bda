#include "hausdorff/matrixfam.hpp"

#include <cmath>
#include <sstream>

#include "hausdorff/norms.hpp"

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ScalarFn ScalarFn::constant(double value) {
  ScalarFn f;
  f.eval_ = [value](const Vec&) { return value; };
  f.name_ = "constant(" + std::to_string(value) + ")";
  return f;
}

ScalarFn ScalarFn::coordinate(int index, double scale) {
  ScalarFn f;
  f.eval_ = [index, scale](const Vec& t) { return scale * t[index]; };
  f.name_ = "coordinate(" + std::to_string(index) + ",scale=" + std::to_string(scale) + ")";
  return f;
}

ScalarFn ScalarFn::norm(double scale) {
  ScalarFn f;
  f.eval_ = [scale](const Vec& t) { return scale * t.norm(); };
  f.name_ = "norm(scale=" + std::to_string(scale) + ")";
  return f;
}

ScalarFn ScalarFn::power(int index, double scale, double exponent) {
  ScalarFn f;
  f.eval_ = [index, scale, exponent](const Vec& t) {
    return scale * std::pow(t[index], exponent);
  };
  f.name_ = "power(" + std::to_string(index) + ",scale=" + std::to_string(scale) +
            ",e=" + std::to_string(exponent) + ")";
  return f;
}

MatrixFamily MatrixFamily::scalar(int n, int coordinate, double scale) {
  return scaled_identity_family(n, ScalarFn::coordinate(coordinate, scale));
}

MatrixFamily MatrixFamily::scaled_identity_family(int n, ScalarFn s) {
  MatrixFamily f;
  f.n_ = n;
  f.s_ = s;
  f.eval_ = [n, s](const Vec& t) {
    const double v = s(t);
    if (v == 0.0) throw std::domain_error("scaled identity family: s(t) = 0 at t=" + t.str());
    return SquareMatrix::scaled_identity(n, v);
  };
  f.name_ = "scaled_identity(s=" + s.name() + ")";
  return f;
}

MatrixFamily MatrixFamily::diagonal_powers(int n, std::vector<double> powers) {
  if (static_cast<int>(powers.size()) != n)
    throw std::invalid_argument("diagonal_powers: need n exponents");
  MatrixFamily f;
  f.n_ = n;
  f.eval_ = [n, powers](const Vec& t) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = std::pow(t[i], powers[i]);
    if (m.det() == 0.0) throw std::domain_error("diagonal_powers: singular at t=" + t.str());
    return m;
  };
  f.name_ = "diagonal_powers";
  return f;
}

MatrixFamily MatrixFamily::rotation_scalar(int n, ScalarFn s, ScalarFn angle) {
  if (n > 2)
    throw std::invalid_argument("rotation_scalar: planar rotations only (n <= 2)");
  MatrixFamily f;
  f.n_ = n;
  f.s_ = s;
  if (n == 1) {
    f.eval_ = [s](const Vec& t) {
      const double v = s(t);
      if (v == 0.0) throw std::domain_error("rotation_scalar: s(t) = 0 at t=" + t.str());
      SquareMatrix m(1);
      m.at(0, 0) = v;
      return m;
    };
  } else {
    f.eval_ = [s, angle](const Vec& t) {
      const double v = s(t);
      if (v == 0.0) throw std::domain_error("rotation_scalar: s(t) = 0 at t=" + t.str());
      SquareMatrix m = SquareMatrix::rotation2d(angle(t));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) *= v;
      return m;
    };
  }
  f.name_ = "rotation_scalar(s=" + s.name() + ")";
  return f;
}

SquareMatrix MatrixFamily::eval(const Vec& t) const { return eval_(t); }

double MatrixFamily::scalar_part(const Vec& t) const {
  if (!s_) throw std::logic_error("MatrixFamily: no scalar-rotation structure");
  return (*s_)(t);
}

KernelSpec KernelSpec::power_annulus(int n, double sigma, double r1, double r2,
                                     bool positive_orthant) {
  if (!(r2 > r1) || r1 < 0.0)
    throw std::invalid_argument("power_annulus: need 0 <= r1 < r2");
  KernelSpec k;
  k.n_ = n;
  k.eval_ = [sigma, r1, r2, positive_orthant, n](const Vec& t) {
    if (positive_orthant)
      for (int i = 0; i < n; ++i)
        if (t[i] <= 0.0) return 0.0;
    const double r = t.norm();
    if (r <= r1 || r > r2) return 0.0;
    return sigma == 0.0 ? 1.0 : std::pow(r, sigma);
  };
  k.support_inner_ = r1;
  k.support_outer_ = r2;
  k.name_ = "power_annulus(sigma=" + std::to_string(sigma) + ")";
  return k;
}

KernelSpec KernelSpec::power_cube(int n, double c, double sigma, std::vector<double> powers) {
  if (c < 0.0) throw std::invalid_argument("power_cube: kernel must be nonnegative");
  if (!powers.empty() && static_cast<int>(powers.size()) != n)
    throw std::invalid_argument("power_cube: need n coordinate powers");
  KernelSpec k;
  k.n_ = n;
  k.eval_ = [c, sigma, powers, n](const Vec& t) {
    for (int i = 0; i < n; ++i)
      if (t[i] <= 0.0 || t[i] > 1.0) return 0.0;
    double v = c;
    if (sigma != 0.0) v *= std::pow(t.norm(), sigma);
    for (size_t i = 0; i < powers.size(); ++i)
      if (powers[i] != 0.0) v *= std::pow(t[static_cast<int>(i)], powers[i]);
    return v;
  };
  k.support_inner_ = 0.0;
  k.support_outer_ = std::sqrt(static_cast<double>(n));  // cube sits in this ball
  k.name_ = "power_cube";
  return k;
}

KernelSpec KernelSpec::gaussian_tail(int n, double c, double a, double sigma) {
  if (c < 0.0 || a <= 0.0) throw std::invalid_argument("gaussian_tail: need c >= 0, a > 0");
  KernelSpec k;
  k.n_ = n;
  k.eval_ = [c, a, sigma](const Vec& t) {
    const double r = t.norm();
    double v = c * std::exp(-a * r * r);
    if (sigma != 0.0) v *= std::pow(r, sigma);
    return v;
  };
  k.name_ = "gaussian_tail";
  return k;
}

KernelSpec KernelSpec::zero(int n) {
  KernelSpec k;
  k.n_ = n;
  k.eval_ = [](const Vec&) { return 0.0; };
  k.support_outer_ = 0.0;
  k.name_ = "zero";
  return k;
}

KernelSpec KernelSpec::custom(int n, std::function<double(const Vec&)> eval, double support_inner,
                              double support_outer, std::string name) {
  KernelSpec k;
  k.n_ = n;
  k.eval_ = std::move(eval);
  k.support_inner_ = support_inner;
  k.support_outer_ = support_outer;
  k.name_ = std::move(name);
  return k;
}

DetBounds det_bounds_check(const SquareMatrix& a, double slack) {
  const double d = a.det();
  if (d == 0.0) throw std::invalid_argument("det_bounds_check: singular matrix");
  DetBounds out;
  const int n = a.size();
  const SquareMatrix inv = a.inverse();
  out.lower = std::pow(a.frobenius(), -n);
  out.mid = std::fabs(inv.det());
  out.upper = std::pow(inv.frobenius(), n);
  const double s1 = slack * std::max(1.0, out.mid);
  const double s2 = slack * std::max(1.0, out.upper);
  out.holds = (out.lower <= out.mid + s1) && (out.mid <= out.upper + s2);
  return out;
}

double rho_star(std::span<const MatrixFamily> families, const Vec& t) {
  if (families.empty()) throw std::invalid_argument("rho_star: no families");
  double best = 0.0;
  for (const auto& fam : families) {
    const SquareMatrix a = fam.eval(t);
    best = std::max(best, a.frobenius() * a.inverse().frobenius());
  }
  return best;
}

int theta_star(std::span<const MatrixFamily> families, const Vec& t) {
  return theta_index(rho_star(families, t));
}

namespace {

double dyadic_tail_sum(int theta, double expo) {
  // sum_{r = theta - 1}^{0} 2^{r * expo}
  double s = 0.0;
  for (int r = theta - 1; r <= 0; ++r) s += std::exp2(r * expo);
  return s;
}

}  // namespace

FactorBundle structural_factors(const MatrixFamily& family, const FactorParams& params,
                                const Vec& t, const QuadratureGrid& grid,
                                std::optional<int> theta_override) {
  FactorBundle out;
  const SquareMatrix a = family.eval(t);
  const SquareMatrix inv = a.inverse();
  const double na = a.frobenius();
  const double nai = inv.frobenius();
  const double deti = std::fabs(inv.det());
  const double g = params.gamma;

  out.c = std::max(std::pow(na, -g), std::pow(nai, g)) *
          std::max(std::pow(deti, params.q.maximum() == kInf ? 0.0 : 1.0 / params.q.maximum()),
                   std::pow(deti, 1.0 / params.q.minimum()));

  out.theta = theta_override ? *theta_override : theta_index(na * nai);

  const double a0 = params.alpha.at_origin();
  if (!params.alpha.at_infinity())
    throw std::invalid_argument("structural_factors: alpha needs a limit at infinity (symbol alpha_inf)");
  const double ainf = *params.alpha.at_infinity();
  out.phi = std::max(std::pow(na, params.lambda - a0), std::pow(na, params.lambda - ainf)) *
            std::max(dyadic_tail_sum(out.theta, params.lambda - a0),
                     dyadic_tail_sum(out.theta, params.lambda - ainf));

  out.psi = deti * std::max(std::pow(nai, g), std::pow(na, -g));

  if (family.has_scalar_rotation()) {
    const double s = std::fabs(family.scalar_part(t));
    out.varphi = std::max(std::log(4.0 * s), std::log(2.0 / s));
  } else {
    out.flags.insert(flag::kVarphiUnavailable);
  }

  out.commutator_gap = std::pow(a.minus_from_identity().frobenius(), params.beta);

  const ExponentFunction theta_exp = theta_exponent(params.q, inv, params.zeta);
  if (theta_exp.essentially_infinite()) {
    out.one_norm_theta = 1.0;  // exact: sup-norm of the constant 1
  } else {
    LuxemburgOptions lopt;
    lopt.workers = 1;
    lopt.tail = TailPolicy::restricted;
    out.one_norm_theta =
        luxemburg_norm(TestFunction::constant(grid.dim(), 1.0), theta_exp, PowerWeight::unit(),
                       grid, lopt)
            .value;
    out.flags.insert(flag::kDomainTruncated);
  }
  return out;
}

std::string to_string(BoundConstantId id) {
  switch (id) {
    case BoundConstantId::c1: return "C1";
    case BoundConstantId::c2: return "C2";
    case BoundConstantId::c3: return "C3";
    case BoundConstantId::c4: return "C4";
    case BoundConstantId::c5: return "C5";
    case BoundConstantId::c6: return "C6";
    case BoundConstantId::c7: return "C7";
  }
  throw std::logic_error("unreachable");
}

BoundConstantId bound_constant_from_string(const std::string& s) {
  for (auto id : {BoundConstantId::c1, BoundConstantId::c2, BoundConstantId::c3,
                  BoundConstantId::c4, BoundConstantId::c5, BoundConstantId::c6,
                  BoundConstantId::c7})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown bound constant id: " + s);
}

NormValue bound_constant(BoundConstantId id, const ConstantInputs& in, const QuadratureGrid& t_grid,
                         const QuadratureGrid& x_grid) {
  const size_t m = in.families.size();
  if (m == 0 || in.params.size() != m)
    throw std::invalid_argument("bound_constant: need per-family parameters");
  const bool needs_bracket = id == BoundConstantId::c4 || id == BoundConstantId::c5 ||
                             id == BoundConstantId::c7;
  const bool needs_power = id == BoundConstantId::c6 || id == BoundConstantId::c7;
  const bool needs_gap = id == BoundConstantId::c1 || id == BoundConstantId::c2 ||
                         id == BoundConstantId::c3 || id == BoundConstantId::c6;
  const bool needs_phi = id == BoundConstantId::c1 || id == BoundConstantId::c2 ||
                         id == BoundConstantId::c4 || id == BoundConstantId::c5;
  const bool outer_factor = id == BoundConstantId::c2 || id == BoundConstantId::c5;
  if (needs_power && in.power_exponents.size() != m)
    throw std::invalid_argument("bound_constant: missing power exponents (q_i_infinity/lambda_i)");
  if (needs_bracket) {
    for (size_t i = 0; i < m; ++i) {
      if (!in.params[i].r)
        throw std::invalid_argument("bound_constant: missing constant r_i for the CMO bracket");
      if (!in.families[i].has_scalar_rotation())
        throw std::invalid_argument("bound_constant: CMO bracket needs scalar-rotation families (s_i)");
    }
  }

  const int n = t_grid.dim();
  NormValue out;
  Flags inner_flags;
  const auto integrand = [&](const Vec& t) -> double {
    const double phi_v = in.kernel(t);
    if (phi_v == 0.0) return 0.0;
    double weight = phi_v / std::pow(t.norm(), n);
    const int theta = theta_star(in.families, t);
    if (outer_factor) weight *= std::pow(2.0 - theta, m - 1.0 / in.p_out);
    for (size_t i = 0; i < m; ++i) {
      const auto fb = structural_factors(in.families[i], in.params[i], t, x_grid, theta);
      merge_flags(inner_flags, fb.flags);
      weight *= fb.c * fb.one_norm_theta;
      if (needs_gap) weight *= fb.commutator_gap;
      if (needs_phi) weight *= fb.phi;
      if (needs_power) weight *= std::pow(in.families[i].eval(t).frobenius(), in.power_exponents[i]);
      if (needs_bracket) {
        const double r = *in.params[i].r;
        const double s = std::fabs(in.families[i].scalar_part(t));
        const double bg = in.params[i].gamma;
        if (!fb.varphi)
          throw std::invalid_argument("bound_constant: missing varphi (no scalar part)");
        weight *= 1.0 + std::pow(fb.psi, 1.0 / r) * std::pow(s, (bg + n) / r) + *fb.varphi;
      }
    }
    return weight;
  };

  // restrict to shells meeting the kernel support
  int k_lo = t_grid.k_min(), k_hi = t_grid.k_max();
  if (in.kernel.support_outer() < kInf)
    k_hi = std::min(k_hi, dyadic_index(in.kernel.support_outer()));
  if (in.kernel.support_inner() > 0.0)
    k_lo = std::max(k_lo, dyadic_index(in.kernel.support_inner()));
  const auto sums = t_grid.shell_sums(integrand, k_lo, k_hi, in.workers);
  double total = 0.0;
  for (double s : sums) total += s;
  const bool check_inner = !(in.kernel.support_inner() > 0.0);
  const bool check_outer = !(in.kernel.support_outer() < kInf) || k_hi < dyadic_index(in.kernel.support_outer());
  const auto tc = analyze_tails(sums, 1e-8, check_inner,
                                check_outer && !(in.kernel.support_outer() < kInf));
  merge_flags(out.flags, inner_flags);
  if (tc.divergent_inner || tc.divergent_outer) {
    out.value = kInf;
    out.flags.insert(flag::kNormInfinite);
    return out;
  }
  if (tc.suspect) out.flags.insert(flag::kTruncationSuspect);
  out.value = total;
  return out;
}

}  // namespace hausdorff
