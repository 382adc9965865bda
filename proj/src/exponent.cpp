#include "hausdorff/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_exponent_class(ValueClass cls, double minimum, const std::string& kind,
                          const std::string& param) {
  if (cls == ValueClass::exponent_class && minimum < 1.0) {
    std::ostringstream os;
    os << kind << ": values drop to " << minimum
       << " < 1 on an exponent-class request (offending parameter: " << param << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

ExponentFunction ExponentFunction::constant(int dim, double value, ValueClass cls) {
  if (std::isnan(value)) throw std::invalid_argument("constant exponent: NaN value");
  check_exponent_class(cls, value, "constant", "value=" + std::to_string(value));
  ExponentFunction f;
  f.dim_ = dim;
  f.cls_ = cls;
  f.eval_ = [value](const Vec&) { return value; };
  f.min_ = f.max_ = f.at_origin_ = value;
  f.at_infinity_ = value;
  f.c0_log_ = 0.0;
  f.cinf_log_ = 0.0;
  f.is_constant_ = true;
  f.label_ = "constant(" + std::to_string(value) + ")";
  return f;
}

ExponentFunction ExponentFunction::rational_bump(int dim, double a, double b, ValueClass cls) {
  const double lo = std::min(a, a + b), hi = std::max(a, a + b);
  check_exponent_class(cls, lo, "rational_bump", "a=" + std::to_string(a) + " b=" + std::to_string(b));
  if (b == 0.0) return constant(dim, a, cls);
  ExponentFunction f;
  f.dim_ = dim;
  f.cls_ = cls;
  f.eval_ = [a, b](const Vec& x) { return a + b / (1.0 + x.norm()); };
  f.min_ = lo;
  f.max_ = hi;
  f.at_origin_ = a + b;
  f.at_infinity_ = a;
  f.is_constant_ = false;
  f.label_ = "rational_bump(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  return f;
}

ExponentFunction ExponentFunction::clamp_log(int dim, double a, double b, ValueClass cls) {
  const double lo = std::min(a, a + b), hi = std::max(a, a + b);
  check_exponent_class(cls, lo, "clamp_log", "a=" + std::to_string(a) + " b=" + std::to_string(b));
  if (b == 0.0) return constant(dim, a, cls);
  ExponentFunction f;
  f.dim_ = dim;
  f.cls_ = cls;
  f.eval_ = [a, b](const Vec& x) { return a + b / std::log(M_E + x.norm()); };
  f.min_ = lo;
  f.max_ = hi;
  f.at_origin_ = a + b;  // log(e + 0) = 1
  f.at_infinity_ = a;
  f.cinf_log_ = std::fabs(b);  // |p(x) - a| = |b| / log(e + |x|) exactly
  f.is_constant_ = false;
  f.label_ = "clamp_log(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  return f;
}

ExponentFunction ExponentFunction::derived(int dim, ValueClass cls, Eval eval, double minimum,
                                           double maximum, double at_origin,
                                           std::optional<double> at_infinity, std::string label) {
  check_exponent_class(cls, minimum, "derived exponent", label);
  ExponentFunction f;
  f.dim_ = dim;
  f.cls_ = cls;
  f.eval_ = std::move(eval);
  f.min_ = minimum;
  f.max_ = maximum;
  f.at_origin_ = at_origin;
  f.at_infinity_ = at_infinity;
  f.is_constant_ = (minimum == maximum);
  f.label_ = std::move(label);
  return f;
}

std::vector<double> make_log_radii(int log2_lo, int log2_hi, int per_octave) {
  if (log2_hi <= log2_lo || per_octave < 1)
    throw std::invalid_argument("make_log_radii: empty sweep");
  std::vector<double> rs;
  rs.reserve(static_cast<size_t>((log2_hi - log2_lo) * per_octave) + 1);
  const int steps = (log2_hi - log2_lo) * per_octave;
  for (int i = 0; i <= steps; ++i)
    rs.push_back(std::exp2(log2_lo + static_cast<double>(i) / per_octave));
  return rs;
}

std::vector<Vec> probe_directions(int dim) {
  std::vector<Vec> dirs;
  if (dim == 1) {
    dirs = {Vec::of({1.0}), Vec::of({-1.0})};
  } else if (dim == 2) {
    for (int k = 0; k < 8; ++k) {
      const double a = M_PI * k / 4.0;
      dirs.push_back(Vec::of({std::cos(a), std::sin(a)}));
    }
  } else {
    const double s = 1.0 / std::sqrt(3.0);
    dirs = {Vec::of({1, 0, 0}), Vec::of({-1, 0, 0}), Vec::of({0, 1, 0}),
            Vec::of({0, -1, 0}), Vec::of({0, 0, 1}), Vec::of({0, 0, -1})};
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        for (int sz : {-1, 1}) dirs.push_back(Vec::of({s * sx, s * sy, s * sz}));
  }
  return dirs;
}

ClassReport classify_exponent(const ExponentFunction& p, std::span<const double> radii) {
  if (radii.empty()) throw std::invalid_argument("classify_exponent: empty radius sweep");
  ClassReport rep;
  const auto dirs = probe_directions(p.dim());
  const double p0 = p.at_origin();
  const auto pinf = p.at_infinity();

  double c0 = 0.0, cinf = 0.0;
  std::vector<double> dev_at_radius;  // max over directions of |p - p_inf|
  dev_at_radius.reserve(radii.size());
  for (double r : radii) {
    double dev = 0.0;
    for (const Vec& d : dirs) {
      const Vec x = d.scaled(r);
      const double v = p(x);
      c0 = std::max(c0, std::fabs(v - p0) * std::log(M_E + 1.0 / r));
      if (pinf) {
        cinf = std::max(cinf, std::fabs(v - *pinf) * std::log(M_E + r));
        dev = std::max(dev, std::fabs(v - *pinf));
      }
    }
    dev_at_radius.push_back(dev);
  }
  rep.c0_log_estimate = c0;
  rep.cinf_log_estimate = cinf;

  rep.in_P = (p.value_class() == ValueClass::exponent_class) && p.minimum() >= 1.0;
  rep.in_P_b = rep.in_P && p.minimum() > 1.0 && std::isfinite(p.maximum());

  // P_infty: a cached limit plus a non-increasing deviation along the
  // sampled tail corroborates convergence.
  if (pinf && p.value_class() == ValueClass::exponent_class) {
    bool tail_ok = true;
    const size_t half = dev_at_radius.size() / 2;
    for (size_t i = half; i + 1 < dev_at_radius.size(); ++i)
      if (dev_at_radius[i + 1] > dev_at_radius[i] + 1e-12) tail_ok = false;
    rep.in_P_infty = tail_ok;
  }
  return rep;
}

namespace {

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Range of 1/e over the essential range of an exponent-class e (values >= 1).
Interval reciprocal_range(const ExponentFunction& e) {
  const double lo = e.maximum() == kInf ? 0.0 : 1.0 / e.maximum();
  return {lo, 1.0 / e.minimum()};
}

bool all_constant(const std::vector<ExponentFunction>& fs) {
  return std::all_of(fs.begin(), fs.end(), [](const auto& f) { return f.is_constant(); });
}

std::optional<double> common_infinity_sum(const std::vector<ExponentFunction>& fs,
                                          const std::function<double(double)>& term) {
  double s = 0.0;
  for (const auto& f : fs) {
    const auto v = f.at_infinity();
    if (!v) return std::nullopt;
    s += term(*v);
  }
  return s;
}

}  // namespace

CompositeExponents compose_theorem_exponents(const ComposeInputs& in) {
  const size_t m = in.q.size();
  if (m == 0 || in.r.size() != m || in.alpha.size() != m || in.beta.size() != m ||
      in.lambda.size() != m || in.gamma.size() != m)
    throw std::invalid_argument("compose_theorem_exponents: member lists must share length m >= 1");
  const int dim = in.q.front().dim();
  for (const auto& f : in.q)
    if (f.dim() != dim) throw std::invalid_argument("compose_theorem_exponents: dim mismatch");
  for (const auto& f : in.r)
    if (f.dim() != dim) throw std::invalid_argument("compose_theorem_exponents: dim mismatch");
  for (const auto& f : in.alpha)
    if (f.dim() != dim) throw std::invalid_argument("compose_theorem_exponents: dim mismatch");

  CompositeExponents out;
  for (double b : in.beta) out.beta += b;
  for (double l : in.lambda) out.lambda += l;

  const auto q = in.q, r = in.r, alpha = in.alpha;
  const auto gamma = in.gamma, beta = in.beta;
  const double beta_sum = out.beta;
  const int n = in.n;

  // 1/q(.) = sum 1/q_i(.) + sum 1/r_i(.), conservative interval bounds.
  double inv_lo = 0.0, inv_hi = 0.0;
  for (const auto& f : q) { const auto iv = reciprocal_range(f); inv_lo += iv.lo; inv_hi += iv.hi; }
  for (const auto& f : r) { const auto iv = reciprocal_range(f); inv_lo += iv.lo; inv_hi += iv.hi; }
  if (inv_hi > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "compose_theorem_exponents: composed 1/q reaches " << inv_hi
       << " > 1; q(.) leaves the exponent class (inconsistent scenario)";
    throw std::invalid_argument(os.str());
  }
  const auto inv_q_eval = [q, r](const Vec& x) {
    double s = 0.0;
    for (const auto& f : q) s += 1.0 / f(x);
    for (const auto& f : r) s += 1.0 / f(x);
    return s;
  };
  const double q0 = 1.0 / inv_q_eval(Vec(dim));
  const auto qinf = [&]() -> std::optional<double> {
    double s = 0.0;
    for (const auto& f : q) { auto v = f.at_infinity(); if (!v) return std::nullopt; s += 1.0 / *v; }
    for (const auto& f : r) { auto v = f.at_infinity(); if (!v) return std::nullopt; s += 1.0 / *v; }
    return s > 0.0 ? 1.0 / s : kInf;
  }();
  if (all_constant(q) && all_constant(r)) {
    out.q_fn = ExponentFunction::constant(dim, inv_hi > 0.0 ? 1.0 / inv_hi : kInf);
  } else {
    out.q_fn = ExponentFunction::derived(
        dim, ValueClass::exponent_class,
        [inv_q_eval](const Vec& x) {
          const double s = inv_q_eval(x);
          return s > 0.0 ? 1.0 / s : kInf;
        },
        inv_hi > 0.0 ? 1.0 / inv_hi : kInf, inv_lo > 0.0 ? 1.0 / inv_lo : kInf, q0, qinf,
        "composed_q");
  }

  // gamma(.) = sum gamma_i + sum gamma_i / r_i(.)
  {
    double base = 0.0;
    for (double g : gamma) base += g;
    double lo = base, hi = base;
    for (size_t i = 0; i < m; ++i) {
      const auto iv = reciprocal_range(r[i]);
      const double a = gamma[i] * iv.lo, b = gamma[i] * iv.hi;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    const auto eval = [gamma, r, base](const Vec& x) {
      double s = base;
      for (size_t i = 0; i < gamma.size(); ++i) s += gamma[i] / r[i](x);
      return s;
    };
    const double g0 = eval(Vec(dim));
    const auto ginf = common_infinity_sum(r, [](double) { return 0.0; })
                          ? [&]() -> std::optional<double> {
                              double s = base;
                              for (size_t i = 0; i < m; ++i) {
                                auto v = r[i].at_infinity();
                                if (!v) return std::nullopt;
                                s += gamma[i] / *v;
                              }
                              return s;
                            }()
                          : std::nullopt;
    if (all_constant(r)) {
      out.gamma_fn = ExponentFunction::constant(dim, g0, ValueClass::real_class);
    } else {
      out.gamma_fn = ExponentFunction::derived(dim, ValueClass::real_class, eval, lo, hi, g0,
                                               ginf, "composed_gamma");
    }
  }

  // alpha*(.) = sum alpha_i(.) - beta - sum (gamma_i + n)/r_i(.)
  {
    double lo = -beta_sum, hi = -beta_sum;
    for (const auto& a : alpha) { lo += a.minimum(); hi += a.maximum(); }
    for (size_t i = 0; i < m; ++i) {
      const auto iv = reciprocal_range(r[i]);
      const double c = gamma[i] + n;
      const double a = -c * iv.lo, b = -c * iv.hi;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    const auto eval = [alpha, r, gamma, beta_sum, n](const Vec& x) {
      double s = -beta_sum;
      for (const auto& a : alpha) s += a(x);
      for (size_t i = 0; i < gamma.size(); ++i) s -= (gamma[i] + n) / r[i](x);
      return s;
    };
    const double a0 = eval(Vec(dim));
    std::optional<double> ainf;
    {
      double s = -beta_sum;
      bool ok = true;
      for (const auto& a : alpha) {
        auto v = a.at_infinity();
        if (!v) { ok = false; break; }
        s += *v;
      }
      if (ok)
        for (size_t i = 0; i < m; ++i) {
          auto v = r[i].at_infinity();
          if (!v) { ok = false; break; }
          s -= (gamma[i] + n) / *v;
        }
      if (ok) ainf = s;
    }
    if (all_constant(alpha) && all_constant(r)) {
      out.alpha_star = ExponentFunction::constant(dim, a0, ValueClass::real_class);
    } else {
      out.alpha_star = ExponentFunction::derived(dim, ValueClass::real_class, eval, lo, hi, a0,
                                                 ainf, "alpha_star");
    }
  }

  // alpha**(.) = sum alpha_i(.) - sum (gamma_i + n)/r_i, constant r_i only.
  if (all_constant(r)) {
    double shift = 0.0;
    for (size_t i = 0; i < m; ++i) shift += (gamma[i] + n) / r[i].constant_value();
    double lo = -shift, hi = -shift;
    for (const auto& a : alpha) { lo += a.minimum(); hi += a.maximum(); }
    const auto eval = [alpha, shift](const Vec& x) {
      double s = -shift;
      for (const auto& a : alpha) s += a(x);
      return s;
    };
    const double a0 = eval(Vec(dim));
    std::optional<double> ainf;
    {
      double s = -shift;
      bool ok = true;
      for (const auto& a : alpha) {
        auto v = a.at_infinity();
        if (!v) { ok = false; break; }
        s += *v;
      }
      if (ok) ainf = s;
    }
    if (all_constant(alpha)) {
      out.alpha_star_star = ExponentFunction::constant(dim, a0, ValueClass::real_class);
    } else {
      out.alpha_star_star = ExponentFunction::derived(dim, ValueClass::real_class, eval, lo, hi,
                                                      a0, ainf, "alpha_star_star");
    }
  }
  return out;
}

ExponentFunction compose_target_exponent(double zeta, std::span<const ExponentFunction> q,
                                         std::span<const ExponentFunction> r) {
  if (q.empty() || zeta <= 0.0)
    throw std::invalid_argument("compose_target_exponent: need members and zeta > 0");
  const int dim = q.front().dim();
  double inv_lo = 0.0, inv_hi = 0.0;
  bool constant = true;
  for (const auto& f : q) {
    const auto iv = reciprocal_range(f);
    inv_lo += iv.lo / zeta;
    inv_hi += iv.hi / zeta;
    constant = constant && f.is_constant();
  }
  for (const auto& f : r) {
    const auto iv = reciprocal_range(f);
    inv_lo += iv.lo;
    inv_hi += iv.hi;
    constant = constant && f.is_constant();
  }
  if (inv_hi > 1.0 + 1e-12)
    throw std::invalid_argument("compose_target_exponent: 1/q exceeds 1");
  if (constant)
    return ExponentFunction::constant(dim, inv_hi > 0.0 ? 1.0 / inv_hi : kInf);
  std::vector<ExponentFunction> qs(q.begin(), q.end()), rs(r.begin(), r.end());
  const auto eval = [qs, rs, zeta](const Vec& x) {
    double s = 0.0;
    for (const auto& f : qs) s += 1.0 / (zeta * f(x));
    for (const auto& f : rs) s += 1.0 / f(x);
    return s > 0.0 ? 1.0 / s : kInf;
  };
  const double q0 = eval(Vec(dim));
  std::optional<double> qinf;
  {
    double s = 0.0;
    bool ok = true;
    for (const auto& f : qs) {
      auto v = f.at_infinity();
      if (!v) { ok = false; break; }
      s += 1.0 / (zeta * *v);
    }
    if (ok)
      for (const auto& f : rs) {
        auto v = f.at_infinity();
        if (!v) { ok = false; break; }
        s += 1.0 / *v;
      }
    if (ok) qinf = s > 0.0 ? 1.0 / s : kInf;
  }
  return ExponentFunction::derived(dim, ValueClass::exponent_class, eval,
                                   inv_hi > 0.0 ? 1.0 / inv_hi : kInf,
                                   inv_lo > 0.0 ? 1.0 / inv_lo : kInf, q0, qinf, "target_q");
}

ExponentFunction scaled_exponent(const ExponentFunction& q, double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("scaled_exponent: zeta must be > 0");
  if (zeta == 1.0) return q;
  if (q.is_constant()) return ExponentFunction::constant(q.dim(), zeta * q.constant_value());
  std::optional<double> inf;
  if (q.at_infinity()) inf = zeta * *q.at_infinity();
  ExponentFunction base = q;
  return ExponentFunction::derived(
      q.dim(), q.value_class(), [base, zeta](const Vec& x) { return zeta * base(x); },
      zeta * q.minimum(), zeta * q.maximum(), zeta * q.at_origin(), inf,
      "scaled(" + std::to_string(zeta) + "," + q.label() + ")");
}

ExponentFunction theta_exponent(const ExponentFunction& q, const SquareMatrix& a_inverse,
                                double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("theta_exponent: zeta must be > 0");
  if (q.value_class() != ValueClass::exponent_class)
    throw std::invalid_argument("theta_exponent: q must be exponent-class");
  const int dim = q.dim();
  if (a_inverse.size() != dim) throw std::invalid_argument("theta_exponent: matrix dim mismatch");

  if (q.is_constant()) {
    const double qv = q.constant_value();
    if (qv == kInf) return ExponentFunction::constant(dim, kInf);
    const double inv = (zeta - 1.0) / (zeta * qv);
    if (inv < -1e-12)
      throw HypothesisViolation("theta_exponent: q(A^{-1}x) > zeta q(x) for constant q (zeta < 1)");
    if (inv <= 1e-15) return ExponentFunction::constant(dim, kInf);
    return ExponentFunction::constant(dim, 1.0 / inv);
  }

  // Conservative interval for 1/theta.
  const double inv_hi = 1.0 / q.minimum() - (q.maximum() == kInf ? 0.0 : 1.0 / (zeta * q.maximum()));
  const double inv_lo_raw = (q.maximum() == kInf ? 0.0 : 1.0 / q.maximum()) - 1.0 / (zeta * q.minimum());
  if (inv_hi <= 1e-15) return ExponentFunction::constant(dim, kInf);
  const double theta_min = 1.0 / inv_hi;
  const double theta_max = inv_lo_raw > 1e-15 ? 1.0 / inv_lo_raw : kInf;

  ExponentFunction base = q;
  const SquareMatrix ai = a_inverse;
  const auto eval = [base, ai, zeta](const Vec& x) {
    const double d = 1.0 / base(ai.apply(x)) - 1.0 / (zeta * base(x));
    if (d < -1e-12) {
      throw HypothesisViolation("theta_exponent: q(A^{-1}x) > zeta q(x) at x=" + x.str());
    }
    if (d <= 1e-15) return kInf;
    return 1.0 / d;
  };
  const double at0 = eval(Vec(dim));
  std::optional<double> atinf;
  if (q.at_infinity()) {
    // A^{-1}x stays at infinity, so the limit uses q_inf on both terms.
    const double d = (1.0 / *q.at_infinity()) * (1.0 - 1.0 / zeta);
    atinf = d > 1e-15 ? 1.0 / d : kInf;
  }
  return ExponentFunction::derived(dim, ValueClass::exponent_class, eval,
                                   std::max(1.0, theta_min), theta_max, at0, atinf,
                                   "theta(" + q.label() + ")");
}

}  // namespace hausdorff
