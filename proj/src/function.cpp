#include "hausdorff/function.hpp"

#include <cmath>
#include <sstream>

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Classical unweighted L^2 norm of |x|^a chi_{|x|<=R}: closed form used as a
// construction-time oracle entry.
double power_l2(int dim, double a, double radius) {
  const double e = 2.0 * a + dim;
  if (e <= 0.0) return kInf;
  return std::sqrt(surface_measure(dim) * std::pow(radius, e) / e);
}
}  // namespace

TestFunction TestFunction::truncated_power(int dim, double a, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("truncated_power: radius must be > 0");
  if (a < 0.0) throw std::invalid_argument("truncated_power: negative power is unbounded at 0");
  TestFunction f(dim,
                 [a, radius](const Vec& x) {
                   const double r = x.norm();
                   if (r > radius) return 0.0;
                   return a == 0.0 ? 1.0 : std::pow(r, a);
                 },
                 radius, true,
                 "truncated_power(a=" + std::to_string(a) + ",R=" + std::to_string(radius) + ")");
  f.with_oracle_norm("L2", power_l2(dim, a, radius));
  return f;
}

TestFunction TestFunction::gaussian(int dim, double a) {
  if (a <= 0.0) throw std::invalid_argument("gaussian: decay must be > 0");
  TestFunction f(dim, [a](const Vec& x) {
    const double r = x.norm();
    return std::exp(-a * r * r);
  }, kInf, true, "gaussian(a=" + std::to_string(a) + ")");
  if (dim == 1) f.with_oracle_norm("L2", std::sqrt(std::sqrt(M_PI / (2.0 * a))));
  return f;
}

TestFunction TestFunction::bump(int dim, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("bump: radius must be > 0");
  return TestFunction(dim,
                      [radius](const Vec& x) {
                        const double u = x.norm() / radius;
                        if (u >= 1.0) return 0.0;
                        return std::exp(-1.0 / (1.0 - u * u));
                      },
                      radius, true, "bump(R=" + std::to_string(radius) + ")");
}

TestFunction TestFunction::indicator_annulus(int dim, double r1, double r2) {
  if (!(r2 > r1) || r1 < 0.0) throw std::invalid_argument("indicator_annulus: need 0 <= r1 < r2");
  TestFunction f(dim,
                 [r1, r2](const Vec& x) {
                   const double r = x.norm();
                   return (r > r1 && r <= r2) ? 1.0 : 0.0;
                 },
                 r2, true,
                 "indicator_annulus(" + std::to_string(r1) + "," + std::to_string(r2) + ")");
  const double measure =
      surface_measure(dim) * (std::pow(r2, dim) - std::pow(r1, dim)) / dim;
  f.with_oracle_norm("L2", std::sqrt(measure));
  return f;
}

TestFunction TestFunction::constant(int dim, double value) {
  TestFunction f(dim, [value](const Vec&) { return value; }, kInf, true,
                 "constant(" + std::to_string(value) + ")");
  f.with_declared_lip(1.0, 0.0);
  return f;
}

TestFunction TestFunction::linear_coordinate(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("linear_coordinate: bad index");
  TestFunction f(dim, [index](const Vec& x) { return x[index]; }, kInf, false,
                 "linear_coordinate(" + std::to_string(index) + ")");
  f.with_declared_lip(1.0, 1.0);
  return f;
}

TestFunction TestFunction::abs_power(int dim, double a) {
  if (a <= 0.0) throw std::invalid_argument("abs_power: power must be > 0");
  TestFunction f(dim, [a](const Vec& x) { return std::pow(x.norm(), a); }, kInf, true,
                 "abs_power(" + std::to_string(a) + ")");
  // ||x|^a - |y|^a| <= |x - y|^a for 0 < a <= 1
  if (a <= 1.0) f.with_declared_lip(a, 1.0);
  return f;
}

TestFunction TestFunction::sign_coordinate(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("sign_coordinate: bad index");
  return TestFunction(dim,
                      [index](const Vec& x) {
                        if (x[index] > 0.0) return 1.0;
                        if (x[index] < 0.0) return -1.0;
                        return 0.0;
                      },
                      kInf, false, "sign_coordinate(" + std::to_string(index) + ")");
}

TestFunction TestFunction::radial_step(int dim, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("radial_step: radius must be > 0");
  return TestFunction(dim,
                      [radius](const Vec& x) { return x.norm() <= radius ? -1.0 : 1.0; },
                      kInf, true, "radial_step(R=" + std::to_string(radius) + ")");
}

TestFunction TestFunction::scaled(const TestFunction& f, double c) {
  TestFunction g(f.dim_, [base = f.eval_, c](const Vec& x) { return c * base(x); },
                 c == 0.0 ? 0.0 : f.support_radius_, f.radial_,
                 "scaled(" + std::to_string(c) + "," + f.name_ + ")");
  if (f.declared_lip_)
    g.with_declared_lip(f.declared_lip_->beta, std::fabs(c) * f.declared_lip_->constant);
  for (const auto& [k, v] : f.oracle_norms_) g.with_oracle_norm(k, std::fabs(c) * v);
  return g;
}

TestFunction TestFunction::dilated(const TestFunction& f, double s) {
  if (s <= 0.0) throw std::invalid_argument("dilated: scale must be > 0");
  TestFunction g(f.dim_, [base = f.eval_, s](const Vec& x) { return base(x.scaled(s)); },
                 f.support_radius_ == kInf ? kInf : f.support_radius_ / s, f.radial_,
                 "dilated(" + std::to_string(s) + "," + f.name_ + ")");
  if (f.declared_lip_)
    g.with_declared_lip(f.declared_lip_->beta,
                        std::pow(s, f.declared_lip_->beta) * f.declared_lip_->constant);
  return g;
}

PowerWeight PowerWeight::variable_power(ExponentFunction gamma_fn) {
  if (!std::isfinite(gamma_fn.minimum()) || !std::isfinite(gamma_fn.maximum()))
    throw std::invalid_argument("variable_power: gamma(.) must be bounded");
  PowerWeight w(0.0);
  w.gamma_fn_ = std::move(gamma_fn);
  return w;
}

double PowerWeight::operator()(const Vec& x) const {
  const double r = x.norm();
  const double g = gamma_fn_ ? (*gamma_fn_)(x) : gamma_;
  if (g == 0.0) return 1.0;
  return std::pow(r, g);
}

double PowerWeight::gamma() const {
  if (gamma_fn_) throw std::logic_error("PowerWeight: variable power has no single gamma");
  return gamma_;
}

double PowerWeight::ball_mass(double radius, int dim) const {
  if (gamma_fn_)
    throw std::invalid_argument("PowerWeight::ball_mass: closed form needs a constant power");
  if (gamma_ <= -dim)
    throw std::invalid_argument("PowerWeight::ball_mass: gamma <= -n, ball weight diverges");
  return surface_measure(dim) * std::pow(radius, gamma_ + dim) / (gamma_ + dim);
}

}  // namespace hausdorff
