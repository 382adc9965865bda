#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "hausdorff/exponent.hpp"
#include "hausdorff/geometry.hpp"

namespace hausdorff {

struct LipschitzDeclaration {
  double beta = 1.0;      // Holder order in (0, 1]
  double constant = 0.0;  // best declared constant
};

/// An evaluable function R^n -> R with the metadata the norm machinery needs:
/// a support radius (inf when unbounded), a radial flag, optional closed-form
/// norm oracles and an optional declared Lipschitz constant.
class TestFunction {
 public:
  using Eval = std::function<double(const Vec&)>;

  TestFunction() = default;
  TestFunction(int dim, Eval eval, double support_radius, bool radial, std::string name)
      : dim_(dim), eval_(std::move(eval)), support_radius_(support_radius), radial_(radial),
        name_(std::move(name)) {}

  // catalog
  static TestFunction truncated_power(int dim, double a, double radius);  // |x|^a on |x|<=R
  static TestFunction gaussian(int dim, double a);                        // exp(-a|x|^2)
  static TestFunction bump(int dim, double radius);                       // smooth, supported in |x|<R
  static TestFunction indicator_annulus(int dim, double r1, double r2);   // chi_{r1<|x|<=r2}
  static TestFunction constant(int dim, double value);
  static TestFunction zero(int dim) { return constant(dim, 0.0); }
  // symbol catalog
  static TestFunction linear_coordinate(int dim, int index);  // x_j, Lip^1 constant 1
  static TestFunction abs_power(int dim, double a);           // |x|^a, Lip^a constant 1 for a<=1
  static TestFunction sign_coordinate(int dim, int index);    // sign(x_j)
  static TestFunction radial_step(int dim, double radius);    // -1 inside |x|<=R, +1 outside

  double operator()(const Vec& x) const { return eval_(x); }
  int dim() const { return dim_; }
  double support_radius() const { return support_radius_; }
  bool radial() const { return radial_; }
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& oracle_norms() const { return oracle_norms_; }
  const std::optional<LipschitzDeclaration>& declared_lip() const { return declared_lip_; }

  TestFunction& with_declared_lip(double beta, double constant) {
    declared_lip_ = LipschitzDeclaration{beta, constant};
    return *this;
  }
  TestFunction& with_oracle_norm(const std::string& key, double value) {
    oracle_norms_[key] = value;
    return *this;
  }

  /// c * f; scales any declared Lipschitz constant and norm oracles.
  static TestFunction scaled(const TestFunction& f, double c);
  /// f(s x); support shrinks by s, Lipschitz constant picks up |s|^beta.
  static TestFunction dilated(const TestFunction& f, double s);

 private:
  int dim_ = 1;
  Eval eval_;
  double support_radius_ = std::numeric_limits<double>::infinity();
  bool radial_ = false;
  std::string name_;
  std::map<std::string, double> oracle_norms_;
  std::optional<LipschitzDeclaration> declared_lip_;
};

/// |x|^gamma (constant power) or |x|^{gamma(x)} (variable power).
class PowerWeight {
 public:
  static PowerWeight unit() { return PowerWeight(0.0); }
  static PowerWeight constant_power(double gamma) { return PowerWeight(gamma); }
  static PowerWeight variable_power(ExponentFunction gamma_fn);

  double operator()(const Vec& x) const;
  bool is_constant_power() const { return !gamma_fn_.has_value(); }
  double gamma() const;
  const std::optional<ExponentFunction>& gamma_fn() const { return gamma_fn_; }

  /// Closed-form mass of |x|^gamma over B(0, R); requires gamma > -n.
  double ball_mass(double radius, int dim) const;

 private:
  explicit PowerWeight(double gamma) : gamma_(gamma) {}
  double gamma_ = 0.0;
  std::optional<ExponentFunction> gamma_fn_;
};

}  // namespace hausdorff
