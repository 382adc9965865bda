#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hausdorff/geometry.hpp"

namespace hausdorff {

/// Thrown when a pointwise exponent-domination condition fails during
/// evaluation; carries the witnessing point in the message.
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

/// exponent_class: values in [1, inf]; real_class: any bounded real function
/// (used for the alpha(.) weights in dyadic factors).
enum class ValueClass { exponent_class, real_class };

/// A variable exponent p(.) with analytically cached bounds, origin value,
/// limit at infinity and (when closed-form) log-Holder moduli. Catalog
/// objects are closed forms; derived objects arise from the composition
/// algebra and carry conservative interval bounds.
class ExponentFunction {
 public:
  using Eval = std::function<double(const Vec&)>;

  ExponentFunction() = default;  // empty shell; assign before use

  static ExponentFunction constant(int dim, double value,
                                   ValueClass cls = ValueClass::exponent_class);
  /// a + b/(1+|x|)
  static ExponentFunction rational_bump(int dim, double a, double b,
                                        ValueClass cls = ValueClass::exponent_class);
  /// a + b/log(e+|x|)
  static ExponentFunction clamp_log(int dim, double a, double b,
                                    ValueClass cls = ValueClass::exponent_class);
  static ExponentFunction derived(int dim, ValueClass cls, Eval eval, double minimum,
                                  double maximum, double at_origin,
                                  std::optional<double> at_infinity, std::string label);

  double operator()(const Vec& x) const { return eval_(x); }

  int dim() const { return dim_; }
  ValueClass value_class() const { return cls_; }
  double minimum() const { return min_; }            // essential infimum
  double maximum() const { return max_; }            // essential supremum (may be inf)
  double at_origin() const { return at_origin_; }
  std::optional<double> at_infinity() const { return at_infinity_; }
  std::optional<double> log_holder_origin() const { return c0_log_; }
  std::optional<double> log_holder_infinity() const { return cinf_log_; }
  bool is_constant() const { return is_constant_; }
  double constant_value() const {
    if (!is_constant_) throw std::logic_error("ExponentFunction: not constant");
    return min_;
  }
  bool essentially_infinite() const {
    return min_ == std::numeric_limits<double>::infinity();
  }
  const std::string& label() const { return label_; }

 private:
  int dim_ = 1;
  ValueClass cls_ = ValueClass::exponent_class;
  Eval eval_;
  double min_ = 0.0, max_ = 0.0, at_origin_ = 0.0;
  std::optional<double> at_infinity_;
  std::optional<double> c0_log_, cinf_log_;
  bool is_constant_ = false;
  std::string label_;
};

struct ClassReport {
  bool in_P = false;        // measurable with values in [1, inf]
  bool in_P_b = false;      // 1 < p_- <= p_+ < inf
  bool in_P_infty = false;  // limit at infinity exists
  double c0_log_estimate = 0.0;
  double cinf_log_estimate = 0.0;
};

/// Sampled classification over a log-spaced radius sweep; the modulus
/// estimates are suprema over the sampled points and never decrease under
/// grid refinement.
ClassReport classify_exponent(const ExponentFunction& p, std::span<const double> radii);

std::vector<double> make_log_radii(int log2_lo, int log2_hi, int per_octave);

/// Probe directions used for sampled pointwise checks (unit vectors).
std::vector<Vec> probe_directions(int dim);

struct ComposeInputs {
  int n = 1;  // ambient dimension (enters alpha* through (gamma_i + n)/r_i)
  std::vector<double> beta, lambda, gamma;
  std::vector<ExponentFunction> r, q, alpha;
};

struct CompositeExponents {
  double beta = 0.0;
  double lambda = 0.0;
  ExponentFunction gamma_fn;    // real-class: sum gamma_i + sum gamma_i / r_i(.)
  ExponentFunction q_fn;        // exponent-class: 1/q = sum 1/q_i + sum 1/r_i
  ExponentFunction alpha_star;  // real-class
  std::optional<ExponentFunction> alpha_star_star;  // only when all r_i constant
};

CompositeExponents compose_theorem_exponents(const ComposeInputs& in);

/// 1/q_target = sum 1/(zeta q_i) + sum 1/r_i. Coincides with the composed
/// q(.) at zeta = 1.
ExponentFunction compose_target_exponent(double zeta, std::span<const ExponentFunction> q,
                                         std::span<const ExponentFunction> r);

/// zeta * q(.)
ExponentFunction scaled_exponent(const ExponentFunction& q, double zeta);

/// 1/theta(x) = 1/q(A^{-1} x) - 1/(zeta q(x)); identically infinite when the
/// difference vanishes (constant q with zeta = 1). Evaluation throws
/// HypothesisViolation where the difference is negative beyond slack.
ExponentFunction theta_exponent(const ExponentFunction& q, const SquareMatrix& a_inverse,
                                double zeta);

}  // namespace hausdorff
