#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hausdorff/exponent.hpp"
#include "hausdorff/flags.hpp"
#include "hausdorff/geometry.hpp"
#include "hausdorff/grid.hpp"

namespace hausdorff {

/// Scalar function of the kernel variable t, from a small closed catalog.
class ScalarFn {
 public:
  static ScalarFn constant(double value);
  static ScalarFn coordinate(int index, double scale = 1.0);       // scale * t_j
  static ScalarFn norm(double scale = 1.0);                        // scale * |t|
  static ScalarFn power(int index, double scale, double exponent); // scale * t_j^e
  double operator()(const Vec& t) const { return eval_(t); }
  const std::string& name() const { return name_; }

 private:
  std::function<double(const Vec&)> eval_;
  std::string name_;
};

/// t |-> invertible n x n matrix A(t). The scalar-times-rotation structure,
/// when present, exposes s(t) for the log factors of the oscillation bounds.
class MatrixFamily {
 public:
  static MatrixFamily scalar(int n, int coordinate, double scale = 1.0);
  static MatrixFamily scaled_identity_family(int n, ScalarFn s);
  static MatrixFamily diagonal_powers(int n, std::vector<double> powers);
  static MatrixFamily rotation_scalar(int n, ScalarFn s, ScalarFn angle);

  SquareMatrix eval(const Vec& t) const;
  bool has_scalar_rotation() const { return static_cast<bool>(s_); }
  double scalar_part(const Vec& t) const;
  int dim() const { return n_; }
  const std::string& name() const { return name_; }

 private:
  int n_ = 1;
  std::function<SquareMatrix(const Vec&)> eval_;
  std::optional<ScalarFn> s_;
  std::string name_;
};

/// Nonnegative kernel Phi with a support descriptor; the support bounds let
/// the t-integrals skip exact-zero shells and suppress spurious tail flags.
class KernelSpec {
 public:
  static KernelSpec power_annulus(int n, double sigma, double r1, double r2,
                                  bool positive_orthant = false);
  static KernelSpec power_cube(int n, double c, double sigma, std::vector<double> powers);
  static KernelSpec gaussian_tail(int n, double c, double a, double sigma);
  static KernelSpec zero(int n);
  static KernelSpec custom(int n, std::function<double(const Vec&)> eval, double support_inner,
                           double support_outer, std::string name);

  double operator()(const Vec& t) const { return eval_(t); }
  int dim() const { return n_; }
  double support_inner() const { return support_inner_; }  // Phi = 0 for |t| below this
  double support_outer() const { return support_outer_; }  // Phi = 0 for |t| above this
  const std::string& name() const { return name_; }

 private:
  int n_ = 1;
  std::function<double(const Vec&)> eval_;
  double support_inner_ = 0.0;
  double support_outer_ = std::numeric_limits<double>::infinity();
  std::string name_;
};

inline double frobenius_norm(const SquareMatrix& a) { return a.frobenius(); }

struct DetBounds {
  double lower = 0.0;  // ||A||^{-n}
  double mid = 0.0;    // |det A^{-1}|
  double upper = 0.0;  // ||A^{-1}||^{n}
  bool holds = false;
};

DetBounds det_bounds_check(const SquareMatrix& a, double slack = 1e-12);

double rho_star(std::span<const MatrixFamily> families, const Vec& t);

/// Greatest integer T with max_i ||A_i(t)|| ||A_i^{-1}(t)|| < 2^{-T}.
int theta_star(std::span<const MatrixFamily> families, const Vec& t);

struct FactorParams {
  ExponentFunction q;
  double gamma = 0.0;
  double lambda = 0.0;
  ExponentFunction alpha;  // real-class, needs a limit at infinity
  double beta = 1.0;
  double zeta = 1.0;
  std::optional<double> r;  // constant r_i where the CMO bracket needs it
};

struct FactorBundle {
  double c = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  std::optional<double> varphi;
  double commutator_gap = 0.0;
  double one_norm_theta = 1.0;
  int theta = -1;
  Flags flags;
};

/// The per-family scalar factors entering every boundedness constant.
FactorBundle structural_factors(const MatrixFamily& family, const FactorParams& params,
                                const Vec& t, const QuadratureGrid& grid,
                                std::optional<int> theta_override = std::nullopt);

enum class BoundConstantId { c1, c2, c3, c4, c5, c6, c7 };

std::string to_string(BoundConstantId id);
BoundConstantId bound_constant_from_string(const std::string& s);

struct ConstantInputs {
  KernelSpec kernel = KernelSpec::zero(1);
  std::vector<MatrixFamily> families;
  std::vector<FactorParams> params;      // one per family
  double p_out = 1.0;                    // outer exponent for the (2 - theta)^{m - 1/p} factor
  std::vector<double> power_exponents;   // (n + gamma_i)(1/q_{i,inf} + lambda_i) for c6/c7
  int workers = 1;
};

/// Kernel integral whose finiteness is the quantitative hypothesis of the
/// corresponding boundedness claim; +inf with NORM_INFINITE when the shell
/// contributions do not decay.
NormValue bound_constant(BoundConstantId id, const ConstantInputs& in, const QuadratureGrid& t_grid,
                         const QuadratureGrid& x_grid);

}  // namespace hausdorff
