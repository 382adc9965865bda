#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hausdorff/exponent.hpp"
#include "hausdorff/flags.hpp"
#include "hausdorff/function.hpp"
#include "hausdorff/geometry.hpp"

namespace hausdorff {

enum class QuadRule { midpoint, gauss_legendre };

struct GridSpec {
  int dim = 1;
  int k_min = -32;
  int k_max = 32;
  int radial_nodes = 64;
  int angular_nodes = 64;  // ignored for dim = 1
  QuadRule rule = QuadRule::gauss_legendre;
};

struct QuadNode {
  Vec x;
  double w;
};

/// Polar-dyadic grid: shells C_k = {2^{k-1} < |x| <= 2^k} for k in
/// [k_min, k_max], each discretized by a radial rule times an angular rule.
/// Shell boundaries sit exactly on powers of two, so dyadic-shell norms are
/// re-aggregations of shell sums with no boundary leakage.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(const GridSpec& spec);

  int dim() const { return spec_.dim; }
  int k_min() const { return spec_.k_min; }
  int k_max() const { return spec_.k_max; }
  const GridSpec& spec() const { return spec_; }
  std::span<const QuadNode> shell(int k) const { return shells_[static_cast<size_t>(k - spec_.k_min)]; }
  size_t node_count() const;
  double total_weight() const;

  /// Sum of w * g(x) per shell over [k_lo, k_hi], reduced in shell order.
  /// With workers > 1 each shell is still summed by a single worker, so the
  /// result is identical for every worker count.
  std::vector<double> shell_sums(const std::function<double(const Vec&)>& g, int k_lo, int k_hi,
                                 int workers = 1) const;

 private:
  GridSpec spec_;
  std::vector<std::vector<QuadNode>> shells_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr make_grid(const GridSpec& spec);

struct TailCheck {
  bool divergent_inner = false;
  bool divergent_outer = false;
  bool suspect = false;
};

/// Inspects boundary-shell contributions: a boundary shell carrying more than
/// rel_tol of the total is suspect; if contributions fail to decay toward the
/// boundary the truncated sum has no meaning and is reported divergent.
TailCheck analyze_tails(std::span<const double> shell_sums, double rel_tol, bool check_inner,
                        bool check_outer);

/// Quadrature approximation of the integral of f over the covered annulus.
double integrate(const TestFunction& f, const QuadratureGrid& grid, int workers = 1,
                 Flags* flags = nullptr);

struct ModularOptions {
  int k_lo;
  int k_hi;
  int workers = 1;
};

/// F_p(f w / eta): integral of (|f| w / eta)^{p(x)} over the shells, plus the
/// sup-norm term on the region where p = inf. Overflow yields +inf, which is
/// what the bisection driver needs. Non-finite integrand values throw.
double modular(const TestFunction& f, const ExponentFunction& p, const PowerWeight& w, double eta,
               const QuadratureGrid& grid, const ModularOptions& opt,
               std::vector<double>* shell_parts = nullptr);

/// Tensor product rule on [0,1]^dim: composite Gauss-Legendre with `panels`
/// panels of `points` nodes per axis.
class CubeRule {
 public:
  CubeRule(int dim, int panels, int points);
  double integrate(const std::function<double(const Vec&)>& g) const;
  int dim() const { return dim_; }

 private:
  int dim_;
  std::vector<double> nodes_1d_, weights_1d_;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace hausdorff
