#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hausdorff/flags.hpp"
#include "hausdorff/grid.hpp"

namespace hausdorff {

enum class TailPolicy {
  full,       // norm stands in for an integral over all of R^n: check tails
  restricted  // deliberately truncated domain: tails are exact, skip checks
};

struct LuxemburgOptions {
  int k_lo = std::numeric_limits<int>::min();
  int k_hi = std::numeric_limits<int>::max();
  double rel_tol = 1e-10;
  int max_iter = 200;
  int bracket_log2_limit = 200;
  int workers = 1;
  TailPolicy tail = TailPolicy::full;
};

/// inf{eta > 0 : F_p(f w / eta) <= 1}. Bracket expansion by powers of 4 from
/// eta = 1, then geometric bisection to relative width rel_tol. The probe
/// lattice is preserved exactly under scaling f by powers of 4, which the
/// ratio-invariance suite relies on.
NormValue luxemburg_norm(const TestFunction& f, const ExponentFunction& p, const PowerWeight& w,
                         const QuadratureGrid& grid, const LuxemburgOptions& opt = {});

struct BracketCheck {
  bool holds_i = false;   // F_p(f) <= C ==> ||f|| <= max{C^{1/q-}, C^{1/q+}}
  bool holds_ii = false;  // F_p(f) >= C ==> ||f|| >= min{C^{1/q-}, C^{1/q+}}
  double modular_value = 0.0;
  double norm = 0.0;
};

BracketCheck modular_norm_bracket_check(const TestFunction& f, const ExponentFunction& p,
                                        const PowerWeight& w, const QuadratureGrid& grid,
                                        double tol = 1e-9, int workers = 1);

struct HerzOptions {
  int k0_lo = -20;
  int k0_hi = 20;
  int workers = 1;
};

/// Morrey-Herz norm sup_{k0} 2^{-k0 lambda} (sum_{k<=k0} ||2^{k alpha(.)} f
/// chi_k||_{L^{q(.)}_w}^p)^{1/p}; lambda = 0 collapses to the full-sum Herz
/// norm over the grid's shell range.
NormValue herz_morrey_norm(const TestFunction& f, const ExponentFunction& alpha, double lambda,
                           double p, const ExponentFunction& q, const PowerWeight& w,
                           const QuadratureGrid& grid, const HerzOptions& opt = {});

struct RadiusGrid {
  int log2_lo = -20;
  int log2_hi = 20;
};

/// Two-weight central Morrey norm: sup_R w1(B(0,R))^{-(lambda + 1/p_inf)}
/// ||f chi_{B(0,R)}||_{L^{p(.)}_{w2}} over dyadic radii R = 2^j.
NormValue central_morrey_norm(const TestFunction& f, const ExponentFunction& p, double lambda,
                              const PowerWeight& w1, const PowerWeight& w2,
                              const QuadratureGrid& grid, const RadiusGrid& radii,
                              int workers = 1);

/// Central mean oscillation: sup_R (w(B)^{-1} int_B |b - b_{w,B}|^q w)^{1/q}.
NormValue cmo_norm(const TestFunction& b, double q, const PowerWeight& w,
                   const QuadratureGrid& grid, const RadiusGrid& radii, int workers = 1);

struct PairSampling {
  int count = 512;       // seeded random pairs
  double radius = 8.0;   // sampling box half-width
  uint64_t seed = 1;
  int dyadic_levels = 40;  // structured pairs approaching the origin
};

struct LipschitzResult {
  double empirical_lower_bound = 0.0;
  std::optional<double> declared;
  double reconciled = 0.0;
  Flags flags;
};

LipschitzResult lipschitz_seminorm(const TestFunction& b, double beta, const PairSampling& pairs,
                                   double tol = 1e-9);

struct Cube {
  Vec center;
  double half_width = 1.0;
};

std::vector<Cube> default_cube_family(int dim, int count, uint64_t seed);

/// Lower bound for the BMO norm: max mean oscillation over the sampled cubes.
double bmo_norm(const TestFunction& b, std::span<const Cube> cubes, int nodes_per_axis = 2048);

struct EmbeddingResult {
  ExponentFunction r_exponent;
  double one_norm = 0.0;
  double empirical_K = 0.0;
  Flags flags;
};

/// Numerical probe of the embedding L^{p(.)}_w -> L^{q(.)}_w via 1/r = 1/q -
/// 1/p. Uses ||chi_{supp f}||_{L^{r(.)}} instead of ||1|| when the global
/// norm of 1 is infinite.
EmbeddingResult embedding_constant(const TestFunction& f, const ExponentFunction& p,
                                   const ExponentFunction& q, const PowerWeight& w,
                                   const QuadratureGrid& grid, int workers = 1);

struct LemmaShellResult {
  double lhs = 0.0;
  double rhs_without_constant = 0.0;
  double ratio = 0.0;
  Flags flags;
};

/// ||f chi_j|| against 2^{j(lambda - alpha(0))} (j < 0) or
/// 2^{j(lambda - alpha_inf)} (j >= 0) times the Morrey-Herz norm.
LemmaShellResult lemma_ve_check(const TestFunction& f, const ExponentFunction& alpha,
                                double lambda, double p, const ExponentFunction& q,
                                const PowerWeight& w, int j, const QuadratureGrid& grid,
                                const HerzOptions& opt = {});

}  // namespace hausdorff
