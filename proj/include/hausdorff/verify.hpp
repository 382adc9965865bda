#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hausdorff/norms.hpp"
#include "hausdorff/operators.hpp"

namespace hausdorff {

/// The seven boundedness claims, named by source/target scale and symbol class.
enum class TheoremKind {
  morrey_herz_lipschitz,   // Morrey-Herz sources, Lipschitz symbols
  herz_lipschitz,          // Herz sources, Lipschitz symbols
  lebesgue_lipschitz,      // weighted Lebesgue bound, Lipschitz symbols
  morrey_herz_cmo,         // Morrey-Herz sources, central-BMO symbols
  herz_cmo,                // Herz sources, central-BMO symbols
  central_morrey_lipschitz,
  central_morrey_cmo,
};

std::string to_string(TheoremKind k);
TheoremKind theorem_from_string(const std::string& s);
BoundConstantId constant_for(TheoremKind k);

struct TheoremParams {
  double zeta = 1.0;
  std::vector<double> gamma;   // weight powers gamma_i
  std::vector<double> lambda;  // Morrey parameters lambda_i
  std::vector<double> beta;    // Lipschitz orders beta_i
  std::vector<double> p_i;     // source outer exponents
  std::vector<ExponentFunction> q, r, alpha;
  double p_out = 1.0;
  double lambda_out = 0.0;              // target Morrey parameter (central Morrey claims)
  double gamma_out = 0.0;               // target normalizer power (central Morrey claims)
  std::vector<double> alpha_weights;    // inner weight powers alpha_i (central Morrey claims)
};

struct GridBundle {
  GridPtr x_grid;
  GridPtr t_grid;
  HerzOptions herz;
  RadiusGrid radii;
  PairSampling lip_pairs;
  std::vector<Vec> x_samples;
  std::vector<Vec> t_samples;
  int cube_panels = 64;
  int cube_points = 8;
};

struct ScanSpec {
  int dilation_log2_lo = -6, dilation_log2_hi = 6, dilation_step = 1;
  int amplitude_log4_lo = -3, amplitude_log4_hi = 3;
  int symbol_log4_lo = -3, symbol_log4_hi = 3;
};

struct Scenario {
  std::string name;
  TheoremKind theorem = TheoremKind::lebesgue_lipschitz;
  OperatorSpec op;
  TheoremParams params;
  GridBundle grids;
  ScanSpec scan;
  std::optional<SpecialSpec> special;  // set for reduction scenarios
  uint64_t seed = 1;
  int workers = 1;
};

struct HypothesisResult {
  std::string name;
  bool pass = false;
  bool blocking = false;  // failure makes the verification computation undefined
  std::string detail;
};

std::vector<HypothesisResult> check_hypotheses(const Scenario& sc);

struct VerificationReport {
  std::vector<HypothesisResult> hypotheses;
  bool hypotheses_pass = false;
  bool computed = false;  // false when a blocking hypothesis failed
  std::string constant_id;
  double constant_value = 0.0;
  std::vector<double> source_norms;
  std::vector<double> symbol_norms;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
  Flags flags;
  double elapsed_seconds = 0.0;  // informational; never serialized into reports
};

VerificationReport verify_theorem(const Scenario& sc, bool run_hypotheses = true);

/// Just the theorem's kernel-integral constant for the scenario.
NormValue scenario_bound_constant(const Scenario& sc);

enum class ScanFamily { dilation, amplitude, symbol };

std::string to_string(ScanFamily f);

struct ScanResult {
  ScanFamily family = ScanFamily::dilation;
  std::vector<double> factors;
  std::vector<double> ratios;     // NaN for excluded members
  double base_ratio = 0.0;
  double sup_ratio = 0.0;
  double drift = 0.0;             // max |log ratio - median log ratio|
  Flags flags;
};

ScanResult ratio_scan(const Scenario& sc, ScanFamily family);

enum class ProofInequality { shell_transport, cmo_gap };

struct InequalityWitness {
  int k = 0;
  double t_coord = 0.0;
  double lhs = 0.0;
  double rhs_without_constant = 0.0;
  double empirical_constant = 0.0;
  Flags flags;
};

/// shell_transport: ||f_i(A_i(t).) chi_k|| against the transported-shell sum;
/// cmo_gap: the symbol-gap norm over B_k against the central-oscillation bound.
std::vector<InequalityWitness> proof_inequality_check(ProofInequality id, const Scenario& sc,
                                                      int k, int family_index = 0);

}  // namespace hausdorff
