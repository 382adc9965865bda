#pragma once

#include <memory>
#include <vector>

#include "hausdorff/flags.hpp"
#include "hausdorff/function.hpp"
#include "hausdorff/grid.hpp"
#include "hausdorff/matrixfam.hpp"

namespace hausdorff {

/// One multilinear averaging operator: integrate Phi(t)/|t|^n times the
/// product of transported inputs and, when symbols are present, the product
/// of the symbol gaps b_i(x) - b_i(A_i(t)x).
struct OperatorSpec {
  int dim = 1;
  int arity = 1;
  KernelSpec kernel = KernelSpec::zero(1);
  std::vector<MatrixFamily> families;
  std::vector<TestFunction> symbols;  // empty: plain multilinear operator
  std::vector<TestFunction> inputs;
  GridPtr t_grid;

  void validate() const;
};

struct ApplyResult {
  double value = 0.0;
  Flags flags;
};

ApplyResult apply(const OperatorSpec& spec, const Vec& x, int workers = 1);

struct OperatorOutput {
  TestFunction fn;                     // memoized pointwise evaluation
  std::shared_ptr<Flags> flags_seen;   // union of flags from all evaluations
};

/// Wraps apply(spec, .) in a memoizing TestFunction. Safe for concurrent
/// readers; recomputation is idempotent. The support radius is inferred
/// conservatively from the kernel-restricted t-nodes and the input supports.
OperatorOutput operator_output(const OperatorSpec& spec, int workers = 1);

enum class SpecialKind { hardy_14, hardy_cesaro_15 };

struct SpecialSpec {
  SpecialKind kind = SpecialKind::hardy_cesaro_15;
  int dim = 1;    // dimension of x (and of the t-cube)
  int arity = 1;
  std::function<double(const Vec&)> cube_weight;  // omega resp. psi on [0,1]^dim
  std::vector<ScalarFn> s;                        // hardy_cesaro: s_i(t); hardy: ignored (t_i)
  std::vector<TestFunction> symbols;
  std::vector<TestFunction> inputs;
  int cube_panels = 64;
  int cube_points = 8;
};

/// Direct unit-cube tensor quadrature, independent of the polar machinery.
double special_apply(const SpecialSpec& spec, const Vec& x);

/// Builds the equivalent general operator for a special form.
OperatorSpec general_form_of(const SpecialSpec& spec, const GridPtr& t_grid);

/// Max |apply(general) - special_apply| over the samples; the two sides use
/// different discretizations by construction.
double reduction_check(const SpecialSpec& spec, const GridPtr& t_grid,
                       std::span<const Vec> x_samples, int workers = 1);

}  // namespace hausdorff
