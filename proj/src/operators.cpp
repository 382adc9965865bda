#include "hausdorff/operators.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double int_pow(double v, int n) {
  double r = v;
  for (int i = 1; i < n; ++i) r *= v;
  return r;
}
}  // namespace

void OperatorSpec::validate() const {
  if (arity < 1) throw std::invalid_argument("OperatorSpec: arity must be >= 1");
  if (static_cast<int>(families.size()) != arity ||
      static_cast<int>(inputs.size()) != arity)
    throw std::invalid_argument("OperatorSpec: need one family and one input per slot");
  if (!symbols.empty() && static_cast<int>(symbols.size()) != arity)
    throw std::invalid_argument("OperatorSpec: symbols, when present, must have length arity");
  if (kernel.dim() != dim) throw std::invalid_argument("OperatorSpec: kernel dim mismatch");
  for (const auto& f : families)
    if (f.dim() != dim) throw std::invalid_argument("OperatorSpec: family dim mismatch");
  for (const auto& f : inputs)
    if (f.dim() != dim) throw std::invalid_argument("OperatorSpec: input dim mismatch");
  for (const auto& b : symbols)
    if (b.dim() != dim) throw std::invalid_argument("OperatorSpec: symbol dim mismatch");
  if (!t_grid || t_grid->dim() != dim)
    throw std::invalid_argument("OperatorSpec: t grid missing or dim mismatch");
}

ApplyResult apply(const OperatorSpec& spec, const Vec& x, int workers) {
  spec.validate();
  const int n = spec.dim;
  const auto& grid = *spec.t_grid;
  const bool has_symbols = !spec.symbols.empty();

  const auto integrand = [&](const Vec& t) -> double {
    const double phi = spec.kernel(t);
    if (phi == 0.0) return 0.0;
    double v = phi / int_pow(t.norm(), n);
    for (int i = 0; i < spec.arity; ++i) {
      const SquareMatrix a = spec.families[static_cast<size_t>(i)].eval(t);
      const Vec ax = a.apply(x);
      v *= spec.inputs[static_cast<size_t>(i)](ax);
      if (has_symbols) {
        const auto& b = spec.symbols[static_cast<size_t>(i)];
        v *= b(x) - b(ax);
      }
      if (v == 0.0) return 0.0;
    }
    if (std::isnan(v))
      throw std::domain_error("apply: non-finite integrand at t=" + t.str());
    return v;
  };

  int k_lo = grid.k_min(), k_hi = grid.k_max();
  if (spec.kernel.support_outer() < kInf)
    k_hi = std::min(k_hi, dyadic_index(spec.kernel.support_outer()));
  if (spec.kernel.support_inner() > 0.0)
    k_lo = std::max(k_lo, dyadic_index(spec.kernel.support_inner()));

  ApplyResult out;
  const auto sums = grid.shell_sums(integrand, k_lo, k_hi, workers);
  double total = 0.0;
  for (double s : sums) total += s;
  const bool check_inner = !(spec.kernel.support_inner() > 0.0);
  const auto tc = analyze_tails(sums, 1e-8, check_inner, !(spec.kernel.support_outer() < kInf));
  if (tc.divergent_inner || tc.divergent_outer) {
    out.value = kInf;
    out.flags.insert(flag::kNormInfinite);
    return out;
  }
  if (tc.suspect) out.flags.insert(flag::kTruncationSuspect);
  out.value = total;
  return out;
}

namespace {

struct VecKey {
  std::array<uint64_t, kMaxDim> bits{};
  int dim = 1;
  bool operator==(const VecKey& o) const { return dim == o.dim && bits == o.bits; }
};

struct VecKeyHash {
  size_t operator()(const VecKey& k) const {
    size_t h = std::hash<int>()(k.dim);
    for (uint64_t b : k.bits) h ^= std::hash<uint64_t>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

VecKey key_of(const Vec& x) {
  VecKey k;
  k.dim = x.dim();
  for (int i = 0; i < x.dim(); ++i) k.bits[static_cast<size_t>(i)] = std::bit_cast<uint64_t>(x[i]);
  return k;
}

struct MemoState {
  std::mutex mu;
  std::unordered_map<VecKey, double, VecKeyHash> cache;
};

}  // namespace

OperatorOutput operator_output(const OperatorSpec& spec, int workers) {
  spec.validate();
  auto memo = std::make_shared<MemoState>();
  auto flags_seen = std::make_shared<Flags>();

  // support: the operator value at x vanishes unless some kernel-supported
  // t-node maps x into every input's support
  double support = 0.0;
  bool unbounded = false;
  for (const auto& f : spec.inputs)
    if (!std::isfinite(f.support_radius())) unbounded = true;
  if (!unbounded) {
    for (int k = spec.t_grid->k_min(); k <= spec.t_grid->k_max(); ++k)
      for (const auto& nd : spec.t_grid->shell(k)) {
        if (spec.kernel(nd.x) == 0.0) continue;
        double reach = kInf;
        for (int i = 0; i < spec.arity; ++i) {
          const double nai = spec.families[static_cast<size_t>(i)].eval(nd.x).inverse().frobenius();
          reach = std::min(reach, nai * spec.inputs[static_cast<size_t>(i)].support_radius());
        }
        support = std::max(support, reach);
      }
  } else {
    support = kInf;
  }

  OperatorSpec held = spec;
  TestFunction fn(
      spec.dim,
      [held, memo, flags_seen, workers](const Vec& x) {
        const VecKey k = key_of(x);
        {
          std::scoped_lock lk(memo->mu);
          auto it = memo->cache.find(k);
          if (it != memo->cache.end()) return it->second;
        }
        const ApplyResult r = apply(held, x, workers);
        std::scoped_lock lk(memo->mu);
        memo->cache.emplace(k, r.value);
        flags_seen->insert(r.flags.begin(), r.flags.end());
        return r.value;
      },
      support, false, "operator_output");
  return OperatorOutput{std::move(fn), flags_seen};
}

double special_apply(const SpecialSpec& spec, const Vec& x) {
  if (static_cast<int>(spec.inputs.size()) != spec.arity)
    throw std::invalid_argument("special_apply: need one input per slot");
  if (!spec.symbols.empty() && static_cast<int>(spec.symbols.size()) != spec.arity)
    throw std::invalid_argument("special_apply: symbols must have length arity");
  if (spec.kind == SpecialKind::hardy_14 && spec.dim != spec.arity)
    throw std::invalid_argument("special_apply: the weighted multi-slot form needs m = n");
  if (spec.kind == SpecialKind::hardy_cesaro_15 &&
      static_cast<int>(spec.s.size()) != spec.arity)
    throw std::invalid_argument("special_apply: need one scalar map s_i per slot");
  const bool has_symbols = !spec.symbols.empty();
  const CubeRule rule(spec.dim, spec.cube_panels, spec.cube_points);
  return rule.integrate([&](const Vec& t) -> double {
    double v = spec.cube_weight ? spec.cube_weight(t) : 1.0;
    if (v == 0.0) return 0.0;
    for (int i = 0; i < spec.arity; ++i) {
      const double si = spec.kind == SpecialKind::hardy_14 ? t[i]
                                                           : spec.s[static_cast<size_t>(i)](t);
      const Vec sx = x.scaled(si);
      v *= spec.inputs[static_cast<size_t>(i)](sx);
      if (has_symbols) {
        const auto& b = spec.symbols[static_cast<size_t>(i)];
        v *= b(x) - b(sx);
      }
      if (v == 0.0) return 0.0;
    }
    return v;
  });
}

OperatorSpec general_form_of(const SpecialSpec& spec, const GridPtr& t_grid) {
  OperatorSpec op;
  op.dim = spec.dim;
  op.arity = spec.arity;
  op.symbols = spec.symbols;
  op.inputs = spec.inputs;
  op.t_grid = t_grid;
  const int n = spec.dim;
  auto w = spec.cube_weight;
  // Phi(t) = |t|^n * weight(t) * chi_{[0,1]^n}(t)
  op.kernel = KernelSpec::custom(
      n,
      [n, w](const Vec& t) -> double {
        for (int i = 0; i < n; ++i)
          if (t[i] <= 0.0 || t[i] > 1.0) return 0.0;
        const double base = w ? w(t) : 1.0;
        if (base == 0.0) return 0.0;
        return base * int_pow(t.norm(), n);
      },
      0.0, std::sqrt(static_cast<double>(n)), "cube_reduction_kernel");
  op.families.reserve(static_cast<size_t>(spec.arity));
  for (int i = 0; i < spec.arity; ++i) {
    if (spec.kind == SpecialKind::hardy_14)
      op.families.push_back(MatrixFamily::scalar(n, i));
    else
      op.families.push_back(
          MatrixFamily::scaled_identity_family(n, spec.s[static_cast<size_t>(i)]));
  }
  return op;
}

double reduction_check(const SpecialSpec& spec, const GridPtr& t_grid,
                       std::span<const Vec> x_samples, int workers) {
  const OperatorSpec op = general_form_of(spec, t_grid);
  double worst = 0.0;
  for (const Vec& x : x_samples) {
    const double a = apply(op, x, workers).value;
    const double b = special_apply(spec, x);
    worst = std::max(worst, std::fabs(a - b));
  }
  return worst;
}

}  // namespace hausdorff
