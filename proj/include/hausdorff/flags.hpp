#pragma once

#include <cmath>
#include <set>
#include <string>

namespace hausdorff {

/// Honesty markers attached to numeric results. A flagged value is still a
/// value; flags record where a truncated domain or boundary supremum made it
/// an approximation of a different quality than usual.
using Flags = std::set<std::string>;

namespace flag {
inline constexpr const char* kTruncationSuspect = "TRUNCATION_SUSPECT";
inline constexpr const char* kNormInfinite = "NORM_INFINITE";
inline constexpr const char* kSupAtBoundary = "SUP_AT_BOUNDARY";
inline constexpr const char* kDomainTruncated = "DOMAIN_TRUNCATED";
inline constexpr const char* kZeroInput = "ZERO_INPUT";
inline constexpr const char* kUndeclared = "UNDECLARED";
inline constexpr const char* kDeclaredInconsistent = "DECLARED_INCONSISTENT";
inline constexpr const char* kHypothesisFail = "HYPOTHESIS_FAIL";
inline constexpr const char* kInequalityDegenerate = "INEQUALITY_DEGENERATE";
inline constexpr const char* kVarphiUnavailable = "VARPHI_UNAVAILABLE";
inline constexpr const char* kMemberExcluded = "MEMBER_EXCLUDED";
inline constexpr const char* kSupportRestricted = "SUPPORT_RESTRICTED";
}  // namespace flag

inline void merge_flags(Flags& into, const Flags& from) {
  into.insert(from.begin(), from.end());
}

struct NormValue {
  double value = 0.0;
  Flags flags;
};

/// Outer powers (Herz p, CMO r, 1/p roots). Integer and half-integer cases
/// go through multiplications/sqrt so that scaling a value by 4^k scales the
/// result exactly; the ratio-invariance checks rely on this.
inline double pow_outer(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 0.5) return std::sqrt(x);
  if (p == 3.0) return x * x * x;
  if (p == 4.0) { const double s = x * x; return s * s; }
  if (p == 0.25) return std::sqrt(std::sqrt(x));
  return std::pow(x, p);
}

}  // namespace hausdorff
