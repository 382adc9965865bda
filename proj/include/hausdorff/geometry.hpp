#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace hausdorff {

inline constexpr int kMaxDim = 3;

/// Point in R^n, n <= 3. Value type, fixed capacity.
class Vec {
 public:
  Vec() : dim_(1) {}
  explicit Vec(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: dim must be in [1,3]");
  }
  static Vec of(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v.c_[i++] = x;
    return v;
  }
  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  double norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    return std::sqrt(s);
  }
  Vec scaled(double a) const {
    Vec r(dim_);
    for (int i = 0; i < dim_; ++i) r.c_[i] = a * c_[i];
    return r;
  }
  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) s += (i ? "," : "") + std::to_string(c_[i]);
    return s + ")";
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_;
};

/// Surface measure of the unit sphere S^{n-1}: 2, 2*pi, 4*pi.
inline double surface_measure(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
  }
  throw std::invalid_argument("surface_measure: dim must be in [1,3]");
}

/// Dense n x n matrix, n <= 3. Determinant and inverse are closed-form.
class SquareMatrix {
 public:
  explicit SquareMatrix(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("SquareMatrix: n must be in [1,3]");
  }
  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static SquareMatrix scaled_identity(int n, double c) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }
  static SquareMatrix rotation2d(double angle) {
    SquareMatrix m(2);
    const double c = std::cos(angle), s = std::sin(angle);
    m.at(0, 0) = c; m.at(0, 1) = -s;
    m.at(1, 0) = s; m.at(1, 1) = c;
    return m;
  }

  int size() const { return n_; }
  double& at(int i, int j) { return a_[i * n_ + j]; }
  double at(int i, int j) const { return a_[i * n_ + j]; }

  double det() const {
    switch (n_) {
      case 1: return a_[0];
      case 2: return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
      default:
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
             - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
             + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }
  }

  SquareMatrix inverse() const {
    const double d = det();
    if (d == 0.0 || !std::isfinite(d))
      throw std::domain_error("SquareMatrix: matrix is singular");
    SquareMatrix r(n_);
    switch (n_) {
      case 1:
        r.a_[0] = 1.0 / d;
        break;
      case 2:
        r.at(0, 0) = at(1, 1) / d;  r.at(0, 1) = -at(0, 1) / d;
        r.at(1, 0) = -at(1, 0) / d; r.at(1, 1) = at(0, 0) / d;
        break;
      default:
        // adjugate / det
        r.at(0, 0) = (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) / d;
        r.at(0, 1) = (at(0, 2) * at(2, 1) - at(0, 1) * at(2, 2)) / d;
        r.at(0, 2) = (at(0, 1) * at(1, 2) - at(0, 2) * at(1, 1)) / d;
        r.at(1, 0) = (at(1, 2) * at(2, 0) - at(1, 0) * at(2, 2)) / d;
        r.at(1, 1) = (at(0, 0) * at(2, 2) - at(0, 2) * at(2, 0)) / d;
        r.at(1, 2) = (at(0, 2) * at(1, 0) - at(0, 0) * at(1, 2)) / d;
        r.at(2, 0) = (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0)) / d;
        r.at(2, 1) = (at(0, 1) * at(2, 0) - at(0, 0) * at(2, 1)) / d;
        r.at(2, 2) = (at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0)) / d;
        break;
    }
    return r;
  }

  double frobenius() const {
    double s = 0.0;
    for (int i = 0; i < n_ * n_; ++i) s += a_[i] * a_[i];
    return std::sqrt(s);
  }

  Vec apply(const Vec& x) const {
    if (x.dim() != n_) throw std::invalid_argument("SquareMatrix::apply: dim mismatch");
    Vec y(n_);
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += at(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  SquareMatrix minus_from_identity() const {  // I_n - A
    SquareMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = (i == j ? 1.0 : 0.0) - at(i, j);
    return r;
  }

 private:
  std::array<double, kMaxDim * kMaxDim> a_{};
  int n_;
};

/// The integer l with 2^{l-1} < v <= 2^l, exact on powers of two.
inline int dyadic_index(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("dyadic_index: need finite v > 0");
  int e = 0;
  const double m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
  return (m == 0.5) ? e - 1 : e;
}

/// Greatest integer T with rho < 2^{-T}, i.e. 2^T * rho < 1 <= 2^{T+1} * rho.
/// ldexp keeps the boundary comparisons exact when rho is a power of two.
inline int theta_index(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("theta_index: need finite rho > 0");
  int t = -std::ilogb(rho) - 1;
  while (std::ldexp(rho, t) >= 1.0) --t;
  while (std::ldexp(rho, t + 1) < 1.0) ++t;
  return t;
}

}  // namespace hausdorff
