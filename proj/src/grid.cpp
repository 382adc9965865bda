#include "hausdorff/grid.hpp"

#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <sstream>

namespace hausdorff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInfExponent = 1e15;  // p(x) beyond this is treated as infinity

[[noreturn]] void throw_nonfinite(const Vec& x) {
  throw std::domain_error("non-finite integrand at node x=" + x.str());
}
}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  {
    std::scoped_lock lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  std::scoped_lock lk(mu);
  cache.emplace(n, std::make_pair(nodes, weights));
}

namespace {

// Radial nodes/weights on (a, b] for the chosen rule (no Jacobian).
void radial_rule(QuadRule rule, int n, double a, double b, std::vector<double>& r,
                 std::vector<double>& w) {
  r.resize(n);
  w.resize(n);
  if (rule == QuadRule::midpoint) {
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      r[i] = a + (i + 0.5) * h;
      w[i] = h;
    }
  } else {
    std::vector<double> xs, ws;
    gauss_legendre(n, xs, ws);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
      r[i] = mid + half * xs[i];
      w[i] = half * ws[i];
    }
  }
}

}  // namespace

QuadratureGrid::QuadratureGrid(const GridSpec& spec) : spec_(spec) {
  if (spec.dim < 1 || spec.dim > kMaxDim)
    throw std::invalid_argument("QuadratureGrid: dim must be in [1,3]");
  if (spec.k_min >= spec.k_max)
    throw std::invalid_argument("QuadratureGrid: need k_min < k_max");
  if (spec.radial_nodes < 2) throw std::invalid_argument("QuadratureGrid: radial_nodes >= 2");
  if (spec.angular_nodes < 1) throw std::invalid_argument("QuadratureGrid: angular_nodes >= 1");

  shells_.resize(static_cast<size_t>(spec.k_max - spec.k_min + 1));
  std::vector<double> r, wr;
  std::vector<double> us, wu;
  if (spec.dim == 3) gauss_legendre(spec.angular_nodes, us, wu);

  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    auto& shell = shells_[static_cast<size_t>(k - spec.k_min)];
    const double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k);
    radial_rule(spec.rule, spec.radial_nodes, a, b, r, wr);
    if (spec.dim == 1) {
      shell.reserve(static_cast<size_t>(2 * spec.radial_nodes));
      for (int i = 0; i < spec.radial_nodes; ++i) {
        shell.push_back({Vec::of({r[i]}), wr[i]});
        shell.push_back({Vec::of({-r[i]}), wr[i]});
      }
    } else if (spec.dim == 2) {
      const int M = spec.angular_nodes;
      const double wa = 2.0 * M_PI / M;
      shell.reserve(static_cast<size_t>(spec.radial_nodes * M));
      for (int i = 0; i < spec.radial_nodes; ++i)
        for (int j = 0; j < M; ++j) {
          const double th = wa * (j + 0.5);
          shell.push_back({Vec::of({r[i] * std::cos(th), r[i] * std::sin(th)}),
                           wr[i] * r[i] * wa});
        }
    } else {
      const int P = spec.angular_nodes;       // polar (cos phi) Gauss nodes
      const int M = 2 * spec.angular_nodes;   // azimuthal midpoints
      const double wa = 2.0 * M_PI / M;
      shell.reserve(static_cast<size_t>(spec.radial_nodes * P * M));
      for (int i = 0; i < spec.radial_nodes; ++i)
        for (int p = 0; p < P; ++p) {
          const double u = us[p], s = std::sqrt(std::max(0.0, 1.0 - u * u));
          for (int j = 0; j < M; ++j) {
            const double az = wa * (j + 0.5);
            shell.push_back({Vec::of({r[i] * s * std::cos(az), r[i] * s * std::sin(az),
                                      r[i] * u}),
                             wr[i] * r[i] * r[i] * wu[p] * wa});
          }
        }
    }
  }
}

size_t QuadratureGrid::node_count() const {
  size_t n = 0;
  for (const auto& s : shells_) n += s.size();
  return n;
}

double QuadratureGrid::total_weight() const {
  double t = 0.0;
  for (const auto& s : shells_)
    for (const auto& nd : s) t += nd.w;
  return t;
}

std::vector<double> QuadratureGrid::shell_sums(const std::function<double(const Vec&)>& g,
                                               int k_lo, int k_hi, int workers) const {
  k_lo = std::max(k_lo, spec_.k_min);
  k_hi = std::min(k_hi, spec_.k_max);
  if (k_lo > k_hi) return {};
  const int count = k_hi - k_lo + 1;
  std::vector<double> sums(static_cast<size_t>(count), 0.0);
  const auto run = [&](int from, int to) {
    for (int k = from; k <= to; ++k) {
      double s = 0.0;
      for (const auto& nd : shell(k)) {
        const double v = g(nd.x);
        if (std::isnan(v)) throw_nonfinite(nd.x);
        s += nd.w * v;
      }
      sums[static_cast<size_t>(k - k_lo)] = s;
    }
  };
  if (workers <= 1 || count < 2) {
    run(k_lo, k_hi);
  } else {
    const int nw = std::min(workers, count);
    std::vector<std::future<void>> fs;
    fs.reserve(static_cast<size_t>(nw));
    const int chunk = (count + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const int from = k_lo + w * chunk;
      const int to = std::min(k_hi, from + chunk - 1);
      if (from > to) break;
      fs.push_back(std::async(std::launch::async, run, from, to));
    }
    for (auto& f : fs) f.get();
  }
  return sums;
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<QuadratureGrid>(spec); }

TailCheck analyze_tails(std::span<const double> shell_sums, double rel_tol, bool check_inner,
                        bool check_outer) {
  TailCheck tc;
  if (shell_sums.size() < 3) return tc;
  double total = 0.0;
  for (double s : shell_sums) total += std::fabs(s);
  if (total == 0.0) return tc;
  const size_t n = shell_sums.size();
  if (check_inner) {
    const double a0 = std::fabs(shell_sums[0]), a1 = std::fabs(shell_sums[1]),
                 a2 = std::fabs(shell_sums[2]);
    if (a0 > rel_tol * total) {
      if (a0 >= 0.999 * a1 && a1 >= 0.999 * a2)
        tc.divergent_inner = true;
      else
        tc.suspect = true;
    }
  }
  if (check_outer) {
    const double a0 = std::fabs(shell_sums[n - 1]), a1 = std::fabs(shell_sums[n - 2]),
                 a2 = std::fabs(shell_sums[n - 3]);
    if (a0 > rel_tol * total) {
      if (a0 >= 0.999 * a1 && a1 >= 0.999 * a2)
        tc.divergent_outer = true;
      else
        tc.suspect = true;
    }
  }
  return tc;
}

double integrate(const TestFunction& f, const QuadratureGrid& grid, int workers, Flags* flags) {
  if (f.dim() != grid.dim()) throw std::invalid_argument("integrate: dim mismatch");
  const auto sums = grid.shell_sums([&](const Vec& x) { return f(x); }, grid.k_min(),
                                    grid.k_max(), workers);
  double total = 0.0;
  for (double s : sums) total += s;
  if (flags) {
    const bool skip_outer = std::isfinite(f.support_radius()) &&
                            f.support_radius() <= std::ldexp(1.0, grid.k_max());
    const auto tc = analyze_tails(sums, 1e-8, true, !skip_outer);
    if (tc.suspect || tc.divergent_inner || tc.divergent_outer)
      flags->insert(flag::kTruncationSuspect);
  }
  return total;
}

double modular(const TestFunction& f, const ExponentFunction& p, const PowerWeight& w, double eta,
               const QuadratureGrid& grid, const ModularOptions& opt,
               std::vector<double>* shell_parts) {
  if (eta <= 0.0) throw std::invalid_argument("modular: eta must be > 0");
  if (f.dim() != grid.dim() || p.dim() != grid.dim())
    throw std::invalid_argument("modular: dim mismatch");
  const int k_lo = std::max(opt.k_lo, grid.k_min());
  const int k_hi = std::min(opt.k_hi, grid.k_max());
  if (k_lo > k_hi) {
    if (shell_parts) shell_parts->clear();
    return 0.0;
  }
  const int count = k_hi - k_lo + 1;
  std::vector<double> sums(static_cast<size_t>(count), 0.0);
  std::vector<double> sups(static_cast<size_t>(count), 0.0);
  const auto run = [&](int from, int to) {
    for (int k = from; k <= to; ++k) {
      double acc = 0.0, sup = 0.0;
      for (const auto& nd : grid.shell(k)) {
        const double fv = f(nd.x);
        const double wv = w(nd.x);
        if (std::isnan(fv) || std::isnan(wv)) throw_nonfinite(nd.x);
        const double u = std::fabs(fv) * wv;
        if (u == 0.0) continue;
        const double scaled = u / eta;
        const double pe = p(nd.x);
        if (std::isnan(pe)) throw_nonfinite(nd.x);
        if (pe >= kInfExponent) {
          sup = std::max(sup, scaled);  // sup-norm convention on the p = inf region
        } else {
          acc += nd.w * std::pow(scaled, pe);
        }
      }
      sums[static_cast<size_t>(k - k_lo)] = acc;
      sups[static_cast<size_t>(k - k_lo)] = sup;
    }
  };
  if (opt.workers <= 1 || count < 2) {
    run(k_lo, k_hi);
  } else {
    const int nw = std::min(opt.workers, count);
    std::vector<std::future<void>> fs;
    const int chunk = (count + nw - 1) / nw;
    for (int ww = 0; ww < nw; ++ww) {
      const int from = k_lo + ww * chunk;
      const int to = std::min(k_hi, from + chunk - 1);
      if (from > to) break;
      fs.push_back(std::async(std::launch::async, run, from, to));
    }
    for (auto& fut : fs) fut.get();
  }
  double total = 0.0, sup = 0.0;
  for (double s : sums) total += s;
  for (double s : sups) sup = std::max(sup, s);
  if (shell_parts) *shell_parts = std::move(sums);
  return total + sup;
}

CubeRule::CubeRule(int dim, int panels, int points) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("CubeRule: dim must be in [1,3]");
  if (panels < 1 || points < 1) throw std::invalid_argument("CubeRule: need panels, points >= 1");
  std::vector<double> xs, ws;
  gauss_legendre(points, xs, ws);
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h, half = 0.5 * h;
    for (int i = 0; i < points; ++i) {
      nodes_1d_.push_back(mid + half * xs[i]);
      weights_1d_.push_back(half * ws[i]);
    }
  }
}

double CubeRule::integrate(const std::function<double(const Vec&)>& g) const {
  const size_t n = nodes_1d_.size();
  double total = 0.0;
  Vec x(dim_);
  if (dim_ == 1) {
    for (size_t i = 0; i < n; ++i) {
      x[0] = nodes_1d_[i];
      const double v = g(x);
      if (std::isnan(v)) throw_nonfinite(x);
      total += weights_1d_[i] * v;
    }
  } else if (dim_ == 2) {
    for (size_t i = 0; i < n; ++i) {
      x[0] = nodes_1d_[i];
      double row = 0.0;
      for (size_t j = 0; j < n; ++j) {
        x[1] = nodes_1d_[j];
        const double v = g(x);
        if (std::isnan(v)) throw_nonfinite(x);
        row += weights_1d_[j] * v;
      }
      total += weights_1d_[i] * row;
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      x[0] = nodes_1d_[i];
      double plane = 0.0;
      for (size_t j = 0; j < n; ++j) {
        x[1] = nodes_1d_[j];
        double row = 0.0;
        for (size_t k = 0; k < n; ++k) {
          x[2] = nodes_1d_[k];
          const double v = g(x);
          if (std::isnan(v)) throw_nonfinite(x);
          row += weights_1d_[k] * v;
        }
        plane += weights_1d_[j] * row;
      }
      total += weights_1d_[i] * plane;
    }
  }
  return total;
}

}  // namespace hausdorff
