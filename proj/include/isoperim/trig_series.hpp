#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace isoperim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2pi). fmod is exact, so angles that differ by an
/// exactly representable multiple of 2pi reduce to the same value.
inline double reduce_angle(double theta) noexcept {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Truncated real Fourier series
///   f(theta) = c0 + sum_{n=1..N} (cos[n-1] cos(n theta) + sin[n-1] sin(n theta)).
/// No sign or convexity constraints; this is the raw carrier used for support
/// functions, curvature radii and differences of support functions.
struct TrigSeries {
  double c0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  [[nodiscard]] std::size_t degree() const noexcept { return cos.size(); }

  [[nodiscard]] double cos_coeff(std::size_t n) const noexcept {
    if (n == 0) return c0;
    return n <= cos.size() ? cos[n - 1] : 0.0;
  }
  [[nodiscard]] double sin_coeff(std::size_t n) const noexcept {
    return (n >= 1 && n <= sin.size()) ? sin[n - 1] : 0.0;
  }

  /// k-th derivative at theta, any k >= 0, evaluated termwise.
  [[nodiscard]] double derivative(double theta, int k) const {
    if (k < 0) throw std::invalid_argument("TrigSeries: negative derivative order");
    const double t = reduce_angle(theta);
    double acc = (k == 0) ? c0 : 0.0;
    for (std::size_t i = 0; i < cos.size(); ++i) {
      const double n = static_cast<double>(i + 1);
      const double a = cos[i];
      const double b = sin[i];
      if (a == 0.0 && b == 0.0) continue;
      const double c = std::cos(n * t);
      const double s = std::sin(n * t);
      double term = 0.0;
      switch (k % 4) {
        case 0: term = a * c + b * s; break;
        case 1: term = -a * s + b * c; break;
        case 2: term = -a * c - b * s; break;
        default: term = a * s - b * c; break;
      }
      acc += std::pow(n, k) * term;
    }
    return acc;
  }

  [[nodiscard]] double operator()(double theta) const { return derivative(theta, 0); }

  /// Sum of squared coefficients over modes n >= from.
  [[nodiscard]] double mode_energy(std::size_t from) const noexcept {
    double e = 0.0;
    for (std::size_t n = std::max<std::size_t>(from, 1); n <= degree(); ++n)
      e += cos[n - 1] * cos[n - 1] + sin[n - 1] * sin[n - 1];
    return e;
  }
};

inline TrigSeries operator-(const TrigSeries& lhs, const TrigSeries& rhs) {
  TrigSeries out;
  const std::size_t n = std::max(lhs.degree(), rhs.degree());
  out.c0 = lhs.c0 - rhs.c0;
  out.cos.resize(n);
  out.sin.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    out.cos[k - 1] = lhs.cos_coeff(k) - rhs.cos_coeff(k);
    out.sin[k - 1] = lhs.sin_coeff(k) - rhs.sin_coeff(k);
  }
  return out;
}

inline TrigSeries operator*(double s, TrigSeries f) {
  f.c0 *= s;
  for (auto& v : f.cos) v *= s;
  for (auto& v : f.sin) v *= s;
  return f;
}

/// period * mean(samples). Exact for trigonometric polynomials of degree
/// below samples.size()/2 when the samples are equispaced over one period.
inline double periodic_quadrature(std::span<const double> samples, double period) {
  if (samples.size() < 2) throw std::invalid_argument("periodic_quadrature: need at least 2 samples");
  // Neumaier summation; the grids here reach 10^4 points.
  double sum = 0.0, comp = 0.0;
  for (double v : samples) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return period * ((sum + comp) / static_cast<double>(samples.size()));
}

/// Equispaced nodes 2 pi k / m, k = 0..m-1.
inline std::vector<double> periodic_grid(std::size_t m) {
  std::vector<double> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
  return g;
}

struct Extremum {
  double theta = 0.0;
  double value = 0.0;
  bool polished = false;  ///< false: Newton did not converge, grid value kept
};

namespace detail {

// Newton on f' = 0 starting at a grid extremum, confined to one grid cell on
// either side. Rejects the step if it leaves the cell or worsens the value.
inline Extremum polish_extremum(const TrigSeries& f, double theta0, double h, bool maximize) {
  const double v0 = f(theta0);
  const double sign = maximize ? 1.0 : -1.0;
  double theta = theta0;
  for (int it = 0; it < 30; ++it) {
    const double d1 = f.derivative(theta, 1);
    if (d1 == 0.0) break;
    const double d2 = f.derivative(theta, 2);
    if (!(sign * d2 < 0.0)) return {theta0, v0, false};
    const double step = d1 / d2;
    theta -= step;
    if (std::abs(theta - theta0) > h) return {theta0, v0, false};
    if (std::abs(step) <= 1e-13) break;
    if (it == 29) return {theta0, v0, false};
  }
  const double v = f(theta);
  if (sign * (v - v0) < -1e-15 * std::max(1.0, std::abs(v0))) return {theta0, v0, false};
  return {reduce_angle(theta), v, true};
}

}  // namespace detail

/// All local maxima (maximize = true) or minima of f found on an equispaced
/// grid of m points, each refined by Newton. Plateaus count once.
inline std::vector<Extremum> local_extrema(const TrigSeries& f, std::size_t m, bool maximize) {
  if (m < 3) throw std::invalid_argument("local_extrema: grid too small");
  const auto grid = periodic_grid(m);
  std::vector<double> vals(m);
  for (std::size_t k = 0; k < m; ++k) vals[k] = f(grid[k]);
  const double sign = maximize ? 1.0 : -1.0;
  const double h = kTwoPi / static_cast<double>(m);
  std::vector<Extremum> out;
  for (std::size_t k = 0; k < m; ++k) {
    const double prev = sign * vals[(k + m - 1) % m];
    const double cur = sign * vals[k];
    const double next = sign * vals[(k + 1) % m];
    if (cur > prev && cur >= next) out.push_back(detail::polish_extremum(f, grid[k], h, maximize));
  }
  if (out.empty()) {
    // constant on the grid
    out.push_back(detail::polish_extremum(f, grid[0], h, maximize));
  }
  return out;
}

inline Extremum global_extremum(const TrigSeries& f, std::size_t m, bool maximize) {
  const auto all = local_extrema(f, m, maximize);
  const double sign = maximize ? 1.0 : -1.0;
  return *std::max_element(all.begin(), all.end(), [sign](const Extremum& a, const Extremum& b) {
    return sign * a.value < sign * b.value;
  });
}

inline Extremum global_max(const TrigSeries& f, std::size_t m) { return global_extremum(f, m, true); }
inline Extremum global_min(const TrigSeries& f, std::size_t m) { return global_extremum(f, m, false); }

}  // namespace isoperim
