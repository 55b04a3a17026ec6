#pragma once

// Strictly convex planar bodies described by a truncated Fourier support
// function p(theta) = a0 + sum_{n=1..N} (a_n cos n theta + b_n sin n theta).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isoperim/errors.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend PlanePoint operator+(PlanePoint a, PlanePoint b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend PlanePoint operator-(PlanePoint a, PlanePoint b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend PlanePoint operator*(double s, PlanePoint a) noexcept { return {s * a.x, s * a.y}; }
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }
};

/// Immutable support function of a convex body.
class SupportFourier {
 public:
  /// Margin used when none is given, relative to a0.
  static constexpr double kDefaultMarginFactor = 1e-3;

  /// cos[i] / sin[i] hold a_{i+1} / b_{i+1}. An empty harmonic list is padded to
  /// N = 1 with zeros. A negative margin selects the default 1e-3 * a0.
  SupportFourier(double a0, std::vector<double> cos, std::vector<double> sin, double margin = -1.0) {
    if (cos.size() != sin.size())
      throw std::invalid_argument("SupportFourier: cos and sin harmonics differ in length");
    if (cos.empty()) {
      cos.assign(1, 0.0);
      sin.assign(1, 0.0);
    }
    if (!std::isfinite(a0) || !std::isfinite(margin))
      throw std::invalid_argument("SupportFourier: non-finite a0 or margin");
    for (std::size_t i = 0; i < cos.size(); ++i)
      if (!std::isfinite(cos[i]) || !std::isfinite(sin[i]))
        throw std::invalid_argument("SupportFourier: non-finite coefficient at n = " + std::to_string(i + 1));
    if (!(a0 > 0.0)) throw std::invalid_argument("SupportFourier: a0 must be positive");
    series_.c0 = a0;
    series_.cos = std::move(cos);
    series_.sin = std::move(sin);
    margin_ = margin < 0.0 ? kDefaultMarginFactor * a0 : margin;
  }

  static SupportFourier disk(double radius, PlanePoint center = {}) {
    return SupportFourier(radius, {center.x}, {center.y});
  }

  [[nodiscard]] double a0() const noexcept { return series_.c0; }
  /// a_n for n >= 1; zero above the truncation order.
  [[nodiscard]] double a(std::size_t n) const noexcept { return series_.cos_coeff(n); }
  [[nodiscard]] double b(std::size_t n) const noexcept { return series_.sin_coeff(n); }
  [[nodiscard]] std::size_t order() const noexcept { return series_.degree(); }
  [[nodiscard]] double margin() const noexcept { return margin_; }
  [[nodiscard]] const std::vector<double>& cos_coeffs() const noexcept { return series_.cos; }
  [[nodiscard]] const std::vector<double>& sin_coeffs() const noexcept { return series_.sin; }
  [[nodiscard]] const TrigSeries& series() const noexcept { return series_; }

  /// rho = p + p'' as a series: mode n scaled by (1 - n^2).
  [[nodiscard]] TrigSeries curvature_series() const {
    TrigSeries r = series_;
    for (std::size_t n = 1; n <= r.degree(); ++n) {
      const double f = 1.0 - static_cast<double>(n * n);
      r.cos[n - 1] *= f;
      r.sin[n - 1] *= f;
    }
    return r;
  }

  /// Equal coefficients (trailing zero harmonics ignored) and equal margin.
  friend bool operator==(const SupportFourier& l, const SupportFourier& r) noexcept {
    if (l.a0() != r.a0() || l.margin_ != r.margin_) return false;
    const std::size_t n = std::max(l.order(), r.order());
    for (std::size_t k = 1; k <= n; ++k)
      if (l.a(k) != r.a(k) || l.b(k) != r.b(k)) return false;
    return true;
  }

 private:
  TrigSeries series_;
  double margin_ = 0.0;
};

/// Default grid for extremum scans of curvature-type series.
inline std::size_t default_scan_grid(std::size_t order) { return std::max<std::size_t>(512, 16 * order); }

inline double eval_support(const SupportFourier& curve, double theta, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("eval_support: order must be in {0,1,2,3}");
  return curve.series().derivative(theta, order);
}

inline double curvature_radius(const SupportFourier& curve, double theta) {
  return curve.series().derivative(theta, 0) + curve.series().derivative(theta, 2);
}

inline PlanePoint boundary_point(const SupportFourier& curve, double theta) {
  const double p = curve.series().derivative(theta, 0);
  const double dp = curve.series().derivative(theta, 1);
  const double c = std::cos(theta), s = std::sin(theta);
  return {p * c - dp * s, p * s + dp * c};
}

/// Center of curvature at the boundary point with outward normal angle theta.
inline PlanePoint evolute_point(const SupportFourier& curve, double theta) {
  const double dp = curve.series().derivative(theta, 1);
  const double d2p = curve.series().derivative(theta, 2);
  const double c = std::cos(theta), s = std::sin(theta);
  return {-dp * s - d2p * c, dp * c - d2p * s};
}

struct ConvexityCertificate {
  double min_rho = 0.0;
  double argmin_theta = 0.0;
  bool pass = false;
};

inline ConvexityCertificate check_convexity(const SupportFourier& curve, std::size_t grid_size, double margin) {
  if (grid_size < 8 * curve.order())
    throw std::invalid_argument("check_convexity: grid_size must be at least 8 * N");
  const Extremum lo = global_min(curve.curvature_series(), grid_size);
  return {lo.value, lo.theta, lo.value > margin};
}

inline ConvexityCertificate check_convexity(const SupportFourier& curve) {
  return check_convexity(curve, default_scan_grid(curve.order()), curve.margin());
}

/// Throws NotConvex unless the curve passes its own certificate.
inline void require_convex(const SupportFourier& curve) {
  const auto cert = check_convexity(curve);
  if (!cert.pass) throw NotConvex(cert.min_rho, curve.margin());
}

inline bool is_disk(const SupportFourier& curve, double tol) {
  return curve.series().mode_energy(2) <= tol * tol;
}

/// Support function of curve + shift: only (a1, b1) change.
inline SupportFourier translate(const SupportFourier& curve, PlanePoint shift) {
  auto c = curve.cos_coeffs();
  auto s = curve.sin_coeffs();
  c[0] += shift.x;
  s[0] += shift.y;
  return SupportFourier(curve.a0(), std::move(c), std::move(s), curve.margin());
}

/// Same body moved so its first harmonic vanishes.
inline SupportFourier recentre(const SupportFourier& curve) {
  return translate(curve, {-curve.a(1), -curve.b(1)});
}

namespace detail {

// 53-bit uniform in [0, 1); avoids the implementation-defined
// std::uniform_real_distribution so generated curves match across toolchains.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Random strictly convex curve with a0 = 1, zero first harmonic, and modes
/// 2..max_harmonic drawn uniformly from [-n^-decay, n^-decay]. When the draw is
/// not convex enough, all modes n >= 2 are scaled so min rho equals margin.
inline SupportFourier random_convex_curve(std::uint64_t seed, std::size_t max_harmonic, double decay,
                                          double margin) {
  if (max_harmonic < 2) throw std::invalid_argument("random_convex_curve: max_harmonic must be >= 2");
  if (!(decay > 2.0)) throw std::invalid_argument("random_convex_curve: decay must exceed 2");
  if (!(margin > 0.0 && margin < 1.0)) throw std::invalid_argument("random_convex_curve: margin must be in (0, 1)");

  std::mt19937_64 rng(seed);
  std::vector<double> c(max_harmonic, 0.0), s(max_harmonic, 0.0);
  for (std::size_t n = 2; n <= max_harmonic; ++n) {
    const double r = std::pow(static_cast<double>(n), -decay);
    c[n - 1] = r * (2.0 * detail::unit_uniform(rng) - 1.0);
    s[n - 1] = r * (2.0 * detail::unit_uniform(rng) - 1.0);
  }
  SupportFourier draw(1.0, c, s);
  const auto cert = check_convexity(draw, default_scan_grid(max_harmonic), margin);
  if (cert.pass) return draw;

  // rho = 1 + h(theta) with min h = min_rho - 1 < 0; 1 + scale * min h = margin.
  const double scale = (1.0 - margin) / (1.0 - cert.min_rho);
  for (std::size_t n = 2; n <= max_harmonic; ++n) {
    c[n - 1] *= scale;
    s[n - 1] *= scale;
  }
  return SupportFourier(1.0, std::move(c), std::move(s));
}

}  // namespace isoperim
