#pragma once

// The ten geometric quantities entering W. The Fourier-diagonal ones come from
// closed-form mode sums; the extremal radii and the total squared curvature are
// computed numerically.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "isoperim/curve_model.hpp"
#include "isoperim/minimax.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

enum class Provenance { spectral, oracle, mixed };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::spectral: return "spectral";
    case Provenance::oracle: return "oracle";
    case Provenance::mixed: return "mixed";
  }
  return "unknown";
}

struct QuantitySet {
  double L = 0.0;                ///< perimeter
  double A = 0.0;                ///< enclosed area
  double A_tilde = 0.0;          ///< signed area of the evolute (always <= 0)
  double A_tilde_abs = 0.0;
  double int_rho_sq = 0.0;       ///< integral of rho^2 dtheta
  double int_rho_beta_sq = 0.0;  ///< integral of rho_beta^2 dtheta
  double rho_e = 0.0;            ///< circumradius
  double rho_i = 0.0;            ///< inradius
  double rho_M = 0.0;            ///< max curvature radius
  double rho_m = 0.0;            ///< min curvature radius
  double int_kappa_sq_ds = 0.0;  ///< total squared curvature
  Provenance provenance = Provenance::mixed;
};

/// Fields with closed-form mode sums.
struct SpectralQuantities {
  double L = 0.0;
  double A = 0.0;
  double A_tilde = 0.0;
  double A_tilde_abs = 0.0;
  double int_rho_sq = 0.0;
  double int_rho_beta_sq = 0.0;
};

inline SpectralQuantities spectral_quantities(const SupportFourier& curve) {
  const double a0 = curve.a0();
  double s_area = 0.0, s_evolute = 0.0, s_rho = 0.0, s_beta = 0.0;
  for (std::size_t n = 2; n <= curve.order(); ++n) {
    const double nn = static_cast<double>(n * n);
    const double e = curve.a(n) * curve.a(n) + curve.b(n) * curve.b(n);
    s_area += (nn - 1.0) * e;
    s_evolute += nn * (nn - 1.0) * e;
    s_rho += (nn - 1.0) * (nn - 1.0) * e;
    s_beta += nn * (nn - 1.0) * (nn - 1.0) * e;
  }
  SpectralQuantities q;
  q.L = kTwoPi * a0;
  q.A = kPi * a0 * a0 - 0.5 * kPi * s_area;
  q.A_tilde = -0.5 * kPi * s_evolute;
  q.A_tilde_abs = 0.5 * kPi * s_evolute;
  q.int_rho_sq = kTwoPi * a0 * a0 + kPi * s_rho;
  q.int_rho_beta_sq = kPi * s_beta;
  return q;
}

struct CurvatureExtremes {
  double rho_M = 0.0;
  double rho_m = 0.0;
  double theta_M = 0.0;
  double theta_m = 0.0;
  bool reduced_accuracy = false;  ///< a Newton polish failed; grid value kept
};

inline CurvatureExtremes extremal_curvature_radii(const SupportFourier& curve, std::size_t grid) {
  const TrigSeries rho = curve.curvature_series();
  const Extremum hi = global_max(rho, grid);
  const Extremum lo = global_min(rho, grid);
  return {hi.value, lo.value, hi.theta, lo.theta, !(hi.polished && lo.polished)};
}

inline CurvatureExtremes extremal_curvature_radii(const SupportFourier& curve) {
  require_convex(curve);
  return extremal_curvature_radii(curve, default_scan_grid(curve.order()));
}

struct CircleRadii {
  double rho_e = 0.0;
  double rho_i = 0.0;
  PlanePoint center_e;
  PlanePoint center_i;
};

inline std::size_t default_direction_count(std::size_t order) { return std::max<std::size_t>(1024, 32 * order); }

/// Circumradius and inradius with their centers. Bodies with several optimal
/// centers (constant width, for instance) return one of them.
inline CircleRadii circumradius_inradius(const SupportFourier& curve, std::size_t directions) {
  const auto outer = support_minimax_circle(curve.series(), CircleKind::circumscribed, directions);
  const auto inner = support_minimax_circle(curve.series(), CircleKind::inscribed, directions);
  return {outer.radius, inner.radius, outer.center, inner.center};
}

inline CircleRadii circumradius_inradius(const SupportFourier& curve) {
  require_convex(curve);
  return circumradius_inradius(curve, default_direction_count(curve.order()));
}

/// Total squared curvature  oint kappa^2 ds = int_0^{2pi} dtheta / rho(theta),
/// by equispaced quadrature on `nodes` points.
inline double total_squared_curvature(const SupportFourier& curve, std::size_t nodes) {
  const TrigSeries rho = curve.curvature_series();
  std::vector<double> inv(nodes);
  const auto grid = periodic_grid(nodes);
  for (std::size_t k = 0; k < nodes; ++k) inv[k] = 1.0 / rho(grid[k]);
  return periodic_quadrature(inv, kTwoPi);
}

inline double total_squared_curvature(const SupportFourier& curve) {
  require_convex(curve);
  return total_squared_curvature(curve, default_direction_count(curve.order()));
}

inline QuantitySet full_quantities(const SupportFourier& curve) {
  require_convex(curve);
  const auto sq = spectral_quantities(curve);
  const auto ext = extremal_curvature_radii(curve, default_scan_grid(curve.order()));
  const auto circ = circumradius_inradius(curve, default_direction_count(curve.order()));
  QuantitySet q;
  q.L = sq.L;
  q.A = sq.A;
  q.A_tilde = sq.A_tilde;
  q.A_tilde_abs = sq.A_tilde_abs;
  q.int_rho_sq = sq.int_rho_sq;
  q.int_rho_beta_sq = sq.int_rho_beta_sq;
  q.rho_e = circ.rho_e;
  q.rho_i = circ.rho_i;
  q.rho_M = ext.rho_M;
  q.rho_m = ext.rho_m;
  q.int_kappa_sq_ds = total_squared_curvature(curve, default_direction_count(curve.order()));
  q.provenance = Provenance::mixed;
  return q;
}

/// Names of the QuantitySet invariants that fail; empty when all hold.
inline std::vector<std::string> quantity_invariant_violations(const QuantitySet& q, double tol_rel = 1e-9) {
  std::vector<std::string> bad;
  const double slack_r = tol_rel * std::max({1.0, std::abs(q.rho_e), std::abs(q.rho_M)});
  if (!(q.L > 0.0)) bad.emplace_back("L > 0");
  if (!(q.A > 0.0)) bad.emplace_back("A > 0");
  if (!(q.rho_m > 0.0)) bad.emplace_back("rho_m > 0");
  if (!(q.rho_M >= q.rho_m - slack_r)) bad.emplace_back("rho_M >= rho_m");
  if (!(q.rho_i > 0.0)) bad.emplace_back("rho_i > 0");
  if (!(q.rho_e >= q.rho_i - slack_r)) bad.emplace_back("rho_e >= rho_i");
  if (!(q.A_tilde_abs >= 0.0) || std::abs(q.A_tilde_abs - std::abs(q.A_tilde)) > tol_rel * std::max(1.0, q.A_tilde_abs))
    bad.emplace_back("A_tilde_abs = |A_tilde|");
  if (!(q.int_rho_beta_sq >= 0.0)) bad.emplace_back("int_rho_beta_sq >= 0");
  if (!(q.int_kappa_sq_ds > 0.0)) bad.emplace_back("int_kappa_sq_ds > 0");
  if (!(q.L * q.L - 4.0 * kPi * q.A >= -tol_rel * q.L * q.L)) bad.emplace_back("L^2 - 4 pi A >= 0");
  return bad;
}

}  // namespace isoperim
