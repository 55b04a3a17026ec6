#pragma once

// Distance of a body from its Steiner disk and the stability bounds
//   h1(K, S(K))^2 <= C2 W,   h2(K, S(K))^2 <= C3 W
// with C2 = max{1, 3 / (2D)} and C3 = 2 pi / (3D).

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "isoperim/curve_model.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/inequality.hpp"
#include "isoperim/quantities.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

struct SteinerDisk {
  PlanePoint center;             ///< (a1, b1)
  PlanePoint center_quadrature;  ///< (1/pi) int p(theta) (cos, sin) dtheta, by quadrature
  double radius = 0.0;           ///< L / (2 pi) = a0
};

inline SteinerDisk steiner_disk(const SupportFourier& curve) {
  const std::size_t m = std::max<std::size_t>(256, 32 * curve.order());
  const auto grid = periodic_grid(m);
  std::vector<double> fx(m), fy(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double p = curve.series()(grid[k]);
    fx[k] = p * std::cos(grid[k]);
    fy[k] = p * std::sin(grid[k]);
  }
  SteinerDisk s;
  s.center = {curve.a(1), curve.b(1)};
  s.center_quadrature = {periodic_quadrature(fx, kTwoPi) / kPi, periodic_quadrature(fy, kTwoPi) / kPi};
  s.radius = curve.a0();
  return s;
}

/// Support function of the Steiner disk of curve.
inline SupportFourier steiner_disk_curve(const SupportFourier& curve) {
  return SupportFourier::disk(curve.a0(), {curve.a(1), curve.b(1)});
}

/// max_theta |p_A - p_B|, grid scan plus Newton.
inline double h1_distance(const SupportFourier& lhs, const SupportFourier& rhs) {
  const TrigSeries diff = lhs.series() - rhs.series();
  const std::size_t m = std::max<std::size_t>(1024, 32 * std::max(lhs.order(), rhs.order()));
  const double hi = global_max(diff, m).value;
  const double lo = global_min(diff, m).value;
  return std::max({0.0, hi, -lo});
}

/// int |p_A - p_B|^2 dtheta via Parseval.
inline double h2_distance_sq(const SupportFourier& lhs, const SupportFourier& rhs) {
  const TrigSeries diff = lhs.series() - rhs.series();
  return kPi * (2.0 * diff.c0 * diff.c0 + diff.mode_energy(1));
}

/// The same integral by equispaced quadrature of the squared difference.
inline double h2_distance_sq_quadrature(const SupportFourier& lhs, const SupportFourier& rhs) {
  const TrigSeries diff = lhs.series() - rhs.series();
  const std::size_t m = std::max<std::size_t>(1024, 32 * diff.degree());
  const auto grid = periodic_grid(m);
  std::vector<double> f(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double v = diff(grid[k]);
    f[k] = v * v;
  }
  return periodic_quadrature(f, kTwoPi);
}

struct StabilityConstants {
  double C2 = 0.0;  ///< sup-norm constant
  double C3 = 0.0;  ///< L2-norm constant
};

inline StabilityConstants stability_constants(const ParamSet& p) {
  const auto d = forms::discriminant(p);
  if (!d.positive()) throw UndefinedConstant("stability constants need D > 0, got D = " + std::to_string(d.value));
  return {std::max(1.0, 3.0 / (2.0 * d.value)), kTwoPi / (3.0 * d.value)};
}

enum class StabilityClass { stable, unstable, indeterminate };

inline std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::unstable: return "unstable";
    case StabilityClass::indeterminate: return "indeterminate";
  }
  return "unknown";
}

/// stable: admissible with D > 0. unstable: admissible with D = 0,
/// lambda = xi = zeta = 0 and 2 alpha + 4 pi delta + mu = 0, where the
/// ellipse-like modes p = a0 + eps cos 2 theta leave W = 0 at any distance from
/// the Steiner disk. Everything else is indeterminate.
inline StabilityClass classify_stability(const ParamSet& p) {
  const auto cond = check_conditions(p);
  if (cond.ok_1_13) return StabilityClass::stable;
  if (cond.ok_1_9 && forms::discriminant(p).zero() && p.lambda == 0.0 && p.xi == 0.0 && p.zeta == 0.0 &&
      forms::disk_block(p).zero())
    return StabilityClass::unstable;
  return StabilityClass::indeterminate;
}

struct StabilityReport {
  SteinerDisk steiner;
  double W = 0.0;
  double h1 = 0.0;
  double h1_sq = 0.0;
  double h2_sq = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double tol_1_14 = 0.0;  ///< effective absolute tolerance for the sup-norm bound
  double tol_1_15 = 0.0;  ///< effective absolute tolerance for the L2 bound
  bool bound_1_14_ok = false;
  bool bound_1_15_ok = false;
  StabilityClass classification = StabilityClass::indeterminate;
};

/// Recentres the curve at its Steiner point, then checks both bounds with
/// tolerance tol * max(1, C W).
inline StabilityReport verify_stability(const ParamSet& p, const SupportFourier& curve, double tol) {
  const auto cond = check_conditions(p);
  if (!cond.ok_1_13) {
    const std::string line = cond.ok_1_9 ? std::string("D > 0") : cond.failed_line_1_9;
    throw ConditionNotMet("stability", line);
  }
  const SupportFourier centred = recentre(curve);
  const SupportFourier disk = SupportFourier::disk(centred.a0());
  const auto consts = stability_constants(p);

  StabilityReport r;
  r.steiner = steiner_disk(curve);
  r.W = eval_W(p, full_quantities(centred)).W;
  r.h1 = h1_distance(centred, disk);
  r.h1_sq = r.h1 * r.h1;
  r.h2_sq = h2_distance_sq(centred, disk);
  r.C2 = consts.C2;
  r.C3 = consts.C3;
  r.tol_1_14 = tol * std::max(1.0, std::abs(r.C2 * r.W));
  r.tol_1_15 = tol * std::max(1.0, std::abs(r.C3 * r.W));
  r.bound_1_14_ok = r.h1_sq <= r.C2 * r.W + r.tol_1_14;
  r.bound_1_15_ok = r.h2_sq <= r.C3 * r.W + r.tol_1_15;
  r.classification = classify_stability(p);
  return r;
}

struct InstabilityWitness {
  SupportFourier curve;
  double W = 0.0;
  double h2_sq = 0.0;
};

/// p = 1 + eps cos 2 theta: W vanishes while h2^2 = pi eps^2, so no constant
/// C with h2^2 <= C W exists.
inline InstabilityWitness instability_witness(const ParamSet& p, double eps) {
  if (classify_stability(p) != StabilityClass::unstable)
    throw ConditionNotMet("instability", "parameter set is not in the unstable regime");
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw std::invalid_argument("instability_witness: eps must lie in (0, 1/3)");
  SupportFourier curve(1.0, {0.0, eps}, {0.0, 0.0});
  const double w = eval_W(p, full_quantities(curve)).W;
  const double h2 = h2_distance_sq(curve, SupportFourier::disk(1.0));
  return {std::move(curve), w, h2};
}

}  // namespace isoperim
