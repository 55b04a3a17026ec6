#pragma once

// The eight-parameter functional
//   W = alpha int rho^2 + delta L^2 + mu A + sigma |A~| + eta int rho_beta^2
//       + lambda (rho_e - rho_i)^2 + xi (rho_M - rho_m)^2 + zeta oint kappa^2 ds,
// its admissibility conditions, its Fourier lower bounds, and the named
// parameter presets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isoperim/curve_model.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/quantities.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

struct ParamSet {
  double alpha = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  double xi = 0.0;
  double zeta = 0.0;

  static constexpr std::array<std::string_view, 8> kNames{"alpha", "delta", "mu",     "sigma",
                                                          "eta",   "lambda", "xi", "zeta"};

  [[nodiscard]] std::array<double, 8> values() const noexcept {
    return {alpha, delta, mu, sigma, eta, lambda, xi, zeta};
  }
  static ParamSet from_values(const std::array<double, 8>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }
  [[nodiscard]] bool finite() const noexcept {
    const auto v = values();
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  }
  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

/// Relative slack applied to every comparison against zero. Linear forms that
/// vanish algebraically (several presets sit exactly on a boundary) evaluate to
/// a few ulps either side of zero in double precision.
inline constexpr double kConditionSlack = 1e-12;

/// A linear form in the parameters with the magnitude of its largest addends,
/// so comparisons can be made relative to that scale.
struct LinearForm {
  double value = 0.0;
  double scale = 0.0;

  [[nodiscard]] double slack() const noexcept { return kConditionSlack * std::max(1.0, scale); }
  [[nodiscard]] bool nonnegative() const noexcept { return value >= -slack(); }
  [[nodiscard]] bool positive() const noexcept { return value > slack(); }
  [[nodiscard]] bool zero() const noexcept { return std::abs(value) <= slack(); }
};

namespace forms {

template <std::size_t K>
LinearForm combine(const std::array<double, K>& addends) {
  LinearForm f;
  for (double a : addends) {
    f.value += a;
    f.scale = std::max(f.scale, std::abs(a));
  }
  return f;
}

/// 2 alpha + 4 pi delta + mu - 4 zeta   (coefficient of a0^2)
inline LinearForm a0_block(const ParamSet& p) {
  return combine<4>({2.0 * p.alpha, 4.0 * kPi * p.delta, p.mu, -4.0 * p.zeta});
}
/// 2 alpha + sigma - 2 eta - 4 zeta   (n^2 coefficient of f)
inline LinearForm quadratic_coeff(const ParamSet& p) {
  return combine<4>({2.0 * p.alpha, p.sigma, -2.0 * p.eta, -4.0 * p.zeta});
}
/// D = 6 pi alpha - pi mu + 4 pi sigma + 24 pi eta + 4 lambda + 4 xi - 12 pi zeta
inline LinearForm discriminant(const ParamSet& p) {
  return combine<7>({6.0 * kPi * p.alpha, -kPi * p.mu, 4.0 * kPi * p.sigma, 24.0 * kPi * p.eta, 4.0 * p.lambda,
                     4.0 * p.xi, -12.0 * kPi * p.zeta});
}
/// 2 alpha + 4 pi delta + mu   (disk equality form)
inline LinearForm disk_block(const ParamSet& p) { return combine<3>({2.0 * p.alpha, 4.0 * kPi * p.delta, p.mu}); }

}  // namespace forms

struct ConditionReport {
  bool ok_1_9 = false;   ///< admissibility: W >= 0 holds
  bool ok_1_11 = false;  ///< disk equality: 2a + 4 pi d + mu = 0 and zeta = 0
  bool ok_1_12 = false;  ///< lambda^2 + xi^2 + zeta^2 > 0
  bool ok_1_13 = false;  ///< stability: admissibility with D > 0
  bool ok_3_2 = false;   ///< equality iff disk
  double D = 0.0;

  // residuals, before any slack
  double a0_block = 0.0;         ///< 2 alpha + 4 pi delta + mu - 4 zeta, needs >= 0
  double quadratic_coeff = 0.0;  ///< 2 alpha + sigma - 2 eta - 4 zeta, needs >= 0
  double disk_block = 0.0;       ///< 2 alpha + 4 pi delta + mu
  double sum_sq_1_12 = 0.0;      ///< lambda^2 + xi^2 + zeta^2
  double sum_sq_3_2 = 0.0;       ///< lambda^2 + xi^2

  /// First failed admissibility line in human-readable form, empty if ok_1_9.
  std::string failed_line_1_9;
};

inline ConditionReport check_conditions(const ParamSet& p) {
  const auto a0b = forms::a0_block(p);
  const auto qc = forms::quadratic_coeff(p);
  const auto d = forms::discriminant(p);
  const auto db = forms::disk_block(p);

  ConditionReport r;
  r.D = d.value;
  r.a0_block = a0b.value;
  r.quadratic_coeff = qc.value;
  r.disk_block = db.value;
  r.sum_sq_1_12 = p.lambda * p.lambda + p.xi * p.xi + p.zeta * p.zeta;
  r.sum_sq_3_2 = p.lambda * p.lambda + p.xi * p.xi;

  if (!(p.eta >= 0.0)) r.failed_line_1_9 = "eta >= 0";
  else if (!(p.xi >= 0.0)) r.failed_line_1_9 = "xi >= 0";
  else if (!(p.zeta >= 0.0)) r.failed_line_1_9 = "zeta >= 0";
  else if (!(p.lambda <= 0.0)) r.failed_line_1_9 = "lambda <= 0";
  else if (!a0b.nonnegative()) r.failed_line_1_9 = "2 alpha + 4 pi delta + mu - 4 zeta >= 0";
  else if (!qc.nonnegative()) r.failed_line_1_9 = "2 alpha + sigma - 2 eta - 4 zeta >= 0";
  else if (!d.nonnegative())
    r.failed_line_1_9 = "6 pi alpha - pi mu + 4 pi sigma + 24 pi eta + 4 lambda + 4 xi - 12 pi zeta >= 0";

  r.ok_1_9 = r.failed_line_1_9.empty();
  r.ok_1_11 = db.zero() && p.zeta == 0.0;
  r.ok_1_12 = r.sum_sq_1_12 > 0.0;
  r.ok_1_13 = r.ok_1_9 && d.positive();
  r.ok_3_2 = p.eta >= 0.0 && p.xi >= 0.0 && p.lambda <= 0.0 && r.sum_sq_3_2 > 0.0 && p.zeta == 0.0 && db.zero() &&
             qc.nonnegative() && d.nonnegative();
  return r;
}

/// Weight of mode n in the Fourier expansion of W:
///   f(n) = 2 eta n^4 + (2 alpha + sigma - 2 eta - 4 zeta) n^2
///          + (-2 alpha - mu + 4 lambda / pi + 4 xi / pi + 4 zeta).
inline double f_poly(const ParamSet& p, int n) {
  if (n < 2) throw std::invalid_argument("f_poly: n must be >= 2");
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return 2.0 * p.eta * nn * nn + (2.0 * p.alpha + p.sigma - 2.0 * p.eta - 4.0 * p.zeta) * nn +
         (-2.0 * p.alpha - p.mu + 4.0 * p.lambda / kPi + 4.0 * p.xi / kPi + 4.0 * p.zeta);
}

struct WBreakdown {
  double W = 0.0;
  std::array<double, 8> terms{};  ///< in ParamSet field order
  [[nodiscard]] double abs_sum() const noexcept {
    double s = 0.0;
    for (double t : terms) s += std::abs(t);
    return s;
  }
};

namespace detail {

// Neumaier compensated sum.
template <class Range>
double compensated_sum(const Range& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail

inline WBreakdown eval_W(const ParamSet& p, const QuantitySet& q) {
  WBreakdown w;
  const double gap_ei = q.rho_e - q.rho_i;
  const double gap_Mm = q.rho_M - q.rho_m;
  w.terms = {p.alpha * q.int_rho_sq,
             p.delta * q.L * q.L,
             p.mu * q.A,
             p.sigma * q.A_tilde_abs,
             p.eta * q.int_rho_beta_sq,
             p.lambda * gap_ei * gap_ei,
             p.xi * gap_Mm * gap_Mm,
             p.zeta * q.int_kappa_sq_ds};
  w.W = detail::compensated_sum(w.terms);
  return w;
}

struct FourierBounds {
  double fourier_bound = 0.0;  ///< (pi/2) sum_{n>=2} (n^2 - 1) f(n) (a_n^2 + b_n^2)
  double uniform_bound = 0.0;  ///< (3/2) D sum_{n>=2} (a_n^2 + b_n^2)
};

inline FourierBounds fourier_lower_bound(const ParamSet& p, const SupportFourier& curve) {
  FourierBounds b;
  std::vector<double> terms;
  for (std::size_t n = 2; n <= curve.order(); ++n) {
    const double e = curve.a(n) * curve.a(n) + curve.b(n) * curve.b(n);
    if (e == 0.0) continue;
    const double nn = static_cast<double>(n * n);
    terms.push_back((nn - 1.0) * f_poly(p, static_cast<int>(n)) * e);
  }
  b.fourier_bound = 0.5 * kPi * detail::compensated_sum(terms);
  b.uniform_bound = 1.5 * forms::discriminant(p).value * curve.series().mode_energy(2);
  return b;
}

struct InequalityReport {
  WBreakdown w;
  double fourier_bound = 0.0;
  double uniform_bound = 0.0;
  double tol = 0.0;  ///< effective absolute tolerance used for chain_ok
  bool chain_ok = false;
};

/// Checks W >= fourier_bound >= uniform_bound >= 0, each within tol scaled by
/// max(1, sum |terms|). Reuses precomputed quantities of the same curve.
inline InequalityReport verify_chain(const ParamSet& p, const SupportFourier& curve, const QuantitySet& q,
                                     double tol) {
  const auto cond = check_conditions(p);
  if (!cond.ok_1_9) throw ConditionNotMet("admissibility", cond.failed_line_1_9);
  InequalityReport r;
  r.w = eval_W(p, q);
  const auto fb = fourier_lower_bound(p, curve);
  r.fourier_bound = fb.fourier_bound;
  r.uniform_bound = fb.uniform_bound;
  r.tol = tol * std::max(1.0, r.w.abs_sum());
  r.chain_ok = r.w.W >= r.fourier_bound - r.tol && r.fourier_bound >= r.uniform_bound - r.tol && r.uniform_bound >= -r.tol;
  return r;
}

inline InequalityReport verify_chain(const ParamSet& p, const SupportFourier& curve, double tol) {
  const auto cond = check_conditions(p);
  if (!cond.ok_1_9) throw ConditionNotMet("admissibility", cond.failed_line_1_9);
  return verify_chain(p, curve, full_quantities(curve), tol);
}

// ---------------------------------------------------------------- presets

enum class Preset { iso_1_1, rev_1_5, py_1_6, gao_1_7, gao_1_8, cor_3_3, cor_3_4, cor_3_5, cor_3_6, panxu };

inline constexpr std::array<Preset, 10> kAllPresets{Preset::iso_1_1, Preset::rev_1_5, Preset::py_1_6, Preset::gao_1_7,
                                                    Preset::gao_1_8, Preset::cor_3_3, Preset::cor_3_4, Preset::cor_3_5,
                                                    Preset::cor_3_6, Preset::panxu};

inline std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::iso_1_1: return "iso_1_1";
    case Preset::rev_1_5: return "rev_1_5";
    case Preset::py_1_6: return "py_1_6";
    case Preset::gao_1_7: return "gao_1_7";
    case Preset::gao_1_8: return "gao_1_8";
    case Preset::cor_3_3: return "cor_3_3";
    case Preset::cor_3_4: return "cor_3_4";
    case Preset::cor_3_5: return "cor_3_5";
    case Preset::cor_3_6: return "cor_3_6";
    case Preset::panxu: return "panxu";
  }
  return "unknown";
}

inline Preset parse_preset(std::string_view name) {
  for (Preset p : kAllPresets)
    if (to_string(p) == name) return p;
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

/// Named parameter vectors. epsilon is required for cor_3_6 (0 <= eps <= 1/2)
/// and ignored otherwise.
inline ParamSet preset(Preset name, std::optional<double> epsilon = std::nullopt) {
  constexpr double pi = kPi;
  switch (name) {
    case Preset::iso_1_1: return {0, 1, -4 * pi, 0, 0, 0, 0, 0};
    case Preset::rev_1_5:
    case Preset::panxu: return {0, -1, 4 * pi, 4 * pi, 0, 0, 0, 0};
    case Preset::py_1_6: return {pi, -1, 2 * pi, 0, 0, 0, 0, 0};
    case Preset::gao_1_7: return {0, -1, 4 * pi, pi, 0, 0, 0, 0};
    case Preset::gao_1_8: return {pi, -1, 2 * pi, -pi, 0, 0, 0, 0};
    case Preset::cor_3_3: return {0, 2, -20, 8, 2, 0, 0, 1};
    case Preset::cor_3_4: return {3, (8 - 8 * pi) / pi, 32 * pi - 38, 2 * pi - 8, pi - 1, 0, 0, 0};
    case Preset::cor_3_5: return {1, -13.0 / 7.0, 52 * pi / 7 - 2, -pi / 7, 0.75, 0, 0, 0};
    case Preset::cor_3_6: {
      if (!epsilon) throw std::invalid_argument("preset cor_3_6 requires epsilon");
      const double eps = *epsilon;
      if (!(eps >= 0.0 && eps <= 0.5)) throw std::invalid_argument("preset cor_3_6: epsilon must lie in [0, 1/2]");
      return {0, 0, 0, 1, eps, -2 * pi, pi, 0};
    }
  }
  throw std::invalid_argument("unknown preset");
}

inline ParamSet preset(std::string_view name, std::optional<double> epsilon = std::nullopt) {
  return preset(parse_preset(name), epsilon);
}

/// Random admissible parameter vector: components uniform in [-5, 5],
/// eta, xi, zeta clamped to >= 0, lambda to <= 0, and redrawn until the three
/// linear forms are non-negative.
inline ParamSet sample_admissible_params(std::mt19937_64& rng) {
  for (;;) {
    std::array<double, 8> v{};
    for (auto& x : v) x = 10.0 * detail::unit_uniform(rng) - 5.0;
    ParamSet p = ParamSet::from_values(v);
    p.eta = std::max(0.0, p.eta);
    p.xi = std::max(0.0, p.xi);
    p.zeta = std::max(0.0, p.zeta);
    p.lambda = std::min(0.0, p.lambda);
    if (forms::a0_block(p).value >= 0.0 && forms::quadratic_coeff(p).value >= 0.0 &&
        forms::discriminant(p).value >= 0.0)
      return p;
  }
}

// ---------------------------------------------------------------- classical inequalities

struct ClassicalCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ClassicalReport {
  ClassicalCheck isoperimetric;  ///< L^2 - 4 pi A >= 0
  ClassicalCheck bonnesen;       ///< L^2 - 4 pi A >= pi^2 (rho_e - rho_i)^2
  ClassicalCheck bottema;        ///< L^2 - 4 pi A <= pi^2 (rho_M - rho_m)^2
  ClassicalCheck evolute_bound;  ///< oint kappa^2 ds >= 3L - 4A - 4|A~|
  ClassicalCheck gage;           ///< oint kappa^2 ds >= pi L / A
  [[nodiscard]] bool all() const noexcept {
    return isoperimetric.holds && bonnesen.holds && bottema.holds && evolute_bound.holds && gage.holds;
  }
};

/// Each flag holds within tol * max(1, |lhs|, |rhs|).
inline ClassicalReport classical_checks(const QuantitySet& q, double tol) {
  auto ge = [tol](double lhs, double rhs) {
    return ClassicalCheck{lhs, rhs, lhs >= rhs - tol * std::max({1.0, std::abs(lhs), std::abs(rhs)})};
  };
  const double deficit = q.L * q.L - 4.0 * kPi * q.A;
  const double pi2 = kPi * kPi;
  ClassicalReport r;
  r.isoperimetric = ge(deficit, 0.0);
  r.bonnesen = ge(deficit, pi2 * (q.rho_e - q.rho_i) * (q.rho_e - q.rho_i));
  const auto bt = ge(pi2 * (q.rho_M - q.rho_m) * (q.rho_M - q.rho_m), deficit);
  r.bottema = {deficit, bt.lhs, bt.holds};
  r.evolute_bound = ge(q.int_kappa_sq_ds, 3.0 * q.L - 4.0 * q.A - 4.0 * q.A_tilde_abs);
  r.gage = ge(q.int_kappa_sq_ds, kPi * q.L / q.A);
  return r;
}

}  // namespace isoperim
