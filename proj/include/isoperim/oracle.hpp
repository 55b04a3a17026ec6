#pragma once

// Brute-force channel: every quantity from sampled boundary and evolute points
// and parametric-curve formulas, independent of the closed-form mode sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoperim/curve_model.hpp"
#include "isoperim/minimax.hpp"
#include "isoperim/quantities.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

struct SampledTrace {
  std::vector<double> thetas;
  std::vector<PlanePoint> gamma;
  std::vector<PlanePoint> gamma_d;  ///< d gamma / d theta
  std::vector<PlanePoint> beta;
  std::vector<PlanePoint> beta_d;   ///< d beta / d theta
  std::vector<double> rho;          ///< from the parametric curvature of gamma
  std::vector<double> rho_beta;     ///< from the parametric curvature of beta

  [[nodiscard]] std::size_t size() const noexcept { return thetas.size(); }
};

namespace detail {

inline constexpr int kDerivs = 5;

// A point x(theta) = A u + B u_perp in the frame u = (cos, sin),
// u_perp = (-sin, cos), where A and B are linear combinations of p, p', ...
// Then x' = (A' - B) u + (B' + A) u_perp, and differentiating a combination
// shifts its weights one order up.
struct FramePoint {
  std::array<double, kDerivs> along{};
  std::array<double, kDerivs> across{};

  static std::array<double, kDerivs> shifted(const std::array<double, kDerivs>& w) {
    std::array<double, kDerivs> out{};
    if (w[kDerivs - 1] != 0.0) throw std::logic_error("FramePoint: derivative order exceeds table");
    for (int j = 0; j + 1 < kDerivs; ++j) out[j + 1] = w[j];
    return out;
  }

  [[nodiscard]] FramePoint derivative() const {
    FramePoint out;
    const auto da = shifted(along), db = shifted(across);
    for (int j = 0; j < kDerivs; ++j) {
      out.along[j] = da[j] - across[j];
      out.across[j] = db[j] + along[j];
    }
    return out;
  }

  [[nodiscard]] PlanePoint eval(const std::array<double, kDerivs>& d, double c, double s) const {
    double a = 0.0, b = 0.0;
    for (int j = 0; j < kDerivs; ++j) {
      a += along[j] * d[j];
      b += across[j] * d[j];
    }
    return {a * c - b * s, a * s + b * c};
  }
};

}  // namespace detail

inline std::size_t default_oracle_samples(std::size_t order) { return std::max<std::size_t>(2048, 32 * order); }

/// Samples gamma, beta and their derivatives from exact series derivatives of p.
inline SampledTrace sample_trace(const SupportFourier& curve, std::size_t m) {
  if (m < 256) throw std::invalid_argument("sample_trace: need at least 256 samples");
  const TrigSeries& p = curve.series();
  SampledTrace tr;
  tr.thetas = periodic_grid(m);
  tr.gamma.resize(m);
  tr.gamma_d.resize(m);
  tr.beta.resize(m);
  tr.beta_d.resize(m);
  tr.rho.resize(m);
  tr.rho_beta.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double t = tr.thetas[k];
    const double c = std::cos(t), s = std::sin(t);
    std::array<double, detail::kDerivs> d{};
    for (int j = 0; j < detail::kDerivs; ++j) d[j] = p.derivative(t, j);
    auto at = [&](const detail::FramePoint& f) { return f.eval(d, c, s); };

    const detail::FramePoint g0{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}};     // gamma = p u + p' u_perp
    const detail::FramePoint b0{{0, 0, -1, 0, 0}, {0, 1, 0, 0, 0}};    // beta = -p'' u + p' u_perp
    const auto g1 = g0.derivative(), g2 = g1.derivative();
    const auto b1 = b0.derivative(), b2 = b1.derivative();
    tr.gamma[k] = at(g0);
    tr.gamma_d[k] = at(g1);
    tr.beta[k] = at(b0);
    tr.beta_d[k] = at(b1);

    // curvature radius = |x'|^3 / (x1' x2'' - x2' x1'')
    const PlanePoint gd1 = at(g1), gd2 = at(g2);
    const double sp_g = std::hypot(gd1.x, gd1.y);
    tr.rho[k] = sp_g * sp_g * sp_g / (gd1.x * gd2.y - gd1.y * gd2.x);
    const PlanePoint bd1 = at(b1), bd2 = at(b2);
    const double sp_b = std::hypot(bd1.x, bd1.y);
    const double cross_b = bd1.x * bd2.y - bd1.y * bd2.x;
    // Cusps of the evolute (p' + p''' = 0) have zero curvature radius.
    tr.rho_beta[k] = cross_b == 0.0 ? 0.0 : std::abs(sp_b * sp_b * sp_b / cross_b);
  }
  return tr;
}

namespace detail {

inline double green_area(const std::vector<PlanePoint>& x, const std::vector<PlanePoint>& dx) {
  std::vector<double> f(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) f[k] = x[k].x * dx[k].y - x[k].y * dx[k].x;
  return 0.5 * periodic_quadrature(f, kTwoPi);
}

template <class F>
double quad_of(const std::vector<double>& v, F&& f) {
  std::vector<double> w(v.size());
  std::transform(v.begin(), v.end(), w.begin(), f);
  return periodic_quadrature(w, kTwoPi);
}

}  // namespace detail

/// All ten quantities by brute force on m samples (m >= 32 N).
inline QuantitySet oracle_quantities(const SupportFourier& curve, std::size_t m) {
  if (m < 32 * curve.order()) throw std::invalid_argument("oracle_quantities: need M >= 32 * N");
  const SampledTrace tr = sample_trace(curve, m);
  QuantitySet q;
  q.L = detail::quad_of(tr.rho, [](double r) { return r; });
  q.A = detail::green_area(tr.gamma, tr.gamma_d);
  q.A_tilde = detail::green_area(tr.beta, tr.beta_d);
  q.A_tilde_abs = std::abs(q.A_tilde);
  q.int_rho_sq = detail::quad_of(tr.rho, [](double r) { return r * r; });
  q.int_rho_beta_sq = detail::quad_of(tr.rho_beta, [](double r) { return r * r; });
  q.int_kappa_sq_ds = detail::quad_of(tr.rho, [](double r) { return 1.0 / r; });

  // Grid extremes of the sampled radii, then Newton on the curvature series.
  const auto hi = std::max_element(tr.rho.begin(), tr.rho.end()) - tr.rho.begin();
  const auto lo = std::min_element(tr.rho.begin(), tr.rho.end()) - tr.rho.begin();
  const TrigSeries rho_series = curve.curvature_series();
  const double h = kTwoPi / static_cast<double>(m);
  q.rho_M = detail::polish_extremum(rho_series, tr.thetas[static_cast<std::size_t>(hi)], h, true).value;
  q.rho_m = detail::polish_extremum(rho_series, tr.thetas[static_cast<std::size_t>(lo)], h, false).value;

  const auto circ = circumradius_inradius(curve, 2 * default_direction_count(curve.order()));
  q.rho_e = circ.rho_e;
  q.rho_i = circ.rho_i;
  q.provenance = Provenance::oracle;
  return q;
}

inline QuantitySet oracle_quantities(const SupportFourier& curve) {
  return oracle_quantities(curve, default_oracle_samples(curve.order()));
}

struct CrossCheckReport {
  std::map<std::string, double> deltas;  ///< relative deltas, denominator max(1, |oracle value|)
  double max_delta = 0.0;
  bool pass = false;
};

/// Compares the spectral sums and the numerical fields of full_quantities
/// against the brute-force channel.
inline CrossCheckReport cross_check(const SupportFourier& curve, double rel_tol, std::size_t oracle_samples) {
  require_convex(curve);
  const auto sq = spectral_quantities(curve);
  const auto fq = full_quantities(curve);
  const auto oq = oracle_quantities(curve, oracle_samples);
  CrossCheckReport r;
  auto put = [&](const char* name, double value, double truth) {
    const double d = std::abs(value - truth) / std::max(1.0, std::abs(truth));
    r.deltas[name] = d;
    r.max_delta = std::max(r.max_delta, d);
  };
  put("L", sq.L, oq.L);
  put("A", sq.A, oq.A);
  put("A_tilde", sq.A_tilde, oq.A_tilde);
  put("A_tilde_abs", sq.A_tilde_abs, oq.A_tilde_abs);
  put("int_rho_sq", sq.int_rho_sq, oq.int_rho_sq);
  put("int_rho_beta_sq", sq.int_rho_beta_sq, oq.int_rho_beta_sq);
  put("rho_e", fq.rho_e, oq.rho_e);
  put("rho_i", fq.rho_i, oq.rho_i);
  put("rho_M", fq.rho_M, oq.rho_M);
  put("rho_m", fq.rho_m, oq.rho_m);
  put("int_kappa_sq_ds", fq.int_kappa_sq_ds, oq.int_kappa_sq_ds);
  r.pass = r.max_delta <= rel_tol;
  return r;
}

inline CrossCheckReport cross_check(const SupportFourier& curve, double rel_tol) {
  return cross_check(curve, rel_tol, default_oracle_samples(curve.order()));
}

}  // namespace isoperim
