#pragma once

// Enclosing and inscribed circles of a convex body from its support function.
//
// A disk (c, r) contains K iff p(theta) <= c.u(theta) + r for all theta, and is
// contained in K iff c.u(theta) + r <= p(theta). Both radii are therefore
// linear minimax problems in (r, c):
//
//   circumradius = min_c max_theta (p(theta) - c.u(theta))
//   inradius     = max_c min_theta (p(theta) - c.u(theta))
//
// Each is solved as the three-variable LP  min t  s.t.  t + c.v_j >= s_j  over
// a set of directions j, through its dual  max sum y_j s_j,  sum y_j = 1,
// sum y_j v_j = 0,  y >= 0  (a revised simplex with a 3x3 basis). The direction
// set starts as an equispaced grid; afterwards the continuous maximiser of the
// residual at the current center is added as a cut until the bracket
// [LP value, continuous max] closes.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "isoperim/curve_model.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/trig_series.hpp"

namespace isoperim {

struct MinimaxCircle {
  double radius = 0.0;
  PlanePoint center;
  double lower_bound = 0.0;  ///< dual LP value; radius - lower_bound is the certified gap
  int simplex_iterations = 0;
  int cut_rounds = 0;
};

enum class CircleKind { circumscribed, inscribed };

namespace detail {

class SupportMinimax {
 public:
  SupportMinimax(const TrigSeries& p, CircleKind kind) : p_(p), sign_(kind == CircleKind::circumscribed ? 1.0 : -1.0) {}

  void add_direction(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    rhs_.push_back(sign_ * p_(theta));
    cols_.emplace_back(1.0, sign_ * c, sign_ * s);
  }

  std::size_t size() const noexcept { return cols_.size(); }

  // Seeds the basis with directions 0, 2pi/3, 4pi/3, whose unit vectors sum to
  // zero, so y = 1/3 each is dual feasible. Must be called before any other
  // direction is added.
  void seed_basis() {
    for (int k = 0; k < 3; ++k) {
      basis_[k] = cols_.size();
      add_direction(kTwoPi * k / 3.0);
    }
    refactor();
  }

  // Runs simplex to optimality over the current direction set.
  void optimise(int& iterations) {
    const int max_iter = 50 * static_cast<int>(cols_.size()) + 100;
    int stalled = 0;
    double last_obj = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      const double scale = std::max(1.0, std::abs(dual_[0]));
      const double opt_tol = 1e-15 * scale;
      const bool bland = stalled > 20;
      std::size_t enter = cols_.size();
      double best = opt_tol;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        const double r = reduced_cost(j);
        if (r > best) {
          best = r;
          enter = j;
          if (bland) break;
        }
      }
      if (enter == cols_.size()) return;
      ++iterations;

      const Eigen::Vector3d d = lu_.solve(cols_[enter]);
      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 3; ++i) {
        if (d[i] > 1e-12) {
          const double q = std::max(0.0, primal_[i]) / d[i];
          if (q < ratio || (q == ratio && leave >= 0 && basis_[i] < basis_[leave])) {
            ratio = q;
            leave = i;
          }
        }
      }
      if (leave < 0) throw SolverError("minimax: unbounded dual step", dual_[0], upper_hint());
      basis_[leave] = enter;
      refactor();
      const double obj = dual_[0];
      stalled = (obj > last_obj + 1e-15 * scale) ? 0 : stalled + 1;
      last_obj = std::max(last_obj, obj);
    }
    throw SolverError("minimax: simplex iteration limit", dual_[0], upper_hint());
  }

  double lp_value() const noexcept { return dual_[0]; }
  PlanePoint center() const noexcept { return {dual_[1], dual_[2]}; }

  // sign * (p - c.u) as a series.
  TrigSeries residual_series() const {
    TrigSeries g = p_;
    g.cos[0] -= dual_[1];
    g.sin[0] -= dual_[2];
    return sign_ * g;
  }

 private:
  double reduced_cost(std::size_t j) const { return rhs_[j] - dual_.dot(cols_[j]); }

  void refactor() {
    Eigen::Matrix3d b;
    Eigen::Vector3d sb;
    for (int i = 0; i < 3; ++i) {
      b.col(i) = cols_[basis_[i]];
      sb[i] = rhs_[basis_[i]];
    }
    lu_ = b.fullPivLu();
    primal_ = lu_.solve(Eigen::Vector3d(1.0, 0.0, 0.0));
    dual_ = b.transpose().fullPivLu().solve(sb);
  }

  double upper_hint() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cols_.size(); ++j) m = std::max(m, rhs_[j] - cols_[j].tail<2>().dot(dual_.tail<2>()));
    return m;
  }

  TrigSeries p_;
  double sign_;
  std::vector<Eigen::Vector3d> cols_;
  std::vector<double> rhs_;
  std::array<std::size_t, 3> basis_{};
  Eigen::FullPivLU<Eigen::Matrix3d> lu_;
  Eigen::Vector3d primal_ = Eigen::Vector3d::Zero();
  Eigen::Vector3d dual_ = Eigen::Vector3d::Zero();
};

}  // namespace detail

/// Smallest enclosing (circumscribed) or largest inscribed circle of the body
/// with support function p, using `directions` equispaced constraints before
/// the continuous cutting-plane polish.
inline MinimaxCircle support_minimax_circle(const TrigSeries& p, CircleKind kind, std::size_t directions) {
  if (directions < 8) throw std::invalid_argument("support_minimax_circle: need at least 8 directions");
  // Radii are translation invariant; solving about the Steiner point keeps
  // the residual p - c.u free of cancellation against a large centre.
  TrigSeries series = p;
  if (series.degree() == 0) {
    series.cos.assign(1, 0.0);
    series.sin.assign(1, 0.0);
  }
  const PlanePoint shift{series.cos[0], series.sin[0]};
  series.cos[0] = 0.0;
  series.sin[0] = 0.0;
  detail::SupportMinimax lp(series, kind);
  lp.seed_basis();
  for (double t : periodic_grid(directions)) lp.add_direction(t);

  // Gap tolerance at the rounding floor of evaluating the series.
  double coeff_l1 = std::abs(series.c0);
  for (std::size_t n = 0; n < series.cos.size(); ++n) coeff_l1 += std::abs(series.cos[n]) + std::abs(series.sin[n]);
  const double eval_floor = 128.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, coeff_l1);

  MinimaxCircle out;
  constexpr int kMaxRounds = 200;
  // Cuts cluster near the contact points and the basis loses a few digits, so
  // a bracket that stops shrinking is accepted once it is below kStallGap.
  constexpr double kStallGap = 1e-12;
  constexpr int kStallRounds = 5;
  double upper = std::numeric_limits<double>::infinity();
  double best_gap = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int round = 0; round < kMaxRounds; ++round) {
    lp.optimise(out.simplex_iterations);
    const double lower = lp.lp_value();
    const auto peaks = local_extrema(lp.residual_series(), directions, true);
    upper = -std::numeric_limits<double>::infinity();
    for (const auto& e : peaks) upper = std::max(upper, e.value);
    const double scale = std::max(1.0, std::abs(lower));
    const double gap = upper - lower;
    const double gap_tol = std::max(eval_floor, 128.0 * std::numeric_limits<double>::epsilon() * scale);
    stalled = gap < 0.5 * best_gap ? 0 : stalled + 1;
    best_gap = std::min(best_gap, gap);
    if (gap <= gap_tol || (stalled >= kStallRounds && gap <= kStallGap * scale)) {
      out.cut_rounds = round;
      out.center = lp.center() + shift;
      out.lower_bound = kind == CircleKind::circumscribed ? lower : -lower;
      out.radius = kind == CircleKind::circumscribed ? upper : -upper;
      return out;
    }
    for (const auto& e : peaks)
      if (e.value > lower + gap_tol) lp.add_direction(e.theta);
  }
  const double lower = lp.lp_value();
  if (kind == CircleKind::circumscribed) throw SolverError("minimax: cut rounds exhausted", lower, upper);
  throw SolverError("minimax: cut rounds exhausted", -upper, -lower);
}

}  // namespace isoperim
