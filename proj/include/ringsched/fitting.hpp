#pragma once

// Online models learned from a running job: the loss curve (how many epochs
// until convergence) and the resource model (epochs per second at w workers).
// Both reduce to NNLS problems.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "ringsched/costmodel.hpp"
#include "ringsched/error.hpp"
#include "ringsched/nnls.hpp"

namespace ringsched {

struct LossPoint {
  std::int64_t k = 0;  // batch step
  double l = 0.0;      // observed loss
  friend bool operator==(const LossPoint&, const LossPoint&) = default;
};

// l(k) = 1 / (beta0 * k + beta1) + beta2
struct LossCurveModel {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  double excess(double k) const { return 1.0 / (beta0 * k + beta1); }
  double predict(double k) const { return excess(k) + beta2; }
  bool valid() const { return beta0 > 0.0 && beta1 >= 0.0 && beta2 >= 0.0; }
  friend bool operator==(const LossCurveModel&, const LossCurveModel&) = default;
};

struct SpeedSample {
  std::int64_t w = 1;
  double speed = 0.0;  // epochs per second
  friend bool operator==(const SpeedSample&, const SpeedSample&) = default;
};

struct LossFitOptions {
  int grid_steps = 100;
  // Zoom passes around the best coarse candidate; each pass shrinks the
  // bracket by grid_steps / 2.
  int refine_passes = 6;
};

struct LossFit {
  LossCurveModel model;
  double sse = 0.0;
};

namespace fitting_detail {

inline double loss_sse(std::span<const LossPoint> points, const LossCurveModel& model) {
  double sse = 0.0;
  for (const auto& p : points) {
    const double denom = model.beta0 * static_cast<double>(p.k) + model.beta1;
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    const double r = p.l - (1.0 / denom + model.beta2);
    sse += r * r;
  }
  return sse;
}

// Linearize around a fixed asymptote: 1/(l - beta2) = beta0 * k + beta1.
inline bool fit_for_asymptote(std::span<const LossPoint> points, double beta2, LossFit& out) {
  std::vector<const LossPoint*> usable;
  for (const auto& p : points) {
    if (p.l > beta2) usable.push_back(&p);
  }
  if (usable.size() < 2) return false;
  std::set<std::int64_t> ks;
  for (const auto* p : usable) ks.insert(p->k);
  if (ks.size() < 2) return false;

  double k_scale = 1.0;
  for (const auto* p : usable) k_scale = std::max(k_scale, static_cast<double>(p->k));
  NnlsProblem problem;
  problem.a.resize(static_cast<Eigen::Index>(usable.size()), 2);
  problem.b.resize(static_cast<Eigen::Index>(usable.size()));
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    // Rows weighted by (l - beta2)^2 so linearized residuals approximate
    // residuals in loss space.
    const double excess = usable[i]->l - beta2;
    const double weight = excess * excess;
    problem.a(r, 0) = weight * static_cast<double>(usable[i]->k) / k_scale;
    problem.a(r, 1) = weight;
    problem.b(r) = excess;
  }
  NnlsSolution sol;
  try {
    sol = nnls(problem);
  } catch (const NnlsNonConvergenceError& e) {
    sol = e.best_iterate();
  }
  LossCurveModel model{sol.x(0) / k_scale, sol.x(1), beta2};
  if (!(model.beta0 > 0.0)) return false;
  out.model = model;
  out.sse = loss_sse(points, model);
  return std::isfinite(out.sse);
}

}  // namespace fitting_detail

// Least-squares fit of the loss curve. The asymptote is searched on a grid over
// [0, min loss] (then zoomed around the best cell); for each candidate the
// remaining two coefficients come from an NNLS fit of the linearized curve.
// Candidates are ranked by squared error in loss space.
inline LossFit fit_loss_curve_detailed(std::span<const LossPoint> points,
                                       const LossFitOptions& options = {}) {
  std::set<std::int64_t> ks;
  for (const auto& p : points) {
    if (p.k < 0) throw DomainError("fit_loss_curve: negative batch step");
    if (!std::isfinite(p.l) || p.l <= 0.0) throw DomainError("fit_loss_curve: losses must be positive");
    ks.insert(p.k);
  }
  if (ks.size() < 3) {
    throw InsufficientDataError("fit_loss_curve: need at least 3 points with distinct steps, got " +
                                std::to_string(ks.size()));
  }
  const auto [lo_it, hi_it] = std::minmax_element(
      points.begin(), points.end(), [](const LossPoint& a, const LossPoint& b) { return a.l < b.l; });
  const double min_loss = lo_it->l;
  if (hi_it->l == min_loss) throw DegenerateFitError("fit_loss_curve: all losses are equal");

  const int steps = std::max(2, options.grid_steps);
  LossFit best;
  best.sse = std::numeric_limits<double>::infinity();
  double best_beta2 = -1.0;

  auto consider = [&](double beta2) {
    LossFit candidate;
    if (!fitting_detail::fit_for_asymptote(points, beta2, candidate)) return;
    if (candidate.sse < best.sse || (candidate.sse == best.sse && beta2 < best_beta2)) {
      best = candidate;
      best_beta2 = beta2;
    }
  };

  double pitch = min_loss / steps;
  for (int i = 0; i <= steps; ++i) consider(pitch * i);
  if (best_beta2 < 0.0) throw DegenerateFitError("fit_loss_curve: no admissible asymptote");

  for (int pass = 0; pass < options.refine_passes; ++pass) {
    const double lo = std::max(0.0, best_beta2 - pitch);
    const double hi = std::min(min_loss, best_beta2 + pitch);
    pitch = (hi - lo) / steps;
    if (!(pitch > 0.0)) break;
    for (int i = 0; i <= steps; ++i) consider(lo + pitch * i);
  }
  return best;
}

inline LossCurveModel fit_loss_curve(std::span<const LossPoint> points,
                                     const LossFitOptions& options = {}) {
  return fit_loss_curve_detailed(points, options).model;
}

inline constexpr double kDefaultConvergenceMargin = 0.01;

// Epochs left until the excess loss over the asymptote drops to `margin`.
inline double remaining_epochs(const LossCurveModel& model, double current_step, double margin,
                               double steps_per_epoch) {
  if (!(margin > 0.0)) throw DomainError("remaining_epochs: margin must be positive");
  if (!(steps_per_epoch > 0.0)) throw DomainError("remaining_epochs: steps_per_epoch must be positive");
  if (!model.valid()) throw DegenerateModelError("remaining_epochs: invalid loss model");
  const double converged_at = (1.0 / margin - model.beta1) / model.beta0;
  return std::max(0.0, converged_at - current_step) / steps_per_epoch;
}

struct ResourceFit {
  ResourceModel model;
  double sse = 0.0;  // sum of squared relative epoch-time errors
  std::size_t samples = 0;
};

inline ResourceFit fit_resource_model_detailed(std::span<const SpeedSample> samples, double m,
                                               double n) {
  if (!(m > 0.0) || !(n > 0.0)) throw DomainError("fit_resource_model: m and n must be positive");
  std::set<std::int64_t> ws;
  for (const auto& s : samples) {
    if (s.w < 1) throw DomainError("fit_resource_model: worker count must be >= 1");
    if (!(s.speed > 0.0) || !std::isfinite(s.speed)) {
      throw DomainError("fit_resource_model: speeds must be positive");
    }
    ws.insert(s.w);
  }
  if (ws.size() < 2) {
    throw InsufficientDataError(
        "fit_resource_model: need samples at 2 or more distinct worker counts, got " +
        std::to_string(ws.size()));
  }

  const auto rows = static_cast<Eigen::Index>(samples.size());
  NnlsProblem problem;
  problem.a.resize(rows, 4);
  problem.b.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& s = samples[static_cast<std::size_t>(r)];
    const double w = static_cast<double>(s.w);
    // Rows scaled by the measured speed: residuals are relative errors in
    // epoch time, so slow single-worker samples do not dominate the fit.
    problem.a(r, 0) = s.speed * m / w;
    problem.a(r, 1) = s.speed * (w - 1.0);
    problem.a(r, 2) = s.speed * (w - 1.0) * (n / w);
    problem.a(r, 3) = s.speed;
    problem.b(r) = 1.0;
  }
  // Features span ~10 orders of magnitude; equilibrate columns so the NNLS
  // tolerances mean the same thing for each.
  Eigen::VectorXd scale(4);
  for (Eigen::Index c = 0; c < 4; ++c) {
    const double norm = problem.a.col(c).norm();
    scale(c) = norm > 0.0 ? norm : 1.0;
    problem.a.col(c) /= scale(c);
  }
  NnlsSolution sol;
  try {
    sol = nnls(problem);
  } catch (const NnlsNonConvergenceError& e) {
    sol = e.best_iterate();
  }
  ResourceFit fit;
  fit.model = ResourceModel{sol.x(0) / scale(0), sol.x(1) / scale(1), sol.x(2) / scale(2),
                            sol.x(3) / scale(3), m, n};
  fit.sse = sol.residual_norm * sol.residual_norm;
  fit.samples = samples.size();
  if (!fit.model.valid()) {
    throw DegenerateModelError("fit_resource_model: fitted model predicts zero step time");
  }
  return fit;
}

inline ResourceModel fit_resource_model(std::span<const SpeedSample> samples, double m, double n) {
  return fit_resource_model_detailed(samples, m, n).model;
}

}  // namespace ringsched
