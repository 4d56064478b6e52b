#pragma once

// Active-set non-negative least squares (Lawson & Hanson, "Solving Least
// Squares Problems", ch. 23). Solves  min ||A x - b||_2  s.t.  x >= 0.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ringsched/error.hpp"

namespace ringsched {

struct NnlsProblem {
  Eigen::MatrixXd a;  // rows = observations, columns = features
  Eigen::VectorXd b;
};

struct NnlsSolution {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct NnlsOptions {
  double tolerance = 1e-8;        // relative, scaled by ||A||_F * ||b||
  int max_iterations_factor = 3;  // outer iterations allowed per column
};

class NnlsNonConvergenceError : public Error {
 public:
  NnlsNonConvergenceError(const std::string& what, NnlsSolution best)
      : Error(what), best_(std::move(best)) {}
  const NnlsSolution& best_iterate() const { return best_; }

 private:
  NnlsSolution best_;
};

namespace nnls_detail {

inline double kkt_scale(const NnlsProblem& p) {
  return std::max(1.0, p.a.norm() * std::max(1.0, p.b.norm()));
}

// Unconstrained least squares restricted to the columns in `passive`.
inline Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                     const std::vector<bool>& passive) {
  const Eigen::Index cols = a.cols();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
  }
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  const Eigen::VectorXd z = sub.completeOrthogonalDecomposition().solve(b);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(cols);
  for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = z(static_cast<Eigen::Index>(k));
  return s;
}

}  // namespace nnls_detail

inline NnlsSolution nnls(const NnlsProblem& problem, const NnlsOptions& options = {}) {
  const Eigen::MatrixXd& a = problem.a;
  const Eigen::VectorXd& b = problem.b;
  if (a.rows() < 1 || a.cols() < 1) {
    throw DimensionMismatchError("nnls: design matrix must have at least one row and column");
  }
  if (b.size() != a.rows()) {
    throw DimensionMismatchError("nnls: target has " + std::to_string(b.size()) +
                                 " entries but matrix has " + std::to_string(a.rows()) + " rows");
  }
  if (!a.allFinite() || !b.allFinite()) throw DomainError("nnls: non-finite input");

  const Eigen::Index cols = a.cols();
  const double tol = options.tolerance * nnls_detail::kkt_scale(problem);
  const int max_outer = options.max_iterations_factor * static_cast<int>(cols);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  std::vector<bool> passive(static_cast<std::size_t>(cols), false);
  NnlsSolution out;

  auto finish = [&](int iterations) {
    out.x = x;
    out.residual_norm = (a * x - b).norm();
    out.iterations = iterations;
    return out;
  };

  for (int outer = 0;; ++outer) {
    const Eigen::VectorXd grad = a.transpose() * (b - a * x);  // negative gradient
    Eigen::Index best = -1;
    double best_val = tol;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_val) {
        best_val = grad(j);
        best = j;
      }
    }
    if (best < 0) return finish(outer);
    if (outer >= max_outer) {
      throw NnlsNonConvergenceError("nnls: no convergence after " + std::to_string(max_outer) +
                                        " iterations",
                                    finish(outer));
    }
    passive[static_cast<std::size_t>(best)] = true;

    // Inner loop: step back toward feasibility until the passive solution is
    // strictly positive.
    for (Eigen::Index inner = 0; inner <= cols; ++inner) {
      Eigen::VectorXd s = nnls_detail::solve_passive(a, b, passive);
      double step = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          feasible = false;
          const double denom = x(j) - s(j);
          if (denom > 0.0) step = std::min(step, x(j) / denom);
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += step * (s - x);
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] &&
            x(j) <= 10.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, x.cwiseAbs().maxCoeff())) {
          x(j) = 0.0;
          passive[static_cast<std::size_t>(j)] = false;
        }
      }
      if (std::none_of(passive.begin(), passive.end(), [](bool p) { return p; })) break;
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[static_cast<std::size_t>(j)]) x(j) = 0.0;
    }
  }
}

// Largest violation of the optimality conditions, relative to the problem
// scale. Zero means x is an exact NNLS minimizer.
inline double nnls_kkt_violation(const NnlsProblem& problem, const Eigen::VectorXd& x) {
  const Eigen::VectorXd g = problem.a.transpose() * (problem.a * x - problem.b);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) < 0.0) worst = std::max(worst, -x(j));
    if (x(j) > 0.0) {
      worst = std::max(worst, std::abs(g(j)));
    } else {
      worst = std::max(worst, -g(j));
    }
  }
  return worst / nnls_detail::kkt_scale(problem);
}

}  // namespace ringsched
