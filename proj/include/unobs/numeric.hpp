#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "unobs/grid.hpp"

namespace unobs {

/// Rank threshold policy. By default τ = max(rows, cols) · ε · σ_max(X), which
/// keeps rank decisions invariant under scaling; `absolute` replaces τ outright.
struct ToleranceConfig {
  std::optional<double> absolute;

  /// Throws InputError when an override is present but not positive.
  void validate() const;
  double threshold(const Eigen::MatrixXd& x) const;
  double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const;
};

/// Dense |rows|×|cols| slice of B, rows and columns ordered by internal index.
Eigen::MatrixXd submatrix(const WeightedLaplacian& laplacian, const BusSet& rows, const BusSet& cols);
Eigen::MatrixXd submatrix(const Eigen::MatrixXd& matrix, const std::vector<int>& rows, const std::vector<int>& cols);

/// Number of singular values above τ.
int numeric_rank(const Eigen::MatrixXd& x, const ToleranceConfig& tol = {});

/// Unit vector v with ‖Xv‖₂ ≤ 10τ: the right singular vector of the smallest
/// singular value, signed so that its largest-magnitude entry is positive.
/// Throws InputError when X has numerically full column rank.
Eigen::VectorXd null_space_vector(const Eigen::MatrixXd& x, const ToleranceConfig& tol = {});

/// Largest singular value (0 for empty matrices).
double spectral_norm(const Eigen::MatrixXd& x);

}  // namespace unobs
