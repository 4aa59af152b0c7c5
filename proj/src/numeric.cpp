#include "unobs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace unobs {

namespace {

void require_finite(const Eigen::MatrixXd& x) {
  if (!x.allFinite()) throw InputError("matrix has non-finite entries");
}

}  // namespace

void ToleranceConfig::validate() const {
  if (absolute && !(*absolute > 0.0)) throw InputError("absolute tolerance must be positive");
}

double ToleranceConfig::threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
  if (absolute) return *absolute;
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
}

double ToleranceConfig::threshold(const Eigen::MatrixXd& x) const {
  if (absolute) return *absolute;
  return threshold(spectral_norm(x), x.rows(), x.cols());
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& matrix, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = matrix(rows[i], cols[j]);
  return out;
}

Eigen::MatrixXd submatrix(const WeightedLaplacian& laplacian, const BusSet& rows, const BusSet& cols) {
  auto to_indices = [&](const BusSet& ids) {
    std::vector<int> out;
    for (BusId id : ids) out.push_back(laplacian.index(id));
    std::sort(out.begin(), out.end());
    return out;
  };
  return submatrix(laplacian.matrix, to_indices(rows), to_indices(cols));
}

double spectral_norm(const Eigen::MatrixXd& x) {
  if (x.size() == 0) return 0.0;
  require_finite(x);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
  return svd.singularValues()(0);
}

int numeric_rank(const Eigen::MatrixXd& x, const ToleranceConfig& tol) {
  if (x.size() == 0) return 0;
  require_finite(x);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
  const auto& sv = svd.singularValues();
  const double tau = tol.threshold(sv(0), x.rows(), x.cols());
  return static_cast<int>((sv.array() > tau).count());
}

Eigen::VectorXd null_space_vector(const Eigen::MatrixXd& x, const ToleranceConfig& tol) {
  const Eigen::Index n = x.cols();
  if (n == 0) throw InputError("null space of a matrix without columns");
  if (x.rows() == 0) return Eigen::VectorXd::Unit(n, 0);
  if (numeric_rank(x, tol) >= n) throw InputError("matrix has full column rank");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(n - 1);
  v.normalize();
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  if (v(pivot) < 0.0) v = -v;
  return v;
}

}  // namespace unobs
