#include "hyperconvex/min_norm_point.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace hyperconvex {

namespace {

// Affine minimiser of ||Q a|| subject to sum(a) = 1, via the QR factor of
// [1^T; Q]. Returns nothing if the corral is numerically affinely dependent.
std::optional<Vector> affine_minimizer(const Matrix& corral) {
  const Eigen::Index s = corral.cols();
  if (s > corral.rows() + 1) return std::nullopt;
  Matrix a(corral.rows() + 1, s);
  a.row(0).setOnes();
  a.bottomRows(corral.rows()) = corral;

  Eigen::HouseholderQR<Matrix> qr(a);
  const Matrix r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();
  const double diag_max = r.diagonal().cwiseAbs().maxCoeff();
  if (!(diag_max > 0.0) || r.diagonal().cwiseAbs().minCoeff() <= 1e-13 * diag_max) {
    return std::nullopt;
  }
  Vector z = r.transpose().triangularView<Eigen::Lower>().solve(Vector::Ones(s));
  Vector alpha = r.triangularView<Eigen::Upper>().solve(z);
  const double sum = alpha.sum();
  if (!std::isfinite(sum) || sum == 0.0) return std::nullopt;
  return Vector(alpha / sum);
}

Matrix gather(const Matrix& points, const std::vector<Eigen::Index>& idx) {
  Matrix out(points.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = points.col(idx[i]);
  return out;
}

}  // namespace

MinNormPoint min_norm_point(const Matrix& points, const MinNormOptions& options) {
  const Eigen::Index m = points.cols();
  if (m == 0) throw std::invalid_argument("min_norm_point: empty generator set");

  Eigen::Index start = 0;
  points.colwise().squaredNorm().minCoeff(&start);

  std::vector<Eigen::Index> corral{start};
  Vector lambda = Vector::Ones(1);
  Vector y = points.col(start);
  double gap = 0.0;
  int iterations = 0;

  auto bail = [&](const char* why) {
    throw ConvergenceError(std::string("min_norm_point: ") + why, y, gap);
  };

  bool stalled = false;
  while (!stalled) {
    if (++iterations > options.max_iterations) bail("iteration cap exceeded");

    const Vector dots = points.transpose() * y;
    Eigen::Index entering = 0;
    const double best_dot = dots.minCoeff(&entering);
    gap = y.squaredNorm() - best_dot;
    if (gap <= options.gap_tolerance) break;
    if (std::find(corral.begin(), corral.end(), entering) != corral.end()) break;  // stalled

    corral.push_back(entering);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    for (;;) {
      if (++iterations > options.max_iterations) bail("iteration cap exceeded");

      const auto alpha = affine_minimizer(gather(points, corral));
      if (!alpha) {
        // Numerically dependent corral: undo the insertion and stop here.
        corral.pop_back();
        lambda.conservativeResize(lambda.size() - 1);
        stalled = true;
        break;
      }
      if (alpha->minCoeff() > 0.0) {
        lambda = *alpha;
        break;
      }

      double theta = 1.0;
      Eigen::Index blocking = -1;
      for (Eigen::Index i = 0; i < alpha->size(); ++i) {
        if ((*alpha)(i) > 0.0) continue;
        const double denom = lambda(i) - (*alpha)(i);
        const double ratio = denom > 0.0 ? lambda(i) / denom : 0.0;
        if (ratio < theta) {
          theta = ratio;
          blocking = i;
        }
      }
      lambda = theta * (*alpha) + (1.0 - theta) * lambda;
      if (blocking >= 0) lambda(blocking) = 0.0;

      std::vector<Eigen::Index> kept;
      std::vector<double> kept_weights;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 1e-15) {
          kept.push_back(corral[static_cast<std::size_t>(i)]);
          kept_weights.push_back(lambda(i));
        }
      }
      corral = std::move(kept);
      lambda = Eigen::Map<Vector>(kept_weights.data(), static_cast<Eigen::Index>(kept_weights.size()));
      lambda /= lambda.sum();
    }
    y = gather(points, corral) * lambda;
  }

  y = gather(points, corral) * lambda;
  {
    const Vector dots = points.transpose() * y;
    gap = y.squaredNorm() - dots.minCoeff();
  }

  MinNormPoint result;
  result.point = y;
  result.weights = Vector::Zero(m);
  for (std::size_t i = 0; i < corral.size(); ++i) result.weights(corral[i]) = lambda(static_cast<Eigen::Index>(i));
  result.gap = gap;
  result.iterations = iterations;
  return result;
}

}  // namespace hyperconvex
