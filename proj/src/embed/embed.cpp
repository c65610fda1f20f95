#include "tenet/embed.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "tenet/error.hpp"

namespace tenet {

Embedding classical_mds(const DistanceMatrix& dist, std::size_t dims) {
  const Eigen::Index n = dist.values.rows();
  if (dims < 1) throw UsageError("embedding needs at least one dimension");
  if (dist.values.cols() != n) throw UsageError("distance matrix must be square");
  if (static_cast<std::size_t>(n) < dims + 1) {
    throw UsageError("embedding in " + std::to_string(dims) + " dimensions needs at least " +
                     std::to_string(dims + 1) + " points");
  }

  const Matrix sq = dist.values.cwiseProduct(dist.values);
  const Vector row_mean = sq.rowwise().mean();
  const Vector col_mean = sq.colwise().mean().transpose();
  const double grand = sq.mean();
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - col_mean(j) + grand);
    }
  }
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(b);
  if (solver.info() != Eigen::Success) throw NumericError("eigen-decomposition failed");
  const Vector& values = solver.eigenvalues();  // ascending
  const Matrix& vectors = solver.eigenvectors();

  Embedding out;
  out.variables = dist.variables;
  out.dims = dims;
  const double scale = values.cwiseAbs().maxCoeff();
  const double noise = 1e-12 * (scale > 0.0 ? scale : 1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (values(k) < -noise) {
      ++out.truncated_count;
      out.truncated_mass += -values(k);
    }
  }

  out.coords = Matrix::Zero(n, static_cast<Eigen::Index>(dims));
  for (std::size_t a = 0; a < dims; ++a) {
    const Eigen::Index k = n - 1 - static_cast<Eigen::Index>(a);
    const double lambda = values(k) > 0.0 ? values(k) : 0.0;
    Vector axis = vectors.col(k) * std::sqrt(lambda);
    Eigen::Index pivot = 0;
    axis.cwiseAbs().maxCoeff(&pivot);
    if (axis(pivot) < 0.0) axis = -axis;
    out.coords.col(static_cast<Eigen::Index>(a)) = axis;
  }
  out.coords.rowwise() -= out.coords.colwise().mean();
  out.stress = stress(dist, out.coords);
  return out;
}

double stress(const DistanceMatrix& dist, const Matrix& coords) {
  const Eigen::Index n = dist.values.rows();
  if (coords.rows() != n) throw UsageError("embedding and distance matrix cover different sets");
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double target = dist.values(i, j);
      const double realized = (coords.row(i) - coords.row(j)).norm();
      num += (target - realized) * (target - realized);
      den += target * target;
    }
  }
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw NumericError("stress undefined: all target distances are zero");
  }
  return std::sqrt(num / den);
}

double stress(const DistanceMatrix& dist, const Embedding& embedding) {
  return stress(dist, embedding.coords);
}

}  // namespace tenet
