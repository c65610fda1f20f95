#pragma once

#include "tenet/netmetrics.hpp"
#include "tenet/types.hpp"

namespace tenet {

// Coordinates realizing a distance matrix, centred on the origin.
struct Embedding {
  std::vector<Variable> variables;
  Matrix coords;  // N x dims
  double stress = 0.0;
  std::size_t dims = 0;
  // Negative eigenvalues of the double-centred matrix, set to zero.
  std::size_t truncated_count = 0;
  double truncated_mass = 0.0;
};

// Classical (Torgerson) scaling: double-centre -D^2/2, keep the top `dims`
// eigenpairs, scale eigenvectors by sqrt(eigenvalue). Each axis is oriented
// so its largest-magnitude coordinate is positive.
Embedding classical_mds(const DistanceMatrix& dist, std::size_t dims);

// Kruskal stress: sqrt( sum_{i<j} (d_ij - e_ij)^2 / sum_{i<j} d_ij^2 ) with
// e_ij the Euclidean distance between embedded points. Defined as 0 when
// both sums vanish; throws NumericError when only the denominator does.
double stress(const DistanceMatrix& dist, const Matrix& coords);
double stress(const DistanceMatrix& dist, const Embedding& embedding);

}  // namespace tenet
