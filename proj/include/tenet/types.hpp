#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tenet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CodeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// A column of a return panel: a ticker, optionally shifted one day back.
struct Variable {
  std::string ticker;
  int lag = 0;

  // "XOM" for lag 0, "XOM@1" for the one-day lagged copy.
  std::string name() const;

  friend bool operator==(const Variable&, const Variable&) = default;
};

std::vector<std::string> names_of(const std::vector<Variable>& variables);

}  // namespace tenet
