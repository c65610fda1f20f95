#pragma once

#include <span>
#include <string>
#include <vector>

#include "tenet/entropy.hpp"
#include "tenet/types.hpp"

namespace tenet {

inline constexpr double kSingleShockMagnitude = 0.3;
inline constexpr double kGroupShockMagnitude = 0.1;
inline constexpr std::size_t kDefaultHorizon = 10;
inline constexpr std::size_t kPeakDay = 4;

// Lagged-to-original TE between distinct stocks: entry (i, j) is the TE from
// yesterday's i to today's j. The diagonal is zero.
struct PropagationMatrix {
  std::vector<Variable> variables;
  Matrix values;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

// Volatilities over days 0..horizon; row 0 is the initial condition.
struct ShockTrajectory {
  std::size_t horizon = 0;
  Matrix volatilities;  // (horizon + 1) x N
  std::string origin;
};

PropagationMatrix build_propagation_matrix(const QuadTEMatrix& te);
// Zeroes the diagonal of an S21-shaped matrix; rejects negative entries.
PropagationMatrix build_propagation_matrix(const Matrix& s21, std::vector<Variable> variables);

// Linear damped spreading along TE edges:
//
//   V(t+1, i) = e^{-(t+1)} * sum_j V(t, j) * MTE(j, i)
//
// so a shock on j reaches i in proportion to the TE from j to i.
ShockTrajectory propagate(const PropagationMatrix& mte, const Vector& initial,
                          std::size_t horizon = kDefaultHorizon);

ShockTrajectory single_stock_shock(const PropagationMatrix& mte, std::size_t stock,
                                   double magnitude = kSingleShockMagnitude,
                                   std::size_t horizon = kDefaultHorizon);

ShockTrajectory group_shock(const PropagationMatrix& mte, std::span<const std::size_t> stocks,
                            double magnitude = kGroupShockMagnitude,
                            std::size_t horizon = kDefaultHorizon);

// For every stock: shock it alone and average the volatility of all N stocks
// on `peak_day`.
Vector shock_propagation_strength(const PropagationMatrix& mte,
                                  double magnitude = kSingleShockMagnitude,
                                  std::size_t peak_day = kPeakDay, unsigned threads = 0);

inline constexpr double kRankTieTolerance = 1e-12;

// Ranks (1 = strongest) by descending value. Values within
// kRankTieTolerance * max|value| of their neighbour are ties, broken by index.
std::vector<std::size_t> descending_ranks(const Vector& values);

}  // namespace tenet
