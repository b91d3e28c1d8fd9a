#pragma once

#include "lrsdp/problem.hpp"

#include <cstdint>

namespace lrsdp {

struct AMSettings {
  int rank = 1;
  double gamma = 0.0;  // <= 0 means no Frobenius term
  int maxSweeps = 500;
  double relTol = 1e-8;
  int restarts = 1;    // extra restarts use seeded random factors
  uint64_t seed = 0;
};

struct AMResult {
  DenseMatrix x;
  double upperBound = 0.0;
  int sweeps = 0;
};

/// Factorized X = U V heuristic: exact ridge least-squares alternately over
/// the rows of U and the columns of V, initialized from a truncated SVD of
/// the masked data. The objective is non-increasing sweep to sweep; the
/// returned bound matches evaluate_objective on the completion encoding.
AMResult alternating_minimization(const ObservedMatrix& obs, const AMSettings& settings,
                                  double lossScale, double lambda = 0.0);

/// Relative optimality gap (UB - LB) / UB, clamped to zero when LB exceeds
/// UB by no more than `tol` (solver noise); larger excesses come back
/// negative. UB must be positive.
double gap(double upperBound, double lowerBound, double tol = 1e-6);

}  // namespace lrsdp
