#pragma once

#include "lrsdp/dense.hpp"
#include "lrsdp/status.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lrsdp {

/// Observed matrix A together with its observation set. Index pairs are
/// 0-based internally; the text format stores them 1-based.
struct ObservedMatrix {
  DenseMatrix a;
  std::set<std::pair<int, int>> omega;

  int rows() const { return static_cast<int>(a.rows()); }
  int cols() const { return static_cast<int>(a.cols()); }
  bool observed(int i, int j) const { return omega.count({i, j}) > 0; }
  void validate() const;
};

// P(A): zero out the unobserved entries.
DenseMatrix masked(const ObservedMatrix& obs);

enum class VecOrientation { RowStacked, ColumnStacked };

struct QuadraticConstraint {
  SymMatrix q;    // nm x nm
  DenseMatrix e;  // n x m
  double rhs = 0.0;
};

/// Frobenius-separable description of the objective: (1/(2 gamma)) ||X||_F^2
/// plus lossScale * sum_Omega (X - A)^2. Present only when the encoder was
/// given a gamma, and required by the perspective relaxation.
struct FrobeniusSplit {
  double gamma = 0.0;
  ObservedMatrix data;
  double lossScale = 1.0;
};

/// Rank-penalized/capped quadratic matrix problem:
///   min  lambda*rank(X) + <H, v v^T> + <D, X> + constant
///   s.t. rank(X) <= k,  <Q_i, v v^T> + <E_i, X> <= b_i
/// where v is the configured vectorization of X.
struct LowRankQuadraticProblem {
  int n = 0;
  int m = 0;
  SymMatrix h;    // nm x nm
  DenseMatrix d;  // n x m
  std::vector<QuadraticConstraint> constraints;
  double lambda = 0.0;
  int k = 1;
  double constant = 0.0;
  VecOrientation orientation = VecOrientation::RowStacked;
  std::optional<FrobeniusSplit> split;

  void validate() const;
};

double evaluate_objective(const LowRankQuadraticProblem& p, const DenseMatrix& x, int rank);

struct SolverInfo {
  SolveStatus status = SolveStatus::NumericalFailure;
  double primalResidual = 0.0;
  double dualResidual = 0.0;
  double gapResidual = 0.0;
  long iterations = 0;
  double wallTimeSeconds = 0.0;
};

/// Decoded relaxation solution. Exactly one of the lifted payloads is set,
/// depending on which relaxation produced it.
struct RelaxationSolution {
  double lowerBound = 0.0;
  DenseMatrix x;  // n x m
  SymMatrix y;    // n (projection-hull variable)

  std::optional<SymMatrix> wxx;          // nm (full and compact liftings)
  std::optional<DenseMatrix> wxy;        // nm x n^2 (full lifting)
  std::optional<SymMatrix> wyy;          // n^2 (full lifting)
  std::optional<std::vector<SymMatrix>> sblocks;  // row/group blocks
  std::optional<SymMatrix> theta;        // perspective relaxation

  SolverInfo solverInfo;
};

// --- plain-text instance format ---------------------------------------
// header "n m |Omega| lambda k gamma" (gamma = 0 means no Frobenius term),
// then A row-major, then the observed index pairs, 1-based, one per line.
struct McInstance {
  ObservedMatrix obs;
  double lambda = 0.0;
  int k = 1;
  double gamma = 0.0;  // 0 = absent
};

std::string save_instance(const McInstance& inst);
McInstance load_instance(const std::string& text);
McInstance load_instance_file(const std::string& path);
void save_instance_file(const McInstance& inst, const std::string& path);

}  // namespace lrsdp
