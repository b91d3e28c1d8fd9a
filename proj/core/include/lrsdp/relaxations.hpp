#pragma once

#include "lrsdp/conic.hpp"
#include "lrsdp/problem.hpp"

#include <optional>
#include <string>

namespace lrsdp {

/// Linear system A x <= b on the stacked vectorization of X, used to derive
/// RLT product cuts.
struct RltSystem {
  DenseMatrix a;  // rows x (n*m)
  Vector b;
};

struct StrengtheningOptions {
  bool symmetryY = false;   // commutation equalities on Wyy and Wxy
  bool symmetryX = false;   // X required symmetric (n == m)
  bool triangle = false;
  int tripletBudget = 200;  // lexicographic triplets
  std::optional<RltSystem> rlt;
};

// --- generic relaxations -------------------------------------------------

/// Full lifting: one PSD block of side 1 + nm + n^2 carrying
/// [1, x, vec(Y); ...] with Wxx, Wxy, Wyy regions, a separate PSD Y in the
/// projection hull, block-trace equalities, and the problem's quadratic
/// constraints. Strengtheners from `opts` are appended.
ConicProgram build_full_lifted(const LowRankQuadraticProblem& p,
                               const StrengtheningOptions& opts = {});

/// Eliminated form: arrow block [[1, x^T], [x, Wxx]] plus the coupling block
/// [[sum_i Wxx^(i,i), X^T], [X, Y]] of side m + n.
ConicProgram build_compact_lifted(const LowRankQuadraticProblem& p);

/// Matrix perspective relaxation. Requires the problem's Frobenius split;
/// the quadratic loss is carried by a second-order epigraph.
ConicProgram build_mprt(const LowRankQuadraticProblem& p);

// --- strengtheners (mutate a full lifted program) ------------------------

void add_symmetry_constraints(ConicProgram& prog);
void add_x_symmetry_constraints(ConicProgram& prog);
void add_triangle_inequalities(ConicProgram& prog, int tripletBudget);
// RLT cuts reference Wxx and x; valid on full and compact programs.
void add_rlt_inequalities(ConicProgram& prog, const DenseMatrix& a, const Vector& b);

// --- decoding -------------------------------------------------------------

RelaxationSolution decode_full_lifted(const ConicProgram& prog, const ConicSolution& sol);
RelaxationSolution decode_compact(const ConicProgram& prog, const ConicSolution& sol);
RelaxationSolution decode_mprt(const ConicProgram& prog, const ConicSolution& sol);

// --- elimination / reconstruction ----------------------------------------

struct ReconstructedLift {
  DenseMatrix wxy;  // nm x n^2
  SymMatrix wyy;    // n^2
  SymMatrix y;      // the substituted X (sum_i Wxx^(i,i))^+ X^T
};

/// Rebuild the eliminated blocks of the full lifting from a compact-feasible
/// triple. Throws std::invalid_argument when the inputs violate the compact
/// constraints by more than `feasTol`.
ReconstructedLift reconstruct_eliminated(const DenseMatrix& x, const SymMatrix& y,
                                         const SymMatrix& wxx, double feasTol = 1e-4);

// --- exact lifted points and feasibility evaluation -----------------------

struct LiftedPoint {
  DenseMatrix x;
  SymMatrix y;
  SymMatrix wxx;
  DenseMatrix wxy;
  SymMatrix wyy;
};

/// Outer-product lifting of (X, Y); exact in the relaxations when Y is a
/// projection matrix with X = Y X.
LiftedPoint exact_lifted_point(const DenseMatrix& x, const SymMatrix& yProjection);

struct FeasibilityReport {
  double maxEqualityViolation = 0.0;
  double minInequalitySlack = 0.0;  // negative = violated
  double minBlockEigenvalue = 0.0;  // over all PSD blocks at the point
};

/// Evaluate every row and PSD block of a full lifted program at an explicit
/// lifted point (row-stacked problems).
FeasibilityReport check_full_lifted_feasibility(const ConicProgram& prog, const LiftedPoint& pt);

}  // namespace lrsdp
