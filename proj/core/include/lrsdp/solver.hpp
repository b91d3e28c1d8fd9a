#pragma once

#include "lrsdp/conic.hpp"

#include <functional>

namespace lrsdp {

struct SolverSettings {
  double epsPrimal = 1e-6;
  double epsDual = 1e-6;
  double epsGap = 1e-6;
  long maxIterations = 100000;
  double penaltyParameter = 1.0;
  bool adaptivePenalty = true;
  long checkInterval = 25;
  // checks between penalty rescalings; adapting at every check limit-cycles
  long penaltyCooldown = 4;
  double overRelaxation = 1.6;
  // Anderson acceleration memory on the splitting fixed point (0 = off).
  // Safeguarded; residual certification always uses plain projected iterates.
  int andersonMemory = 20;
  // Ruiz equilibration of the problem data before iterating. Cone structure
  // is preserved (congruence scaling on PSD blocks, uniform on second-order
  // blocks); residuals and certificates are always reported in the original
  // program's metric.
  bool equilibrate = true;
  bool verbose = false;
  // Invoked at every residual check; used for iteration logs and the
  // residual-trend regression tests.
  std::function<void(long iter, double rp, double rd, double gap, double obj)> onCheck;
};

/// Operator-splitting solve: alternate exact projection onto {Ax=b} (cached
/// factorization of A A^T) with projection onto the cone product, tracking a
/// scaled dual. Terminates on the three KKT residuals measured against the
/// stored (row-normalized) program data.
ConicSolution solve(const ConicProgram& program, const SolverSettings& settings = {});

// Recompute the three optimality residuals of (x,y,s) for `program`;
// returns (primal, dual, gap) with the same normalizations solve() uses.
struct Residuals {
  double primal;
  double dual;
  double gap;
};
Residuals compute_residuals(const ConicProgram& program, const Vector& x, const Vector& y,
                            const Vector& s);

// Project a scalarized point onto the cone product (per-block projections).
Vector project_cones(const ConicProgram& program, const Vector& v);

}  // namespace lrsdp
