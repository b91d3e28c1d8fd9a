#pragma once

#include "lrsdp/conic.hpp"
#include "lrsdp/problem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrsdp {

// --- matrix completion ----------------------------------------------------

/// Encode the (optionally Frobenius-regularized) completion loss
///   lossScale * sum_Omega (X_ij - A_ij)^2  [+ (1/(2 gamma)) ||X||_F^2]
/// as a LowRankQuadraticProblem. lossScale selects the plain or halved
/// squared loss. gamma <= 0 means no regularization term.
LowRankQuadraticProblem encode_matrix_completion(const ObservedMatrix& obs, double lambda, int k,
                                                 double gamma, double lossScale);

/// Row-wise reduction: one PSD block per row plus the coupling block.
ConicProgram build_mc_reduced(const ObservedMatrix& obs, double lambda, int k, double gamma,
                              double lossScale);

struct MaskGroup {
  std::vector<int> maskColumns;  // sorted observed-column pattern
  std::vector<int> rows;         // rows sharing it
};

/// Partition rows by identical observed-column sets (insertion order of
/// first occurrence).
std::vector<MaskGroup> group_masks(const ObservedMatrix& obs);

/// Mask-grouped variant of the reduced relaxation: one aggregated PSD block
/// per distinct row mask.
ConicProgram build_mc_grouped(const ObservedMatrix& obs, double lambda, int k, double gamma,
                              double lossScale);

/// Intersect the observed column sets of each row pair, producing a cheaper
/// but looser instance.
ObservedMatrix coarsen_masks(const ObservedMatrix& obs,
                             const std::vector<std::pair<int, int>>& rowPairs);

RelaxationSolution decode_mc_reduced(const ConicProgram& prog, const ConicSolution& sol);

// --- reduced-rank regression ----------------------------------------------

struct RRRInstance {
  DenseMatrix a;  // n x p predictors
  DenseMatrix b;  // n x m responses
  double mu = 0.0;

  int n() const { return static_cast<int>(a.rows()); }
  int p() const { return static_cast<int>(a.cols()); }
  int m() const { return static_cast<int>(b.cols()); }
  void validate() const;
};

ConicProgram build_rrr_lifted(const RRRInstance& inst);
ConicProgram build_rrr_compact(const RRRInstance& inst);
RelaxationSolution decode_rrr(const ConicProgram& prog, const ConicSolution& sol);

std::string save_rrr_instance(const RRRInstance& inst);
RRRInstance load_rrr_instance(const std::string& text);

// --- basis pursuit ----------------------------------------------------------

struct RltMode {
  enum Kind { All, SameRowOnly, Subsample } kind = All;
  int sampleCount = 0;
  uint64_t seed = 0;

  static RltMode all() { return {All, 0, 0}; }
  static RltMode same_row_only() { return {SameRowOnly, 0, 0}; }
  static RltMode subsample(int count, uint64_t seed) { return {Subsample, count, seed}; }
};

/// Rank-minimizing recovery with exact interpolation of the observed entries
/// and RLT product equalities over observation pairs.
ConicProgram build_bp_full(const ObservedMatrix& obs, const RltMode& mode);
/// Row-block reduction of the same relaxation (same-row RLT pairs on S^i).
ConicProgram build_bp_reduced(const ObservedMatrix& obs, const RltMode& mode);
RelaxationSolution decode_bp(const ConicProgram& prog, const ConicSolution& sol);

}  // namespace lrsdp
