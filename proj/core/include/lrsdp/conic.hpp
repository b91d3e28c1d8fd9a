#pragma once

#include "lrsdp/dense.hpp"
#include "lrsdp/status.hpp"

#include <Eigen/SparseCore>

#include <map>
#include <string>
#include <vector>

namespace lrsdp {

// Symmetric vectorization with sqrt(2)-scaled off-diagonals, so that
// <M,N> = svec(M)^T svec(N). Slot order matches SymMatrix::tri_slot.
Vector svec(const SymMatrix& m);
SymMatrix smat(const Vector& v);
inline int svec_len(int side) { return side * (side + 1) / 2; }

enum class ConeKind { Free, Nonneg, SecondOrder, Psd };

struct ConeBlock {
  ConeKind kind = ConeKind::Free;
  int size = 0;        // vector length, or side length for Psd
  int offset = 0;      // first scalarized coordinate
  int scalarSize = 0;  // svec length for Psd, size otherwise
  std::string label;
};

/// Cone-constrained linear program in the standard form
///   min c^T x   s.t.  A x = b,  x in K
/// where K is an ordered product of free / nonneg / second-order / PSD
/// blocks and PSD blocks are stored in svec coordinates. Inequality rows are
/// converted to equalities with fresh nonnegative slacks at finalize time,
/// and every equality row is stored with unit Euclidean norm.
class ConicProgram {
 public:
  // Rows hold functional coefficients: a term (idx, a) on an off-diagonal
  // PSD slot means a * X_ij (mirror entry included). The svec scaling is
  // applied only when the standard-form matrix is assembled.
  struct Term {
    int index;
    double coeff;
  };
  using Row = std::vector<Term>;

  // --- cone blocks ---
  int add_free_block(const std::string& label, int len);
  int add_nonneg_block(const std::string& label, int len);
  int add_soc_block(const std::string& label, int len);
  int add_psd_block(const std::string& label, int side);

  const ConeBlock& block(const std::string& label) const;
  bool has_block(const std::string& label) const;
  const std::vector<ConeBlock>& blocks() const { return blocks_; }

  // --- coordinate helpers ---
  int scalar_index(const std::string& label, int i) const;
  int svec_index(const std::string& label, int i, int j) const;

  // Append `coeff * x[label][i]` to a row (vector blocks).
  void add_term(Row& row, const std::string& label, int i, double coeff) const;
  // Append the functional `coeff * X_ij` of a PSD block entry (symmetric
  // pairing: referencing (i,j) with i != j means the matrix entry, not the
  // svec coordinate).
  void add_psd_term(Row& row, const std::string& label, int i, int j, double coeff) const;
  // Append <C, X[r0:r0+d, c0:c0+d]> for the principal submatrix of a PSD
  // block starting at (r0,c0) on the diagonal (r0 == c0).
  void add_submatrix_term(Row& row, const std::string& label, int r0, const SymMatrix& c) const;

  // --- constraints & objective ---
  int add_equality(Row row, double rhs);
  int add_inequality(Row row, double rhs);  // sum(terms) <= rhs
  void add_objective_term(const std::string& label, int i, double coeff);
  void add_objective_matrix(const std::string& label, const SymMatrix& c);
  void add_objective_submatrix(const std::string& label, int r0, const SymMatrix& c);
  void add_objective_psd_entry(const std::string& label, int i, int j, double coeff);
  void add_objective_raw(int scalarIndex, double coeff);
  void set_objective_offset(double v) { objectiveOffset_ = v; }
  double objective_offset() const { return objectiveOffset_; }

  // --- assembly ---
  void finalize();
  bool finalized() const { return finalized_; }
  int num_vars() const;           // scalarized, including slacks
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_inequalities() const { return static_cast<int>(slackOfRow_.size()); }
  const Eigen::SparseMatrix<double>& matrix() const;
  const Vector& rhs_vector() const;
  const Vector& cost_vector() const;

  // --- decoding ---
  Vector block_vector(const std::string& label, const Vector& x) const;
  SymMatrix block_matrix(const std::string& label, const Vector& x) const;
  double psd_entry(const std::string& label, int i, int j, const Vector& x) const;

  // Raw row access for feasibility evaluation in tests and reconstruction
  // checks: returns (row, rhs, slackIndex or -1) in pre-normalization scale.
  struct StoredRow {
    Row terms;
    double rhs;
    int slackScalarIndex;  // -1 for equalities; resolved to a coordinate at finalize
  };
  const std::vector<StoredRow>& stored_rows() const { return storedRows_; }
  const Row& objective_terms() const { return objective_; }

  // 1/sqrt(2) on off-diagonal PSD slots, 1 elsewhere.
  double coordinate_scale(int scalarIndex) const;
  // Value of a stored row's functional at a scalarized point (slack excluded).
  double row_value(const StoredRow& row, const Vector& x) const;
  // Map a scalar coordinate back to (block index, i, j); j == -1 for vector blocks.
  struct Coordinate {
    int blockIndex;
    int i;
    int j;
  };
  Coordinate locate(int scalarIndex) const;

  std::map<std::string, int> meta;  // builder annotations (dimensions etc.)

 private:
  int add_block(ConeKind kind, const std::string& label, int size);
  void require_not_finalized() const;

  std::vector<ConeBlock> blocks_;
  std::map<std::string, int> labelToBlock_;
  std::vector<StoredRow> storedRows_;
  std::vector<double> rhs_;
  std::vector<int> slackOfRow_;  // ordinal -> row index
  Row objective_;
  double objectiveOffset_ = 0.0;

  bool finalized_ = false;
  int scalarCount_ = 0;  // without slacks
  Eigen::SparseMatrix<double> a_;
  Vector b_, c_;
};

struct ConicSolution {
  Vector x;  // cone-feasible primal iterate
  Vector y;  // equality duals
  Vector s;  // dual slacks, in K*
  double primalObjective = 0.0;
  double dualObjective = 0.0;
  double primalResidual = 0.0;
  double dualResidual = 0.0;
  double gapResidual = 0.0;
  SolveStatus status = SolveStatus::NumericalFailure;
  long iterations = 0;
  double wallTimeSeconds = 0.0;
};

}  // namespace lrsdp
