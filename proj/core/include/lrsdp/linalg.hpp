#pragma once

#include "lrsdp/dense.hpp"

#include <utility>

namespace lrsdp {

// Row-stacked vectorization: segment i of length m is row i of X.
// This equals vec(X^T) in column-stacking notation.
Vector vec_t(const DenseMatrix& x);

// Column-stacked vectorization: segment j of length n is column j of X.
Vector vec(const DenseMatrix& x);

// Inverse maps.
DenseMatrix unvec_t(const Vector& v, int rows, int cols);
DenseMatrix unvec(const Vector& v, int rows, int cols);

// The n^2 x n^2 permutation K with K*vec(Y) = vec(Y^T) for every n x n Y.
// K is symmetric and involutory.
DenseMatrix commutation_matrix(int n);

// Coordinate form of the commutation permutation: vec index (a + b*n) of Y_ab
// maps to (b + a*n).
inline int commutation_image(int q, int n) { return (q / n) + (q % n) * n; }

// I_copies (x) S, a block-diagonal matrix with `copies` diagonal copies of S.
DenseMatrix kron_identity_left(int copies, const DenseMatrix& s);

// Moore-Penrose pseudoinverse; singular values below cutoffRel * sigma_max
// are treated as zero.
DenseMatrix pseudoinverse(const DenseMatrix& m, double cutoffRel = 1e-9);

struct EigSym {
  Vector values;       // ascending
  DenseMatrix vectors; // orthonormal columns, same order
};

// Symmetric eigendecomposition. Throws std::runtime_error if the iterative
// solver fails to converge within its budget.
EigSym eig_sym(const SymMatrix& m);
EigSym eig_sym(const DenseMatrix& m);

// Frobenius-nearest positive semidefinite matrix (clip negative eigenvalues).
SymMatrix psd_project(const SymMatrix& m);

struct TruncatedSvd {
  DenseMatrix u;  // n x r, orthonormal columns
  Vector s;       // r, descending, nonnegative
  DenseMatrix v;  // m x r, orthonormal columns
};

// Best rank-r approximation factors of A. Deterministic sign convention:
// in each column of U the entry of largest magnitude (lowest index on ties)
// is nonnegative.
TruncatedSvd truncated_svd(const DenseMatrix& a, int r);

// Sum of the diagonal blocks of a square block grid.
DenseMatrix block_diag_sum(const BlockView& w);

// Smallest eigenvalue of a symmetric matrix (feasibility checks).
double min_eigenvalue(const DenseMatrix& m);

}  // namespace lrsdp
