#include "lrsdp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <stdexcept>

namespace lrsdp {

Vector vec_t(const DenseMatrix& x) {
  const int n = static_cast<int>(x.rows()), m = static_cast<int>(x.cols());
  Vector v(static_cast<Eigen::Index>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) v(static_cast<Eigen::Index>(i) * m + j) = x(i, j);
  return v;
}

Vector vec(const DenseMatrix& x) {
  const int n = static_cast<int>(x.rows()), m = static_cast<int>(x.cols());
  Vector v(static_cast<Eigen::Index>(n) * m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) v(static_cast<Eigen::Index>(j) * n + i) = x(i, j);
  return v;
}

DenseMatrix unvec_t(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw std::invalid_argument("unvec_t: length mismatch");
  DenseMatrix x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x(i, j) = v(static_cast<Eigen::Index>(i) * cols + j);
  return x;
}

DenseMatrix unvec(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw std::invalid_argument("unvec: length mismatch");
  DenseMatrix x(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) x(i, j) = v(static_cast<Eigen::Index>(j) * rows + i);
  return x;
}

DenseMatrix commutation_matrix(int n) {
  if (n < 1) throw std::invalid_argument("commutation_matrix: n must be >= 1");
  const int d = n * n;
  DenseMatrix k = DenseMatrix::Zero(d, d);
  for (int q = 0; q < d; ++q) k(q, commutation_image(q, n)) = 1.0;
  return k;
}

DenseMatrix kron_identity_left(int copies, const DenseMatrix& s) {
  if (copies < 1) throw std::invalid_argument("kron_identity_left: copies must be >= 1");
  const Eigen::Index r = s.rows(), c = s.cols();
  DenseMatrix out = DenseMatrix::Zero(copies * r, copies * c);
  for (int i = 0; i < copies; ++i) out.block(i * r, i * c, r, c) = s;
  return out;
}

DenseMatrix pseudoinverse(const DenseMatrix& m, double cutoffRel) {
  Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0) return DenseMatrix::Zero(m.cols(), m.rows());
  const double cutoff = cutoffRel * sv(0);
  Vector inv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

EigSym eig_sym(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_sym: eigensolver failed to converge within its iteration budget");
  }
  return EigSym{es.eigenvalues(), es.eigenvectors()};
}

EigSym eig_sym(const SymMatrix& m) { return eig_sym(m.full()); }

SymMatrix psd_project(const SymMatrix& m) {
  EigSym e = eig_sym(m);
  Vector clipped = e.values.cwiseMax(0.0);
  DenseMatrix p = e.vectors * clipped.asDiagonal() * e.vectors.transpose();
  // from_dense with a loose tolerance: p is symmetric up to roundoff
  return SymMatrix::from_dense(p, 1e-7);
}

TruncatedSvd truncated_svd(const DenseMatrix& a, int r) {
  const int minDim = static_cast<int>(std::min(a.rows(), a.cols()));
  if (r < 1 || r > minDim) throw std::invalid_argument("truncated_svd: rank out of range");
  Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = svd.matrixU().leftCols(r);
  out.s = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  for (int c = 0; c < r; ++c) {
    int arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.u.rows(); ++i) {
      const double mag = std::abs(out.u(i, c));
      if (mag > best) {
        best = mag;
        arg = static_cast<int>(i);
      }
    }
    if (out.u(arg, c) < 0.0) {
      out.u.col(c) *= -1.0;
      out.v.col(c) *= -1.0;
    }
  }
  return out;
}

DenseMatrix block_diag_sum(const BlockView& w) {
  if (w.blockRows() != w.blockCols())
    throw std::invalid_argument("block_diag_sum: block grid is not square");
  DenseMatrix acc = DenseMatrix::Zero(w.blockHeight(), w.blockWidth());
  for (int i = 0; i < w.blockRows(); ++i) acc += w.block(i, i);
  return acc;
}

double min_eigenvalue(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace lrsdp
