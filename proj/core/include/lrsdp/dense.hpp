#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lrsdp {

// Dense rectangular matrices are plain Eigen matrices throughout the library.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void require_finite(const DenseMatrix& m, const char* what = "matrix") {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": entries must be finite");
  }
}

/// Symmetric matrix with a single stored triangle, so entry (i,j) and entry
/// (j,i) can never disagree. Storage is the upper triangle in column-major
/// slot order: (0,0), (0,1), (1,1), (0,2), ...
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : dim_(dim), tri_(static_cast<size_t>(dim) * (dim + 1) / 2, 0.0) {
    if (dim < 0) throw std::invalid_argument("SymMatrix: negative dimension");
  }

  static SymMatrix identity(int dim) {
    SymMatrix s(dim);
    for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
    return s;
  }

  // Accepts a nearly symmetric dense matrix; entries are averaged across the
  // diagonal. Asymmetry beyond `tol` is an error.
  static SymMatrix from_dense(const DenseMatrix& m, double tol = 1e-9) {
    if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix: not square");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    SymMatrix s(static_cast<int>(m.rows()));
    for (int j = 0; j < m.cols(); ++j) {
      for (int i = 0; i <= j; ++i) {
        if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
          throw std::invalid_argument("SymMatrix: input is not symmetric");
        }
        s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
      }
    }
    return s;
  }

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return tri_[slot(i, j)]; }
  void set(int i, int j, double v) { tri_[slot(i, j)] = v; }
  void add(int i, int j, double v) { tri_[slot(i, j)] += v; }

  DenseMatrix full() const {
    DenseMatrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (int i = 0; i <= j; ++i) m(i, j) = m(j, i) = (*this)(i, j);
    return m;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  // Column-major upper-triangle slot of (i,j); order is shared with svec().
  static size_t tri_slot(int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<size_t>(j) * (j + 1) / 2 + i;
  }

 private:
  size_t slot(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::out_of_range("SymMatrix: index");
    return tri_slot(i, j);
  }

  int dim_ = 0;
  std::vector<double> tri_;
};

/// Non-owning view of a matrix partitioned into an equally sized block grid.
/// block(i,j) is the paper-style (i,j) block.
class BlockView {
 public:
  BlockView(const DenseMatrix& base, int blockHeight, int blockWidth)
      : base_(&base), bh_(blockHeight), bw_(blockWidth) {
    if (blockHeight <= 0 || blockWidth <= 0 ||
        base.rows() % blockHeight != 0 || base.cols() % blockWidth != 0) {
      throw std::invalid_argument("BlockView: block shape does not tile the base matrix");
    }
    br_ = static_cast<int>(base.rows()) / blockHeight;
    bc_ = static_cast<int>(base.cols()) / blockWidth;
  }

  int blockRows() const { return br_; }
  int blockCols() const { return bc_; }
  int blockHeight() const { return bh_; }
  int blockWidth() const { return bw_; }

  DenseMatrix block(int i, int j) const {
    if (i < 0 || j < 0 || i >= br_ || j >= bc_) throw std::out_of_range("BlockView: block index");
    return base_->block(static_cast<Eigen::Index>(i) * bh_, static_cast<Eigen::Index>(j) * bw_, bh_, bw_);
  }

 private:
  const DenseMatrix* base_;
  int bh_, bw_, br_ = 0, bc_ = 0;
};

}  // namespace lrsdp
