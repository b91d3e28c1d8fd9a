#pragma once

#include "lrsdp/dense.hpp"
#include "lrsdp/rng.hpp"

#include <Eigen/QR>

namespace lrsdp::testutil {

inline DenseMatrix rand_matrix(CounterRng& rng, int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
  return m;
}

inline SymMatrix rand_sym(CounterRng& rng, int dim) {
  SymMatrix s(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i <= j; ++i) s.set(i, j, rng.next_normal());
  return s;
}

inline SymMatrix rand_psd(CounterRng& rng, int dim, double ridge = 0.0) {
  const DenseMatrix r = rand_matrix(rng, dim, dim);
  DenseMatrix p = r * r.transpose() / dim + ridge * DenseMatrix::Identity(dim, dim);
  return SymMatrix::from_dense(p, 1e-9);
}

// random rank-r orthogonal projection
inline SymMatrix rand_projection(CounterRng& rng, int n, int rank) {
  const DenseMatrix g = rand_matrix(rng, n, rank);
  const DenseMatrix q = Eigen::HouseholderQR<DenseMatrix>(g).householderQ() *
                        DenseMatrix::Identity(n, rank);
  return SymMatrix::from_dense(q * q.transpose(), 1e-9);
}

}  // namespace lrsdp::testutil
