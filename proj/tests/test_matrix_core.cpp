#include "lrsdp/linalg.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace lrsdp;
using namespace lrsdp::testutil;

namespace {

// independent oracle: explicit transpose followed by column stacking
Vector vec_t_oracle(const DenseMatrix& x) {
  const DenseMatrix xt = x.transpose();
  Vector v(xt.size());
  int idx = 0;
  for (int j = 0; j < xt.cols(); ++j)
    for (int i = 0; i < xt.rows(); ++i) v(idx++) = xt(i, j);
  return v;
}

}  // namespace

TEST_CASE("vec_t stacks rows") {
  DenseMatrix one(1, 1);
  one << 5.0;
  CHECK(vec_t(one)(0) == 5.0);

  DenseMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const Vector v = vec_t(x);
  CHECK(v(0) == 1);
  CHECK(v(1) == 2);
  CHECK(v(2) == 3);
  CHECK(v(3) == 4);

  CounterRng rng(1);
  const DenseMatrix r = rand_matrix(rng, 3, 2);
  CHECK((vec_t(r) - vec_t_oracle(r)).norm() == 0.0);
}

TEST_CASE("vec stacks columns") {
  DenseMatrix one(1, 1);
  one << 5.0;
  CHECK(vec(one)(0) == 5.0);

  DenseMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const Vector v = vec(x);
  CHECK(v(0) == 1);
  CHECK(v(1) == 3);
  CHECK(v(2) == 2);
  CHECK(v(3) == 4);

  CounterRng rng(2);
  for (int t = 0; t < 10; ++t) {
    const DenseMatrix r = rand_matrix(rng, 4, 3);
    CHECK((vec(r) - vec_t(r.transpose())).norm() == 0.0);
  }
}

TEST_CASE("vec and vec_t agree up to one fixed permutation") {
  const int n = 3, m = 4;
  // P maps vec_t coordinates to vec coordinates, built once
  DenseMatrix perm = DenseMatrix::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) perm(i + j * n, i * m + j) = 1.0;
  CounterRng rng(3);
  for (int t = 0; t < 5; ++t) {
    const DenseMatrix x = rand_matrix(rng, n, m);
    CHECK((vec(x) - perm * vec_t(x)).norm() == 0.0);
  }
}

TEST_CASE("commutation matrix") {
  CHECK(commutation_matrix(1)(0, 0) == 1.0);

  const DenseMatrix k2 = commutation_matrix(2);
  // swaps coordinates 2 and 3 (1-based), fixes 1 and 4
  CHECK(k2(0, 0) == 1.0);
  CHECK(k2(1, 2) == 1.0);
  CHECK(k2(2, 1) == 1.0);
  CHECK(k2(3, 3) == 1.0);

  CounterRng rng(4);
  const DenseMatrix y = rand_matrix(rng, 4, 4);
  const DenseMatrix k4 = commutation_matrix(4);
  CHECK((k4 * vec(y) - vec(y.transpose())).norm() == 0.0);
  CHECK((k4 * k4.transpose() - DenseMatrix::Identity(16, 16)).norm() == 0.0);
}

TEST_CASE("kron_identity_left") {
  CounterRng rng(5);
  DenseMatrix s(2, 2);
  s << 1, 2, 3, 4;
  CHECK((kron_identity_left(1, s) - s).norm() == 0.0);

  const DenseMatrix k = kron_identity_left(2, s);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 0) == 1.0);
  CHECK(k(2, 2) == 1.0);
  CHECK(k(0, 2) == 0.0);

  // vec(S X) = (I_m kron S) vec(X)
  const DenseMatrix sr = rand_matrix(rng, 3, 3);
  const DenseMatrix x = rand_matrix(rng, 3, 5);
  CHECK((vec(sr * x) - kron_identity_left(5, sr) * vec(x)).norm() < 1e-12);
}

TEST_CASE("pseudoinverse") {
  CHECK((pseudoinverse(DenseMatrix::Identity(3, 3)) - DenseMatrix::Identity(3, 3)).norm() <
        1e-12);

  DenseMatrix d = DenseMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  const DenseMatrix dp = pseudoinverse(d);
  CHECK(dp(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dp(1, 1) == 0.0);

  CounterRng rng(6);
  const DenseMatrix left = rand_matrix(rng, 4, 2);
  const DenseMatrix right = rand_matrix(rng, 2, 3);
  const DenseMatrix m = left * right;  // rank-deficient 4x3
  const DenseMatrix mp = pseudoinverse(m);
  const double tol = 1e-8 * (1.0 + m.norm());
  CHECK((m * mp * m - m).norm() < tol);
  CHECK((mp * m * mp - mp).norm() < tol);
  CHECK(((m * mp).transpose() - m * mp).norm() < tol);
  CHECK(((mp * m).transpose() - mp * m).norm() < tol);
}

TEST_CASE("eig_sym") {
  SymMatrix d(2);
  d.set(0, 0, 3.0);
  d.set(1, 1, 1.0);
  const EigSym e = eig_sym(d);
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(3.0));

  CHECK(eig_sym(SymMatrix(3)).values.cwiseAbs().maxCoeff() == 0.0);

  CounterRng rng(7);
  const SymMatrix m = rand_sym(rng, 6);
  const EigSym em = eig_sym(m);
  const DenseMatrix mf = m.full();
  const double tol = 1e-10 * (1.0 + mf.norm());
  CHECK((em.vectors * em.values.asDiagonal() * em.vectors.transpose() - mf).norm() < tol);
  CHECK((em.vectors.transpose() * em.vectors - DenseMatrix::Identity(6, 6)).norm() < 1e-10);
}

TEST_CASE("psd_project") {
  CounterRng rng(8);
  const SymMatrix p = rand_psd(rng, 4);
  CHECK((psd_project(p).full() - p.full()).norm() < 1e-10 * (1.0 + p.full().norm()));

  SymMatrix d(2);
  d.set(0, 0, 1.0);
  d.set(1, 1, -2.0);
  const SymMatrix dp = psd_project(d);
  CHECK(dp(0, 0) == doctest::Approx(1.0));
  CHECK(dp(1, 1) == doctest::Approx(0.0));

  // Frobenius-nearest: no PSD perturbation of the result is strictly closer
  const SymMatrix m = rand_sym(rng, 5);
  const SymMatrix proj = psd_project(m);
  const double base = (m.full() - proj.full()).norm();
  for (int t = 0; t < 30; ++t) {
    const DenseMatrix dir = rand_matrix(rng, 5, 1);
    for (double step : {1e-3, 1e-2, 1e-1}) {
      const DenseMatrix cand = proj.full() + step * dir * dir.transpose();
      CHECK((m.full() - cand).norm() >= base - 1e-12);
    }
    const SymMatrix other = rand_psd(rng, 5);
    for (double mix : {1e-3, 1e-2}) {
      const DenseMatrix cand = (1.0 - mix) * proj.full() + mix * other.full();
      CHECK((m.full() - cand).norm() >= base - 1e-12);
    }
  }

  // idempotent
  CHECK((psd_project(proj).full() - proj.full()).norm() < 1e-10 * (1.0 + base));
}

TEST_CASE("truncated_svd") {
  CounterRng rng(9);
  const DenseMatrix u = rand_matrix(rng, 4, 1);
  const DenseMatrix v = rand_matrix(rng, 3, 1);
  const DenseMatrix rank1 = u * v.transpose();
  const TruncatedSvd t1 = truncated_svd(rank1, 1);
  CHECK((t1.u * t1.s.asDiagonal() * t1.v.transpose() - rank1).norm() < 1e-10);

  const DenseMatrix a = rand_matrix(rng, 5, 4);
  const TruncatedSvd tf = truncated_svd(a, 4);
  CHECK((tf.u * tf.s.asDiagonal() * tf.v.transpose() - a).norm() < 1e-10);

  // discarded energy equals the tail eigenvalues of A^T A
  const TruncatedSvd t2 = truncated_svd(a, 2);
  const DenseMatrix approx = t2.u * t2.s.asDiagonal() * t2.v.transpose();
  const EigSym gram = eig_sym(SymMatrix::from_dense(a.transpose() * a, 1e-9));
  const double tailEnergy = gram.values(0) + gram.values(1);  // ascending order
  CHECK((a - approx).squaredNorm() == doctest::Approx(tailEnergy).epsilon(1e-8));

  // orthonormal factors, descending spectrum, deterministic signs
  CHECK((t2.u.transpose() * t2.u - DenseMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK((t2.v.transpose() * t2.v - DenseMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK(t2.s(0) >= t2.s(1));
  for (int c = 0; c < 2; ++c) {
    int arg = 0;
    for (int i = 1; i < 5; ++i)
      if (std::abs(t2.u(i, c)) > std::abs(t2.u(arg, c))) arg = i;
    CHECK(t2.u(arg, c) >= 0.0);
  }
}

TEST_CASE("block_diag_sum") {
  DenseMatrix single(2, 2);
  single << 1, 2, 3, 4;
  CHECK((block_diag_sum(BlockView(single, 2, 2)) - single).norm() == 0.0);

  DenseMatrix grid(2, 2);
  grid << 5, 6, 7, 8;
  const DenseMatrix s = block_diag_sum(BlockView(grid, 1, 1));
  CHECK(s(0, 0) == 13.0);

  CounterRng rng(10);
  const DenseMatrix big = rand_matrix(rng, 6, 6);
  const BlockView view(big, 2, 2);
  DenseMatrix manual = DenseMatrix::Zero(2, 2);
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) manual(i, j) += big(2 * b + i, 2 * b + j);
  CHECK((block_diag_sum(view) - manual).norm() == 0.0);

  CHECK_THROWS_AS(block_diag_sum(BlockView(rand_matrix(rng, 6, 4), 2, 2)),
                  std::invalid_argument);
}

TEST_CASE("coupling block Schur facts on random PSD completions") {
  CounterRng rng(11);
  const int m = 3, n = 4;
  for (int t = 0; t < 20; ++t) {
    // random PSD coupling block with Y <= I
    const DenseMatrix r = rand_matrix(rng, m + n, m + n);
    DenseMatrix c = r * r.transpose();
    const double ymax = eig_sym(SymMatrix::from_dense(
                                    c.bottomRightCorner(n, n), 1e-9))
                            .values.maxCoeff();
    c /= (ymax + 1e-9);  // now Y <= I
    const DenseMatrix tBlock = c.topLeftCorner(m, m);
    const DenseMatrix x = c.bottomLeftCorner(n, m);
    const DenseMatrix y = c.bottomRightCorner(n, n);
    const double scale = 1.0 + c.norm();
    CHECK(min_eigenvalue(y - x * pseudoinverse(tBlock) * x.transpose()) > -1e-8 * scale);
    CHECK(min_eigenvalue(tBlock - x.transpose() * x) > -1e-8 * scale);
  }
}

TEST_CASE("SymMatrix shares one stored triangle") {
  SymMatrix s(3);
  s.set(2, 0, 7.0);
  CHECK(s(0, 2) == 7.0);
  DenseMatrix asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(SymMatrix::from_dense(asym), std::invalid_argument);
}
