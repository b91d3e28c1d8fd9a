#include "lrsdp/alternating.hpp"

#include "lrsdp/linalg.hpp"
#include "lrsdp/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lrsdp {

namespace {

Vector solve_ridge(const DenseMatrix& lhs, const Vector& rhs) {
  Eigen::LDLT<DenseMatrix> ldlt(lhs);
  Vector u = ldlt.solve(rhs);
  if (ldlt.info() == Eigen::Success && u.allFinite()) return u;
  // singular subproblem (unregularized row with < r observations): jitter
  DenseMatrix j = lhs + 1e-10 * DenseMatrix::Identity(lhs.rows(), lhs.cols());
  return Eigen::LDLT<DenseMatrix>(j).solve(rhs);
}

double objective_value(const ObservedMatrix& obs, const DenseMatrix& x, double ridge,
                       double lossScale) {
  double v = ridge * x.squaredNorm();
  for (const auto& [i, j] : obs.omega) {
    const double d = x(i, j) - obs.a(i, j);
    v += lossScale * d * d;
  }
  return v;
}

struct SweepOutcome {
  DenseMatrix x;
  double objective;
  int sweeps;
};

SweepOutcome run_from(DenseMatrix u, DenseMatrix v, const ObservedMatrix& obs,
                      const AMSettings& s, double ridge, double lossScale) {
  const int n = obs.rows(), m = obs.cols(), r = s.rank;
  std::vector<std::vector<int>> rowObs(n), colObs(m);
  for (const auto& [i, j] : obs.omega) {
    rowObs[i].push_back(j);
    colObs[j].push_back(i);
  }

  double prev = objective_value(obs, u * v, ridge, lossScale);
  int sweep = 0;
  for (sweep = 1; sweep <= s.maxSweeps; ++sweep) {
    const DenseMatrix vvt = v * v.transpose();  // r x r
    for (int i = 0; i < n; ++i) {
      DenseMatrix lhs = ridge * vvt;
      Vector rhs = Vector::Zero(r);
      for (int j : rowObs[i]) {
        lhs.noalias() += lossScale * v.col(j) * v.col(j).transpose();
        rhs.noalias() += lossScale * obs.a(i, j) * v.col(j);
      }
      u.row(i) = solve_ridge(lhs, rhs).transpose();
    }
    const DenseMatrix utu = u.transpose() * u;
    for (int j = 0; j < m; ++j) {
      DenseMatrix lhs = ridge * utu;
      Vector rhs = Vector::Zero(r);
      for (int i : colObs[j]) {
        lhs.noalias() += lossScale * u.row(i).transpose() * u.row(i);
        rhs.noalias() += lossScale * obs.a(i, j) * u.row(i).transpose();
      }
      v.col(j) = solve_ridge(lhs, rhs);
    }
    const double cur = objective_value(obs, u * v, ridge, lossScale);
    if (prev - cur < s.relTol * (1.0 + std::abs(prev))) {
      prev = std::min(prev, cur);
      break;
    }
    prev = cur;
  }
  return {u * v, prev, std::min(sweep, s.maxSweeps)};
}

}  // namespace

AMResult alternating_minimization(const ObservedMatrix& obs, const AMSettings& s,
                                  double lossScale, double lambda) {
  obs.validate();
  if (s.rank < 1) throw std::invalid_argument("alternating_minimization: rank must be >= 1");
  const int n = obs.rows(), m = obs.cols(), r = s.rank;
  const double ridge = s.gamma > 0.0 ? 1.0 / (2.0 * s.gamma) : 0.0;

  // truncated-SVD initialization on the masked data
  const TruncatedSvd svd = truncated_svd(masked(obs), r);
  const Vector scale = svd.s.cwiseSqrt();
  DenseMatrix u0 = svd.u * scale.asDiagonal();
  DenseMatrix v0 = scale.asDiagonal() * svd.v.transpose();

  SweepOutcome best = run_from(u0, v0, obs, s, ridge, lossScale);
  for (int restart = 1; restart < s.restarts; ++restart) {
    CounterRng rng(s.seed + static_cast<uint64_t>(restart));
    DenseMatrix ur(n, r), vr(r, m);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < r; ++c) ur(i, c) = rng.next_normal();
    for (int c = 0; c < r; ++c)
      for (int j = 0; j < m; ++j) vr(c, j) = rng.next_normal();
    SweepOutcome cand = run_from(ur, vr, obs, s, ridge, lossScale);
    if (cand.objective < best.objective) best = cand;
  }

  AMResult out;
  out.x = best.x;
  out.upperBound = best.objective + lambda * r;
  out.sweeps = best.sweeps;
  return out;
}

double gap(double upperBound, double lowerBound, double tol) {
  if (!(upperBound > 0.0)) throw std::invalid_argument("gap: upper bound must be positive");
  if (lowerBound > upperBound) {
    if (lowerBound - upperBound <= tol * (1.0 + std::abs(upperBound))) return 0.0;
  }
  return (upperBound - lowerBound) / upperBound;
}

}  // namespace lrsdp
