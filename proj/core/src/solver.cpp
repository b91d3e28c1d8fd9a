#include "lrsdp/solver.hpp"

#include "lrsdp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <memory>
#include <vector>

namespace lrsdp {

namespace {

// Projection onto {x : Ax = b} shifts x by A^T (AA^T)^{-1} (Ax - b). The
// Gram matrix is factored once per data build; a rank-revealing dense
// fallback covers programs with redundant rows.
class AffineProjector {
 public:
  AffineProjector(Eigen::SparseMatrix<double> a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() == 0) return;
    Eigen::SparseMatrix<double> gram = (a_ * Eigen::SparseMatrix<double>(a_.transpose())).pruned();
    ldlt_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
    ldlt_->compute(gram);
    bool ok = ldlt_->info() == Eigen::Success;
    if (ok) {
      // probe the factorization; near-singular Gram matrices can pass
      // compute() but solve poorly
      Vector probe = Vector::Ones(gram.rows());
      Vector rhs = gram.selfadjointView<Eigen::Lower>() * probe;
      Vector back = ldlt_->solve(rhs);
      ok = back.allFinite() &&
           (gram.selfadjointView<Eigen::Lower>() * back - rhs).norm() <= 1e-8 * (1.0 + rhs.norm());
    }
    if (!ok) {
      ldlt_.reset();
      cod_ = std::make_unique<Eigen::CompleteOrthogonalDecomposition<DenseMatrix>>(
          DenseMatrix(gram));
    }
  }

  // the multiplier t with AA^T t = A w - b; the projection is x = w - A^T t
  Vector multiplier(const Vector& w) const {
    Vector rhs = a_ * w - b_;
    if (ldlt_) return ldlt_->solve(rhs);
    return cod_->solve(rhs);  // least-squares / minimum-norm
  }

 private:
  Eigen::SparseMatrix<double> a_;
  Vector b_;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
  std::unique_ptr<Eigen::CompleteOrthogonalDecomposition<DenseMatrix>> cod_;
};

// Scaled copy of the program data: columns by a cone-preserving diagonal
// (x = colScale .* xhat), rows renormalized to unit Euclidean norm.
struct ScaledData {
  Eigen::SparseMatrix<double> a;
  Eigen::SparseMatrix<double> at;
  Vector b, c;
  Vector colScale, rowScale;
  std::unique_ptr<AffineProjector> projector;
};

ScaledData build_scaled(const ConicProgram& program, Vector colScale) {
  const auto& aOrig = program.matrix();
  const int n = program.num_vars();
  const int m = static_cast<int>(aOrig.rows());

  ScaledData sd;
  sd.colScale = std::move(colScale);
  sd.rowScale = Vector::Ones(m);

  Vector rowNorm2 = Vector::Zero(m);
  for (int j = 0; j < n; ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(aOrig, j); it; ++it) {
      const double v = it.value() * sd.colScale(j);
      rowNorm2(it.row()) += v * v;
    }
  }
  for (int i = 0; i < m; ++i) {
    const double nrm = std::sqrt(rowNorm2(i));
    if (nrm > 1e-14) sd.rowScale(i) = 1.0 / nrm;
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (int j = 0; j < n; ++j) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(aOrig, j); it; ++it) {
      trips.emplace_back(static_cast<int>(it.row()), j,
                         it.value() * sd.rowScale(it.row()) * sd.colScale(j));
    }
  }
  sd.a.resize(m, n);
  sd.a.setFromTriplets(trips.begin(), trips.end());
  sd.a.makeCompressed();
  sd.at = sd.a.transpose();
  sd.b = sd.rowScale.asDiagonal() * program.rhs_vector();
  sd.c = sd.colScale.asDiagonal() * program.cost_vector();
  sd.projector = std::make_unique<AffineProjector>(sd.a, sd.b);
  return sd;
}

// Cone-preserving per-coordinate scales matched to an iterate's magnitudes:
// congruence by the square roots of block diagonals on PSD blocks, one
// uniform scale per second-order / nonneg / free block.
Vector scales_from_iterate(const ConicProgram& program, const Vector& xOrig) {
  const int n = program.num_vars();
  Vector scale = Vector::Ones(n);
  for (const ConeBlock& blk : program.blocks()) {
    if (blk.kind == ConeKind::Psd) {
      SymMatrix m = smat(xOrig.segment(blk.offset, blk.scalarSize));
      double maxDiag = 0.0;
      for (int i = 0; i < blk.size; ++i) maxDiag = std::max(maxDiag, m(i, i));
      if (maxDiag <= 1e-12) continue;
      Vector e(blk.size);
      const double floor = std::max(1e-6, 1e-2 * maxDiag);
      for (int i = 0; i < blk.size; ++i) e(i) = std::sqrt(std::max(m(i, i), floor));
      for (int j = 0; j < blk.size; ++j) {
        for (int i = 0; i <= j; ++i) {
          scale(blk.offset + static_cast<int>(SymMatrix::tri_slot(i, j))) = e(i) * e(j);
        }
      }
    } else {
      const double mag = xOrig.segment(blk.offset, blk.scalarSize).lpNorm<Eigen::Infinity>();
      if (mag > 1e-12) scale.segment(blk.offset, blk.scalarSize).setConstant(mag);
    }
  }
  for (int j = 0; j < n; ++j) scale(j) = std::min(std::max(scale(j), 1e-6), 1e8);
  return scale;
}

// Type-II Anderson acceleration over a fixed-point map, with divergence
// safeguarding handled by the caller (reset()).
class Anderson {
 public:
  Anderson(int dim, int memory) : memory_(memory) {
    dz_.resize(dim, memory);
    dg_.resize(dim, memory);
  }

  void reset() {
    count_ = 0;
    havePrev_ = false;
  }

  // Feed the pair (zeta_k, g_k); returns the accelerated next iterate or an
  // empty vector when there is not enough history yet.
  Vector step(const Vector& zeta, const Vector& g) {
    Vector out;
    if (havePrev_) {
      const int col = count_ % memory_;
      dz_.col(col) = zeta - prevZeta_;
      dg_.col(col) = g - prevG_;
      ++count_;
      const int m = std::min(count_, memory_);
      const DenseMatrix gBlock = dg_.leftCols(m);
      DenseMatrix gram = gBlock.transpose() * gBlock;
      gram.diagonal().array() += 1e-10 * (1.0 + gram.trace());
      const Vector gamma = gram.ldlt().solve(gBlock.transpose() * g);
      out = zeta + g - (dz_.leftCols(m) + gBlock) * gamma;
    }
    prevZeta_ = zeta;
    prevG_ = g;
    havePrev_ = true;
    return out;
  }

 private:
  int memory_;
  DenseMatrix dz_, dg_;
  Vector prevZeta_, prevG_;
  int count_ = 0;
  bool havePrev_ = false;
};

void project_block(const ConeBlock& blk, Vector& v) {
  switch (blk.kind) {
    case ConeKind::Free:
      return;
    case ConeKind::Nonneg: {
      auto seg = v.segment(blk.offset, blk.size);
      seg = seg.cwiseMax(0.0);
      return;
    }
    case ConeKind::SecondOrder: {
      auto seg = v.segment(blk.offset, blk.size);
      const double t = seg(0);
      const double nrm = seg.tail(blk.size - 1).norm();
      if (t >= nrm) return;
      if (t <= -nrm) {
        seg.setZero();
        return;
      }
      const double alpha = 0.5 * (t + nrm);
      seg.tail(blk.size - 1) *= alpha / nrm;
      seg(0) = alpha;
      return;
    }
    case ConeKind::Psd: {
      auto seg = v.segment(blk.offset, blk.scalarSize);
      SymMatrix m = smat(seg);
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m.full());
      if (es.info() != Eigen::Success)
        throw std::runtime_error("cone projection: eigensolver failed");
      Vector lam = es.eigenvalues().cwiseMax(0.0);
      DenseMatrix p = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
      SymMatrix sym(m.dim());
      for (int j = 0; j < m.dim(); ++j)
        for (int i = 0; i <= j; ++i) sym.set(i, j, 0.5 * (p(i, j) + p(j, i)));
      seg = svec(sym);
      return;
    }
  }
}

}  // namespace

Vector project_cones(const ConicProgram& program, const Vector& v) {
  Vector out = v;
  for (const ConeBlock& blk : program.blocks()) project_block(blk, out);
  return out;
}

Residuals compute_residuals(const ConicProgram& program, const Vector& x, const Vector& y,
                            const Vector& s) {
  const auto& a = program.matrix();
  const auto& b = program.rhs_vector();
  const auto& c = program.cost_vector();
  const double ctx = c.dot(x);
  const double bty = b.dot(y);
  Residuals r;
  r.primal = (a * x - b).norm() / (1.0 + b.norm());
  r.dual = (a.transpose() * y + s - c).norm() / (1.0 + c.norm());
  r.gap = std::abs(ctx - bty) / (1.0 + std::abs(ctx) + std::abs(bty));
  return r;
}

ConicSolution solve(const ConicProgram& program, const SolverSettings& settings) {
  if (!program.finalized()) throw std::logic_error("solve: program not finalized");
  const auto start = std::chrono::steady_clock::now();

  const int n = program.num_vars();
  const int m = static_cast<int>(program.matrix().rows());

  ScaledData sd = build_scaled(program, Vector::Ones(n));
  // magnitude-matched rescaling restarts; after the last one the iteration
  // geometry is frozen so the asymptotic behavior is plain splitting
  const std::vector<long> rescaleAt = settings.equilibrate
                                          ? std::vector<long>{250, 1000, 4000}
                                          : std::vector<long>{};

  auto basePenalty = [&]() {
    const double r = 0.1 * settings.penaltyParameter * (1.0 + sd.c.norm()) / (1.0 + sd.b.norm());
    return std::min(std::max(r, 1e-4), 1e4);
  };
  double rho = basePenalty();

  Vector x = Vector::Zero(n);
  Vector y = Vector::Zero(m);
  Vector s = Vector::Zero(n);

  const double alpha = settings.overRelaxation;
  const bool useAnderson = settings.andersonMemory > 0;
  Anderson anderson(2 * n, std::max(settings.andersonMemory, 1));
  Vector zeta = Vector::Zero(2 * n);
  double bestResidual = std::numeric_limits<double>::infinity();

  ConicSolution sol;
  sol.status = SolveStatus::MaxIterations;

  Vector xOut = Vector::Zero(n);  // original-metric primal iterate
  auto unscaleY = [&](const Vector& v) { return Vector(sd.rowScale.asDiagonal() * v); };
  auto unscaleS = [&](const Vector& v) { return Vector(v.cwiseQuotient(sd.colScale)); };

  // best certified iterate so far (returned when the run does not converge)
  struct BestIterate {
    double combined = std::numeric_limits<double>::infinity();
    Vector x, y, s;
  } best;

  long iter = 0;
  long checksSinceRescale = 0;
  size_t nextRescale = 0;
  for (iter = 1; iter <= settings.maxIterations; ++iter) {
    Vector z = zeta.head(n);
    Vector u = zeta.tail(n);
    // affine step: minimize c^T x + (rho/2)||x - (z - u)||^2 over Ax = b
    Vector w = z - u - sd.c / rho;
    if (m > 0) {
      Vector t = sd.projector->multiplier(w);
      x = w - sd.at * t;
      y = -rho * t;
    } else {
      x = w;
    }
    // cone step on the over-relaxed point, then the scaled dual update
    Vector v = alpha * x + (1.0 - alpha) * z + u;
    Vector zP = project_cones(program, v);
    Vector uP = v - zP;
    s = -rho * uP;

    Vector zetaPlain(2 * n);
    zetaPlain.head(n) = zP;
    zetaPlain.tail(n) = uP;
    xOut = sd.colScale.asDiagonal() * zP;

    if (iter % settings.checkInterval == 0 || iter == settings.maxIterations) {
      if (!zP.allFinite() || !x.allFinite()) {
        sol.status = SolveStatus::NumericalFailure;
        break;
      }
      // residuals are certified against the original program data
      Residuals r = compute_residuals(program, xOut, unscaleY(y), unscaleS(s));
      const double obj = program.cost_vector().dot(xOut);
      if (settings.onCheck) settings.onCheck(iter, r.primal, r.dual, r.gap, obj);
      if (settings.verbose) {
        std::fprintf(stderr, "%ld,%.3e,%.3e,%.3e,%.10g\n", iter, r.primal, r.dual, r.gap, obj);
      }
      if (r.primal <= settings.epsPrimal && r.dual <= settings.epsDual &&
          r.gap <= settings.epsGap) {
        sol.status = SolveStatus::Optimal;
        break;
      }
      const double combined = std::max({r.primal, r.dual, r.gap});
      if (combined < best.combined) {
        best.combined = combined;
        best.x = xOut;
        best.y = unscaleY(y);
        best.s = unscaleS(s);
      } else if (combined > 1e3 * best.combined && best.x.size() > 0) {
        // acceleration or rescaling excursion: restart from the best point
        zetaPlain.head(n) = best.x.cwiseQuotient(sd.colScale);
        zetaPlain.tail(n) = -(sd.colScale.asDiagonal() * best.s) / rho;
        anderson.reset();
        bestResidual = std::numeric_limits<double>::infinity();
      }
      ++checksSinceRescale;
      if (settings.adaptivePenalty && checksSinceRescale >= settings.penaltyCooldown) {
        double newRho = rho;
        if (r.primal > 5.0 * r.dual) {
          newRho = std::min(rho * 2.0, 1e4);
        } else if (r.dual > 5.0 * r.primal) {
          newRho = std::max(rho / 2.0, 1e-4);
        }
        if (newRho != rho) {
          const double ratio = rho / newRho;  // keep the unscaled dual continuous
          uP *= ratio;
          zetaPlain.tail(n) = uP;
          rho = newRho;
          checksSinceRescale = 0;
          anderson.reset();
          bestResidual = std::numeric_limits<double>::infinity();
        }
      }
    }

    if (nextRescale < rescaleAt.size() && iter >= rescaleAt[nextRescale]) {
      ++nextRescale;
      const Vector newScale = scales_from_iterate(program, xOut);
      if (std::getenv("LRSDP_TRACE_SCALE")) {
        std::fprintf(stderr, "rescale@%ld: min=%.3g max=%.3g rho=%.3g\n", iter,
                     newScale.minCoeff(), newScale.maxCoeff(), rho);
      }
      const Vector sOrig = unscaleS(s);
      ScaledData fresh = build_scaled(program, newScale);
      // map the state into the new scaling
      Vector zNewScale = xOut.cwiseQuotient(fresh.colScale);
      Vector uNewScale = -(fresh.colScale.asDiagonal() * sOrig) / rho;
      sd = std::move(fresh);
      zeta.head(n) = zNewScale;
      zeta.tail(n) = uNewScale;
      anderson.reset();
      bestResidual = std::numeric_limits<double>::infinity();
      rho = basePenalty();
      checksSinceRescale = 0;
      continue;
    }

    if (useAnderson) {
      const Vector g = zetaPlain - zeta;
      const double gnorm = g.norm();
      if (gnorm > 10.0 * bestResidual || !g.allFinite()) {
        // diverging acceleration: drop the history, take the plain step
        anderson.reset();
        bestResidual = std::numeric_limits<double>::infinity();
        zeta = zetaPlain;
      } else {
        bestResidual = std::min(bestResidual, gnorm);
        Vector cand = anderson.step(zeta, g);
        zeta = (cand.size() > 0 && cand.allFinite()) ? std::move(cand) : zetaPlain;
      }
    } else {
      zeta = zetaPlain;
    }
  }
  if (iter > settings.maxIterations) iter = settings.maxIterations;

  if (sol.status == SolveStatus::Optimal || best.x.size() == 0) {
    sol.x = xOut;
    sol.y = unscaleY(y);
    sol.s = unscaleS(s);
  } else {
    // non-converged: report the best certified iterate seen
    sol.x = best.x;
    sol.y = best.y;
    sol.s = best.s;
  }
  sol.primalObjective = program.cost_vector().dot(sol.x);
  sol.dualObjective = program.rhs_vector().dot(sol.y);
  Residuals r = compute_residuals(program, sol.x, sol.y, sol.s);
  sol.primalResidual = r.primal;
  sol.dualResidual = r.dual;
  sol.gapResidual = r.gap;
  sol.iterations = iter;
  sol.wallTimeSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!sol.x.allFinite() || !sol.y.allFinite()) sol.status = SolveStatus::NumericalFailure;
  return sol;
}

}  // namespace lrsdp
