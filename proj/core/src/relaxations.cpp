#include "lrsdp/relaxations.hpp"

#include "lrsdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrsdp {

namespace {

// Segment view of the stacked vectorization: row-stacked problems have n
// segments of length m (segment i = row i of X), column-stacked problems m
// segments of length n. The projection variable Y has side nSeg.
struct Layout {
  int n = 0, m = 0;
  bool rowStacked = true;
  int nSeg = 0, segLen = 0;

  static Layout of(const LowRankQuadraticProblem& p) {
    Layout l;
    l.n = p.n;
    l.m = p.m;
    l.rowStacked = p.orientation == VecOrientation::RowStacked;
    l.nSeg = l.rowStacked ? p.n : p.m;
    l.segLen = l.rowStacked ? p.m : p.n;
    return l;
  }
  static Layout of(const ConicProgram& prog) {
    Layout l;
    l.n = prog.meta.at("n");
    l.m = prog.meta.at("m");
    l.rowStacked = prog.meta.at("orient") != 0;
    l.nSeg = l.rowStacked ? l.n : l.m;
    l.segLen = l.rowStacked ? l.m : l.n;
    return l;
  }
  int nm() const { return n * m; }
  int xcoord(int i, int j) const { return rowStacked ? i * segLen + j : j * segLen + i; }
  // matrix indices of the X value held at (segment s, position a)
  std::pair<int, int> entryAt(int s, int a) const {
    return rowStacked ? std::pair<int, int>{s, a} : std::pair<int, int>{a, s};
  }
};

constexpr int kKindFull = 0;
constexpr int kKindCompact = 1;
constexpr int kKindMprt = 2;

void stamp(ConicProgram& prog, const Layout& l, int kind) {
  prog.meta["n"] = l.n;
  prog.meta["m"] = l.m;
  prog.meta["orient"] = l.rowStacked ? 1 : 0;
  prog.meta["kind"] = kind;
}

int require_kind(const ConicProgram& prog, int kind, const char* what) {
  auto it = prog.meta.find("kind");
  if (it == prog.meta.end() || it->second != kind) {
    throw std::invalid_argument(std::string(what) + ": program lacks the required variables");
  }
  return it->second;
}

// Y region lives inside `label` starting at offset yOff; appends I - Y >= 0
// via the slackI block and optionally tr(Y) <= cap.
void add_hull_rows(ConicProgram& prog, const std::string& label, int yOff, int nSeg,
                   double traceCap, bool withCap) {
  prog.add_psd_block("slackI", nSeg);
  for (int b = 0; b < nSeg; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, label, yOff + a, yOff + b, 1.0);
      prog.add_psd_term(row, "slackI", a, b, 1.0);
      prog.add_equality(std::move(row), a == b ? 1.0 : 0.0);
    }
  }
  if (withCap) {
    ConicProgram::Row row;
    for (int a = 0; a < nSeg; ++a) prog.add_psd_term(row, label, yOff + a, yOff + a, 1.0);
    prog.add_inequality(std::move(row), traceCap);
  }
}

void add_quadratic_constraint_rows(ConicProgram& prog, const LowRankQuadraticProblem& p,
                                   const Layout& l) {
  for (const auto& con : p.constraints) {
    ConicProgram::Row row;
    prog.add_submatrix_term(row, "lift", 1, con.q);
    for (int i = 0; i < l.n; ++i) {
      for (int j = 0; j < l.m; ++j) {
        if (con.e(i, j) != 0.0)
          prog.add_psd_term(row, "lift", 0, 1 + l.xcoord(i, j), con.e(i, j));
      }
    }
    prog.add_inequality(std::move(row), con.rhs);
  }
}

void add_lift_objective(ConicProgram& prog, const LowRankQuadraticProblem& p, const Layout& l) {
  const int nm = l.nm();
  for (int j = 0; j < nm; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double h = p.h(i, j);
      if (h != 0.0)
        prog.add_objective_psd_entry("lift", 1 + i, 1 + j, i == j ? h : 2.0 * h);
    }
  }
  for (int i = 0; i < l.n; ++i) {
    for (int j = 0; j < l.m; ++j) {
      if (p.d(i, j) != 0.0)
        prog.add_objective_psd_entry("lift", 0, 1 + l.xcoord(i, j), p.d(i, j));
    }
  }
  prog.set_objective_offset(p.constant);
}

SolverInfo make_info(const ConicSolution& sol) {
  SolverInfo info;
  info.status = sol.status;
  info.primalResidual = sol.primalResidual;
  info.dualResidual = sol.dualResidual;
  info.gapResidual = sol.gapResidual;
  info.iterations = sol.iterations;
  info.wallTimeSeconds = sol.wallTimeSeconds;
  return info;
}

}  // namespace

ConicProgram build_full_lifted(const LowRankQuadraticProblem& p,
                               const StrengtheningOptions& opts) {
  p.validate();
  const Layout l = Layout::of(p);
  if (p.k > l.nSeg)
    throw std::invalid_argument("build_full_lifted: rank cap exceeds the projection dimension");
  const int nm = l.nm();
  const int y2 = l.nSeg * l.nSeg;

  ConicProgram prog;
  prog.add_psd_block("lift", 1 + nm + y2);
  prog.add_psd_block("proj", l.nSeg);
  auto ly = [&](int q) { return 1 + nm + q; };

  {
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  // border carries vec(Y)
  for (int q = 0; q < y2; ++q) {
    const int a = q % l.nSeg, b = q / l.nSeg;
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, ly(q), 1.0);
    prog.add_psd_term(row, "proj", a, b, -1.0);
    prog.add_equality(std::move(row), 0.0);
  }
  add_hull_rows(prog, "proj", 0, l.nSeg, p.k, true);
  // sum_i Wyy^(i,i) = Y
  for (int b = 0; b < l.nSeg; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      for (int i = 0; i < l.nSeg; ++i)
        prog.add_psd_term(row, "lift", ly(i * l.nSeg + a), ly(i * l.nSeg + b), 1.0);
      prog.add_psd_term(row, "proj", a, b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // sum_i Wxy^(i,i) ties to the border copy of X
  for (int s = 0; s < l.nSeg; ++s) {
    for (int a = 0; a < l.segLen; ++a) {
      ConicProgram::Row row;
      for (int i = 0; i < l.nSeg; ++i)
        prog.add_psd_term(row, "lift", 1 + i * l.segLen + a, ly(i * l.nSeg + s), 1.0);
      prog.add_psd_term(row, "lift", 0, 1 + s * l.segLen + a, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  add_quadratic_constraint_rows(prog, p, l);
  add_lift_objective(prog, p, l);
  if (p.lambda != 0.0) {
    for (int a = 0; a < l.nSeg; ++a) prog.add_objective_psd_entry("proj", a, a, p.lambda);
  }
  stamp(prog, l, kKindFull);

  if (opts.symmetryY) add_symmetry_constraints(prog);
  if (opts.symmetryX) add_x_symmetry_constraints(prog);
  if (opts.triangle) add_triangle_inequalities(prog, opts.tripletBudget);
  if (opts.rlt) add_rlt_inequalities(prog, opts.rlt->a, opts.rlt->b);
  return prog;
}

ConicProgram build_compact_lifted(const LowRankQuadraticProblem& p) {
  p.validate();
  const Layout l = Layout::of(p);
  if (p.k > l.nSeg)
    throw std::invalid_argument("build_compact_lifted: rank cap exceeds the projection dimension");
  const int nm = l.nm();

  ConicProgram prog;
  prog.add_psd_block("lift", 1 + nm);
  prog.add_psd_block("coupling", l.segLen + l.nSeg);

  {
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  // T region equals the block trace of Wxx
  for (int b = 0; b < l.segLen; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int i = 0; i < l.nSeg; ++i)
        prog.add_psd_term(row, "lift", 1 + i * l.segLen + a, 1 + i * l.segLen + b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // X region ties to the border copy
  for (int s = 0; s < l.nSeg; ++s) {
    for (int a = 0; a < l.segLen; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, l.segLen + s, 1.0);
      prog.add_psd_term(row, "lift", 0, 1 + s * l.segLen + a, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  add_hull_rows(prog, "coupling", l.segLen, l.nSeg, p.k, true);
  add_quadratic_constraint_rows(prog, p, l);
  add_lift_objective(prog, p, l);
  if (p.lambda != 0.0) {
    for (int a = 0; a < l.nSeg; ++a)
      prog.add_objective_psd_entry("coupling", l.segLen + a, l.segLen + a, p.lambda);
  }
  stamp(prog, l, kKindCompact);
  return prog;
}

ConicProgram build_mprt(const LowRankQuadraticProblem& p) {
  p.validate();
  if (!p.split.has_value())
    throw std::invalid_argument("build_mprt: problem has no Frobenius split");
  if (p.split->gamma <= 0.0) throw std::invalid_argument("build_mprt: gamma must be positive");
  if (!p.constraints.empty())
    throw std::invalid_argument("build_mprt: quadratic constraints are not separable here");
  const Layout l = Layout::of(p);
  if (p.k > l.nSeg)
    throw std::invalid_argument("build_mprt: rank cap exceeds the projection dimension");
  const FrobeniusSplit& split = *p.split;
  const int socLen = 2 + static_cast<int>(split.data.omega.size());

  ConicProgram prog;
  prog.add_psd_block("coupling", l.segLen + l.nSeg);
  prog.add_free_block("epi", 1);
  prog.add_soc_block("soc", socLen);

  add_hull_rows(prog, "coupling", l.segLen, l.nSeg, p.k, true);
  // epigraph t >= sum_Omega (X_ij - A_ij)^2 as ||(t-1, 2v)|| <= t+1
  {
    ConicProgram::Row row;
    prog.add_term(row, "soc", 0, 1.0);
    prog.add_term(row, "epi", 0, -1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  {
    ConicProgram::Row row;
    prog.add_term(row, "soc", 1, 1.0);
    prog.add_term(row, "epi", 0, -1.0);
    prog.add_equality(std::move(row), -1.0);
  }
  int slot = 2;
  for (const auto& [i, j] : split.data.omega) {
    const int s = l.rowStacked ? i : j;
    const int a = l.rowStacked ? j : i;
    ConicProgram::Row row;
    prog.add_term(row, "soc", slot, 1.0);
    prog.add_psd_term(row, "coupling", a, l.segLen + s, -2.0);
    prog.add_equality(std::move(row), -2.0 * split.data.a(i, j));
    ++slot;
  }
  for (int a = 0; a < l.segLen; ++a)
    prog.add_objective_psd_entry("coupling", a, a, 1.0 / (2.0 * split.gamma));
  if (p.lambda != 0.0) {
    for (int a = 0; a < l.nSeg; ++a)
      prog.add_objective_psd_entry("coupling", l.segLen + a, l.segLen + a, p.lambda);
  }
  prog.add_objective_term("epi", 0, split.lossScale);
  prog.set_objective_offset(0.0);
  stamp(prog, l, kKindMprt);
  return prog;
}

void add_symmetry_constraints(ConicProgram& prog) {
  require_kind(prog, kKindFull, "add_symmetry_constraints");
  const Layout l = Layout::of(prog);
  const int nm = l.nm();
  const int y2 = l.nSeg * l.nSeg;
  auto ly = [&](int q) { return 1 + nm + q; };
  auto sigma = [&](int q) { return commutation_image(q, l.nSeg); };

  // Wyy = K Wyy K^T, one equality per nontrivial entry orbit
  for (int q = 0; q < y2; ++q) {
    for (int p = 0; p <= q; ++p) {
      int p2 = sigma(p), q2 = sigma(q);
      if (p2 > q2) std::swap(p2, q2);
      if (p2 == p && q2 == q) continue;
      if (std::pair(p2, q2) < std::pair(p, q)) continue;  // orbit handled once
      ConicProgram::Row row;
      prog.add_psd_term(row, "lift", ly(p), ly(q), 1.0);
      prog.add_psd_term(row, "lift", ly(p2), ly(q2), -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // Wxy = Wxy K^T: columns tied across the transposition
  for (int q = 0; q < y2; ++q) {
    const int q2 = sigma(q);
    if (q2 <= q) continue;
    for (int r = 0; r < nm; ++r) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "lift", 1 + r, ly(q), 1.0);
      prog.add_psd_term(row, "lift", 1 + r, ly(q2), -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
}

void add_x_symmetry_constraints(ConicProgram& prog) {
  require_kind(prog, kKindFull, "add_x_symmetry_constraints");
  const Layout l = Layout::of(prog);
  if (l.n != l.m)
    throw std::invalid_argument("add_x_symmetry_constraints: X must be square");
  const int nm = l.nm();
  const int y2 = l.nSeg * l.nSeg;
  auto ly = [&](int q) { return 1 + nm + q; };
  // x coordinates transpose with the same index map since n == m
  auto pi = [&](int r) { return commutation_image(r, l.n); };

  // border: X = X^T
  for (int r = 0; r < nm; ++r) {
    if (pi(r) <= r) continue;
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 1 + r, 1.0);
    prog.add_psd_term(row, "lift", 0, 1 + pi(r), -1.0);
    prog.add_equality(std::move(row), 0.0);
  }
  // Wxx = K Wxx K^T
  for (int q = 0; q < nm; ++q) {
    for (int p = 0; p <= q; ++p) {
      int p2 = pi(p), q2 = pi(q);
      if (p2 > q2) std::swap(p2, q2);
      if (p2 == p && q2 == q) continue;
      if (std::pair(p2, q2) < std::pair(p, q)) continue;
      ConicProgram::Row row;
      prog.add_psd_term(row, "lift", 1 + p, 1 + q, 1.0);
      prog.add_psd_term(row, "lift", 1 + p2, 1 + q2, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // Wxy = K Wxy: rows tied across the transposition
  for (int r = 0; r < nm; ++r) {
    const int r2 = pi(r);
    if (r2 <= r) continue;
    for (int q = 0; q < y2; ++q) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "lift", 1 + r, ly(q), 1.0);
      prog.add_psd_term(row, "lift", 1 + r2, ly(q), -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
}

void add_triangle_inequalities(ConicProgram& prog, int tripletBudget) {
  require_kind(prog, kKindFull, "add_triangle_inequalities");
  const Layout l = Layout::of(prog);
  const int nm = l.nm();
  auto ly = [&](int q) { return 1 + nm + q; };
  // lifted diagonal product Y_aa * Y_bb
  auto pEntry = [&](ConicProgram::Row& row, int a, int b, double coeff) {
    prog.add_psd_term(row, "lift", ly(a * (l.nSeg + 1)), ly(b * (l.nSeg + 1)), coeff);
  };

  int used = 0;
  for (int i = 0; i < l.nSeg && used < tripletBudget; ++i) {
    for (int j = i + 1; j < l.nSeg && used < tripletBudget; ++j) {
      for (int t = j + 1; t < l.nSeg && used < tripletBudget; ++t) {
        // (1-Yii)(1-Yjj)(1-Ytt) >= 0 linearized
        ConicProgram::Row t1;
        prog.add_psd_term(t1, "proj", i, i, 1.0);
        prog.add_psd_term(t1, "proj", j, j, 1.0);
        prog.add_psd_term(t1, "proj", t, t, 1.0);
        pEntry(t1, i, j, -1.0);
        pEntry(t1, i, t, -1.0);
        pEntry(t1, j, t, -1.0);
        prog.add_inequality(std::move(t1), 1.0);
        // Yaa(1-Ybb)(1-Ycc) >= 0 linearized, three rotations
        const int tri[3][3] = {{i, j, t}, {j, i, t}, {t, i, j}};
        for (const auto& r : tri) {
          ConicProgram::Row t2;
          prog.add_psd_term(t2, "proj", r[0], r[0], -1.0);
          pEntry(t2, r[0], r[1], 1.0);
          pEntry(t2, r[0], r[2], 1.0);
          pEntry(t2, r[1], r[2], -1.0);
          prog.add_inequality(std::move(t2), 0.0);
        }
        ++used;
      }
    }
  }
}

void add_rlt_inequalities(ConicProgram& prog, const DenseMatrix& a, const Vector& b) {
  if (!prog.has_block("lift"))
    throw std::invalid_argument("add_rlt_inequalities: program lacks the lifted variables");
  const Layout l = Layout::of(prog);
  const int nm = l.nm();
  if (a.cols() != nm || a.rows() != b.size())
    throw std::invalid_argument("add_rlt_inequalities: system shape mismatch");

  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index s = r; s < a.rows(); ++s) {
      ConicProgram::Row row;
      for (int q = 0; q < nm; ++q) {
        const double coeff = b(r) * a(s, q) + b(s) * a(r, q);
        if (coeff != 0.0) prog.add_psd_term(row, "lift", 0, 1 + q, coeff);
      }
      for (int q = 0; q < nm; ++q) {
        for (int p = 0; p <= q; ++p) {
          const double coeff =
              (p == q) ? a(r, p) * a(s, p) : a(r, p) * a(s, q) + a(r, q) * a(s, p);
          if (coeff != 0.0) prog.add_psd_term(row, "lift", 1 + p, 1 + q, -coeff);
        }
      }
      prog.add_inequality(std::move(row), b(r) * b(s));
    }
  }
}

namespace {

DenseMatrix read_x(const ConicProgram& prog, const Layout& l, const Vector& x,
                   const std::string& label, bool fromBorder) {
  DenseMatrix out(l.n, l.m);
  for (int i = 0; i < l.n; ++i) {
    for (int j = 0; j < l.m; ++j) {
      if (fromBorder) {
        out(i, j) = prog.psd_entry(label, 0, 1 + l.xcoord(i, j), x);
      } else {
        const int s = l.rowStacked ? i : j;
        const int a = l.rowStacked ? j : i;
        out(i, j) = prog.psd_entry(label, a, l.segLen + s, x);
      }
    }
  }
  return out;
}

SymMatrix read_submatrix(const ConicProgram& prog, const std::string& label, int off, int dim,
                         const Vector& x) {
  SymMatrix out(dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i <= j; ++i) out.set(i, j, prog.psd_entry(label, off + i, off + j, x));
  return out;
}

}  // namespace

RelaxationSolution decode_full_lifted(const ConicProgram& prog, const ConicSolution& sol) {
  require_kind(prog, kKindFull, "decode_full_lifted");
  const Layout l = Layout::of(prog);
  const int nm = l.nm();
  const int y2 = l.nSeg * l.nSeg;
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x = read_x(prog, l, sol.x, "lift", true);
  out.y = prog.block_matrix("proj", sol.x);
  out.wxx = read_submatrix(prog, "lift", 1, nm, sol.x);
  DenseMatrix wxy(nm, y2);
  for (int r = 0; r < nm; ++r)
    for (int q = 0; q < y2; ++q) wxy(r, q) = prog.psd_entry("lift", 1 + r, 1 + nm + q, sol.x);
  out.wxy = wxy;
  out.wyy = read_submatrix(prog, "lift", 1 + nm, y2, sol.x);
  out.solverInfo = make_info(sol);
  return out;
}

RelaxationSolution decode_compact(const ConicProgram& prog, const ConicSolution& sol) {
  require_kind(prog, kKindCompact, "decode_compact");
  const Layout l = Layout::of(prog);
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x = read_x(prog, l, sol.x, "lift", true);
  out.y = read_submatrix(prog, "coupling", l.segLen, l.nSeg, sol.x);
  out.wxx = read_submatrix(prog, "lift", 1, l.nm(), sol.x);
  out.solverInfo = make_info(sol);
  return out;
}

RelaxationSolution decode_mprt(const ConicProgram& prog, const ConicSolution& sol) {
  require_kind(prog, kKindMprt, "decode_mprt");
  const Layout l = Layout::of(prog);
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x = read_x(prog, l, sol.x, "coupling", false);
  out.y = read_submatrix(prog, "coupling", l.segLen, l.nSeg, sol.x);
  out.theta = read_submatrix(prog, "coupling", 0, l.segLen, sol.x);
  out.solverInfo = make_info(sol);
  return out;
}

ReconstructedLift reconstruct_eliminated(const DenseMatrix& x, const SymMatrix& y,
                                         const SymMatrix& wxx, double feasTol) {
  const int n = static_cast<int>(x.rows());
  const int m = static_cast<int>(x.cols());
  const int nm = n * m;
  if (wxx.dim() != nm || y.dim() != n)
    throw std::invalid_argument("reconstruct_eliminated: dimension mismatch");

  const DenseMatrix wxxFull = wxx.full();
  const Vector xv = vec_t(x);
  const DenseMatrix t = block_diag_sum(BlockView(wxxFull, m, m));

  // feasibility of the compact constraints, scaled
  const double scale = 1.0 + std::max({wxxFull.norm(), x.norm(), 1.0});
  if (min_eigenvalue(wxxFull - xv * xv.transpose()) < -feasTol * scale) {
    throw std::invalid_argument("reconstruct_eliminated: Wxx violates the moment constraint");
  }
  DenseMatrix coupling(m + n, m + n);
  coupling.topLeftCorner(m, m) = t;
  coupling.topRightCorner(m, n) = x.transpose();
  coupling.bottomLeftCorner(n, m) = x;
  coupling.bottomRightCorner(n, n) = y.full();
  if (min_eigenvalue(coupling) < -feasTol * scale) {
    throw std::invalid_argument("reconstruct_eliminated: coupling block is not PSD");
  }

  const DenseMatrix u = pseudoinverse(t) * x.transpose();  // m x n
  ReconstructedLift out;
  out.y = SymMatrix::from_dense(x * u, 1e-6);
  DenseMatrix wxy(nm, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      wxy.block(static_cast<Eigen::Index>(i) * m, static_cast<Eigen::Index>(j) * n, m, n) =
          wxxFull.block(static_cast<Eigen::Index>(i) * m, static_cast<Eigen::Index>(j) * m, m, m) * u;
    }
  }
  out.wxy = wxy;
  const DenseMatrix iu = kron_identity_left(n, u);
  out.wyy = SymMatrix::from_dense(iu.transpose() * wxxFull * iu, 1e-6);
  return out;
}

LiftedPoint exact_lifted_point(const DenseMatrix& x, const SymMatrix& yProjection) {
  LiftedPoint pt;
  pt.x = x;
  pt.y = yProjection;
  const Vector xv = vec_t(x);
  const Vector yv = vec(yProjection.full());
  pt.wxx = SymMatrix::from_dense(xv * xv.transpose(), 1e-9);
  pt.wxy = xv * yv.transpose();
  pt.wyy = SymMatrix::from_dense(yv * yv.transpose(), 1e-9);
  return pt;
}

FeasibilityReport check_full_lifted_feasibility(const ConicProgram& prog, const LiftedPoint& pt) {
  require_kind(prog, kKindFull, "check_full_lifted_feasibility");
  const Layout l = Layout::of(prog);
  if (!l.rowStacked)
    throw std::invalid_argument("check_full_lifted_feasibility: row-stacked programs only");
  const int nm = l.nm();
  const int y2 = l.nSeg * l.nSeg;
  const int side = 1 + nm + y2;

  DenseMatrix lift(side, side);
  const Vector xv = vec_t(pt.x);
  const Vector yv = vec(pt.y.full());
  lift(0, 0) = 1.0;
  lift.block(0, 1, 1, nm) = xv.transpose();
  lift.block(1, 0, nm, 1) = xv;
  lift.block(0, 1 + nm, 1, y2) = yv.transpose();
  lift.block(1 + nm, 0, y2, 1) = yv;
  lift.block(1, 1, nm, nm) = pt.wxx.full();
  lift.block(1, 1 + nm, nm, y2) = pt.wxy;
  lift.block(1 + nm, 1, y2, nm) = pt.wxy.transpose();
  lift.block(1 + nm, 1 + nm, y2, y2) = pt.wyy.full();

  Vector point = Vector::Zero(prog.num_vars());
  const auto fill = [&](const std::string& label, const SymMatrix& mat) {
    const ConeBlock& blk = prog.block(label);
    point.segment(blk.offset, blk.scalarSize) = svec(mat);
  };
  fill("lift", SymMatrix::from_dense(lift, 1e-7));
  fill("proj", pt.y);
  SymMatrix z(l.nSeg);
  for (int j = 0; j < l.nSeg; ++j)
    for (int i = 0; i <= j; ++i) z.set(i, j, (i == j ? 1.0 : 0.0) - pt.y(i, j));
  fill("slackI", z);

  FeasibilityReport rep;
  rep.minInequalitySlack = std::numeric_limits<double>::infinity();
  for (const auto& row : prog.stored_rows()) {
    const double v = prog.row_value(row, point);
    if (row.slackScalarIndex >= 0) {
      rep.minInequalitySlack = std::min(rep.minInequalitySlack, row.rhs - v);
    } else {
      rep.maxEqualityViolation = std::max(rep.maxEqualityViolation, std::abs(v - row.rhs));
    }
  }
  if (prog.num_inequalities() == 0) rep.minInequalitySlack = 0.0;
  rep.minBlockEigenvalue =
      std::min({min_eigenvalue(lift), min_eigenvalue(pt.y.full()), min_eigenvalue(z.full())});
  return rep;
}

}  // namespace lrsdp
