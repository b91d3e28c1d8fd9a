#include "lrsdp/problem_library.hpp"

#include "lrsdp/linalg.hpp"
#include "lrsdp/rng.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lrsdp {

namespace {

constexpr int kKindMcReduced = 3;
constexpr int kKindMcGrouped = 4;
constexpr int kKindBpFull = 5;
constexpr int kKindBpReduced = 6;
constexpr int kKindRrrLifted = 7;
constexpr int kKindRrrCompact = 8;

void stamp(ConicProgram& prog, int n, int m, bool rowStacked, int kind) {
  prog.meta["n"] = n;
  prog.meta["m"] = m;
  prog.meta["orient"] = rowStacked ? 1 : 0;
  prog.meta["kind"] = kind;
}

std::string row_label(int i) { return "row" + std::to_string(i); }
std::string grp_label(int g) { return "grp" + std::to_string(g); }

// coupling block [[T(m), X^T],[X, Y(n)]] with I - Y >= 0 and optional trace cap
void add_coupling_hull(ConicProgram& prog, int m, int n, double cap, bool withCap) {
  prog.add_psd_block("coupling", m + n);
  prog.add_psd_block("slackI", n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", m + a, m + b, 1.0);
      prog.add_psd_term(row, "slackI", a, b, 1.0);
      prog.add_equality(std::move(row), a == b ? 1.0 : 0.0);
    }
  }
  if (withCap) {
    ConicProgram::Row row;
    for (int a = 0; a < n; ++a) prog.add_psd_term(row, "coupling", m + a, m + a, 1.0);
    prog.add_inequality(std::move(row), cap);
  }
}

}  // namespace

LowRankQuadraticProblem encode_matrix_completion(const ObservedMatrix& obs, double lambda, int k,
                                                 double gamma, double lossScale) {
  obs.validate();
  if (lossScale != 1.0 && lossScale != 0.5)
    throw std::invalid_argument("encode_matrix_completion: lossScale must be 1 or 1/2");
  const int n = obs.rows(), m = obs.cols();
  LowRankQuadraticProblem p;
  p.n = n;
  p.m = m;
  p.lambda = lambda;
  p.k = k;
  p.orientation = VecOrientation::RowStacked;
  p.h = SymMatrix(n * m);
  const double ridge = gamma > 0.0 ? 1.0 / (2.0 * gamma) : 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double h = (obs.observed(i, j) ? lossScale : 0.0) + ridge;
      if (h != 0.0) p.h.set(i * m + j, i * m + j, h);
    }
  }
  const DenseMatrix pa = masked(obs);
  p.d = -2.0 * lossScale * pa;
  p.constant = lossScale * pa.squaredNorm();
  if (gamma > 0.0) p.split = FrobeniusSplit{gamma, obs, lossScale};
  p.validate();
  return p;
}

ConicProgram build_mc_reduced(const ObservedMatrix& obs, double lambda, int k, double gamma,
                              double lossScale) {
  obs.validate();
  const int n = obs.rows(), m = obs.cols();
  if (k < 1 || k > n) throw std::invalid_argument("build_mc_reduced: bad rank cap");
  const double ridge = gamma > 0.0 ? 1.0 / (2.0 * gamma) : 0.0;

  ConicProgram prog;
  for (int i = 0; i < n; ++i) prog.add_psd_block(row_label(i), 1 + m);
  add_coupling_hull(prog, m, n, k, true);

  for (int i = 0; i < n; ++i) {
    ConicProgram::Row row;
    prog.add_psd_term(row, row_label(i), 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  // X ties between arrow borders and the coupling block
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", j, m + i, 1.0);
      prog.add_psd_term(row, row_label(i), 0, 1 + j, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // T = sum_i S^i
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int i = 0; i < n; ++i) prog.add_psd_term(row, row_label(i), 1 + a, 1 + b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // objective
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double h = (obs.observed(i, j) ? lossScale : 0.0) + ridge;
      if (h != 0.0) prog.add_objective_psd_entry(row_label(i), 1 + j, 1 + j, h);
      if (obs.observed(i, j) && obs.a(i, j) != 0.0) {
        prog.add_objective_psd_entry(row_label(i), 0, 1 + j, -2.0 * lossScale * obs.a(i, j));
      }
    }
    if (lambda != 0.0) prog.add_objective_psd_entry("coupling", m + i, m + i, lambda);
  }
  prog.set_objective_offset(lossScale * masked(obs).squaredNorm());
  stamp(prog, n, m, true, kKindMcReduced);
  prog.meta["rows"] = n;
  return prog;
}

std::vector<MaskGroup> group_masks(const ObservedMatrix& obs) {
  const int n = obs.rows();
  std::vector<std::vector<int>> masks(n);
  for (const auto& [i, j] : obs.omega) masks[i].push_back(j);
  for (auto& mask : masks) std::sort(mask.begin(), mask.end());

  std::vector<MaskGroup> groups;
  std::map<std::vector<int>, int> seen;
  for (int i = 0; i < n; ++i) {
    auto it = seen.find(masks[i]);
    if (it == seen.end()) {
      seen.emplace(masks[i], static_cast<int>(groups.size()));
      groups.push_back({masks[i], {i}});
    } else {
      groups[it->second].rows.push_back(i);
    }
  }
  return groups;
}

ConicProgram build_mc_grouped(const ObservedMatrix& obs, double lambda, int k, double gamma,
                              double lossScale) {
  obs.validate();
  const int n = obs.rows(), m = obs.cols();
  if (k < 1 || k > n) throw std::invalid_argument("build_mc_grouped: bad rank cap");
  const double ridge = gamma > 0.0 ? 1.0 / (2.0 * gamma) : 0.0;
  const auto groups = group_masks(obs);
  const int g = static_cast<int>(groups.size());

  ConicProgram prog;
  for (int gi = 0; gi < g; ++gi) {
    prog.add_psd_block(grp_label(gi), static_cast<int>(groups[gi].rows.size()) + m);
  }
  add_coupling_hull(prog, m, n, k, true);

  for (int gi = 0; gi < g; ++gi) {
    const auto& grp = groups[gi];
    const int q = static_cast<int>(grp.rows.size());
    // identity corner
    for (int r = 0; r < q; ++r) {
      for (int r2 = r; r2 < q; ++r2) {
        ConicProgram::Row row;
        prog.add_psd_term(row, grp_label(gi), r, r2, 1.0);
        prog.add_equality(std::move(row), r == r2 ? 1.0 : 0.0);
      }
    }
    // stacked rows of X tie to the coupling block
    for (int r = 0; r < q; ++r) {
      for (int j = 0; j < m; ++j) {
        ConicProgram::Row row;
        prog.add_psd_term(row, grp_label(gi), r, q + j, 1.0);
        prog.add_psd_term(row, "coupling", j, m + grp.rows[r], -1.0);
        prog.add_equality(std::move(row), 0.0);
      }
    }
  }
  // T = sum_g S^g
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int gi = 0; gi < g; ++gi) {
        const int q = static_cast<int>(groups[gi].rows.size());
        prog.add_psd_term(row, grp_label(gi), q + a, q + b, -1.0);
      }
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // objective: <S^g, H^g> summed, linear part through the coupling block
  for (int gi = 0; gi < g; ++gi) {
    const auto& grp = groups[gi];
    const int q = static_cast<int>(grp.rows.size());
    std::vector<bool> inMask(m, false);
    for (int j : grp.maskColumns) inMask[j] = true;
    for (int j = 0; j < m; ++j) {
      const double h = (inMask[j] ? lossScale : 0.0) + ridge;
      if (h != 0.0) prog.add_objective_psd_entry(grp_label(gi), q + j, q + j, h);
    }
  }
  for (const auto& [i, j] : obs.omega) {
    if (obs.a(i, j) != 0.0)
      prog.add_objective_psd_entry("coupling", j, m + i, -2.0 * lossScale * obs.a(i, j));
  }
  if (lambda != 0.0) {
    for (int i = 0; i < n; ++i) prog.add_objective_psd_entry("coupling", m + i, m + i, lambda);
  }
  prog.set_objective_offset(lossScale * masked(obs).squaredNorm());
  stamp(prog, n, m, true, kKindMcGrouped);
  prog.meta["groups"] = g;
  return prog;
}

ObservedMatrix coarsen_masks(const ObservedMatrix& obs,
                             const std::vector<std::pair<int, int>>& rowPairs) {
  ObservedMatrix out = obs;
  for (const auto& [r1, r2] : rowPairs) {
    if (r1 == r2 || r1 < 0 || r2 < 0 || r1 >= obs.rows() || r2 >= obs.rows())
      throw std::invalid_argument("coarsen_masks: invalid row pair");
    std::set<int> cols1, cols2;
    for (const auto& [i, j] : out.omega) {
      if (i == r1) cols1.insert(j);
      if (i == r2) cols2.insert(j);
    }
    for (int j : cols1) {
      if (!cols2.count(j)) out.omega.erase({r1, j});
    }
    for (int j : cols2) {
      if (!cols1.count(j)) out.omega.erase({r2, j});
    }
  }
  return out;
}

RelaxationSolution decode_mc_reduced(const ConicProgram& prog, const ConicSolution& sol) {
  const int kind = prog.meta.at("kind");
  if (kind != kKindMcReduced && kind != kKindMcGrouped && kind != kKindBpReduced)
    throw std::invalid_argument("decode_mc_reduced: unexpected program kind");
  const int n = prog.meta.at("n"), m = prog.meta.at("m");
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out.x(i, j) = prog.psd_entry("coupling", j, m + i, sol.x);
  SymMatrix y(n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a <= b; ++a) y.set(a, b, prog.psd_entry("coupling", m + a, m + b, sol.x));
  out.y = y;
  std::vector<SymMatrix> sblocks;
  if (kind == kKindMcGrouped) {
    const int g = prog.meta.at("groups");
    for (int gi = 0; gi < g; ++gi) {
      const int side = prog.block(grp_label(gi)).size;
      const int q = side - m;
      SymMatrix s(m);
      for (int b = 0; b < m; ++b)
        for (int a = 0; a <= b; ++a)
          s.set(a, b, prog.psd_entry(grp_label(gi), q + a, q + b, sol.x));
      sblocks.push_back(std::move(s));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      SymMatrix s(m);
      for (int b = 0; b < m; ++b)
        for (int a = 0; a <= b; ++a) s.set(a, b, prog.psd_entry(row_label(i), 1 + a, 1 + b, sol.x));
      sblocks.push_back(std::move(s));
    }
  }
  out.sblocks = std::move(sblocks);
  out.solverInfo.status = sol.status;
  out.solverInfo.primalResidual = sol.primalResidual;
  out.solverInfo.dualResidual = sol.dualResidual;
  out.solverInfo.gapResidual = sol.gapResidual;
  out.solverInfo.iterations = sol.iterations;
  out.solverInfo.wallTimeSeconds = sol.wallTimeSeconds;
  return out;
}

// --- reduced-rank regression ----------------------------------------------

void RRRInstance::validate() const {
  require_finite(a, "RRR predictors");
  require_finite(b, "RRR responses");
  if (a.rows() != b.rows()) throw std::invalid_argument("RRR: row counts of A and B differ");
  if (mu <= 0.0) throw std::invalid_argument("RRR: mu must be positive");
}

ConicProgram build_rrr_lifted(const RRRInstance& inst) {
  inst.validate();
  const int p = inst.p(), m = inst.m();
  const int pm = p * m;

  ConicProgram prog;
  prog.add_psd_block("lift", 1 + pm);
  add_coupling_hull(prog, p, m, 0.0, false);  // Y in Conv(Y_m), no trace cap

  {
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  // column-stacked x: x_{s*p + a} = X_{a,s}
  for (int b = 0; b < p; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int s = 0; s < m; ++s)
        prog.add_psd_term(row, "lift", 1 + s * p + a, 1 + s * p + b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  for (int s = 0; s < m; ++s) {
    for (int a = 0; a < p; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, p + s, 1.0);
      prog.add_psd_term(row, "lift", 0, 1 + s * p + a, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  const SymMatrix gram = SymMatrix::from_dense(inst.a.transpose() * inst.a, 1e-7);
  prog.add_objective_submatrix("coupling", 0, gram);
  const DenseMatrix atb = inst.a.transpose() * inst.b;  // p x m
  for (int a = 0; a < p; ++a)
    for (int s = 0; s < m; ++s)
      if (atb(a, s) != 0.0)
        prog.add_objective_psd_entry("lift", 0, 1 + s * p + a, -2.0 * atb(a, s));
  for (int s = 0; s < m; ++s) prog.add_objective_psd_entry("coupling", p + s, p + s, inst.mu);
  prog.set_objective_offset(inst.b.squaredNorm());
  stamp(prog, p, m, false, kKindRrrLifted);
  return prog;
}

ConicProgram build_rrr_compact(const RRRInstance& inst) {
  inst.validate();
  const int p = inst.p(), m = inst.m();

  ConicProgram prog;
  add_coupling_hull(prog, p, m, 0.0, false);
  const SymMatrix gram = SymMatrix::from_dense(inst.a.transpose() * inst.a, 1e-7);
  prog.add_objective_submatrix("coupling", 0, gram);
  const DenseMatrix atb = inst.a.transpose() * inst.b;
  for (int a = 0; a < p; ++a)
    for (int s = 0; s < m; ++s)
      if (atb(a, s) != 0.0)
        prog.add_objective_psd_entry("coupling", a, p + s, -2.0 * atb(a, s));
  for (int s = 0; s < m; ++s) prog.add_objective_psd_entry("coupling", p + s, p + s, inst.mu);
  prog.set_objective_offset(inst.b.squaredNorm());
  stamp(prog, p, m, false, kKindRrrCompact);
  return prog;
}

RelaxationSolution decode_rrr(const ConicProgram& prog, const ConicSolution& sol) {
  const int kind = prog.meta.at("kind");
  if (kind != kKindRrrLifted && kind != kKindRrrCompact)
    throw std::invalid_argument("decode_rrr: unexpected program kind");
  const int p = prog.meta.at("n"), m = prog.meta.at("m");
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x.resize(p, m);
  for (int a = 0; a < p; ++a)
    for (int s = 0; s < m; ++s) out.x(a, s) = prog.psd_entry("coupling", a, p + s, sol.x);
  SymMatrix y(m);
  for (int b = 0; b < m; ++b)
    for (int a = 0; a <= b; ++a) y.set(a, b, prog.psd_entry("coupling", p + a, p + b, sol.x));
  out.y = y;
  SymMatrix theta(p);
  for (int b = 0; b < p; ++b)
    for (int a = 0; a <= b; ++a) theta.set(a, b, prog.psd_entry("coupling", a, b, sol.x));
  out.theta = theta;
  if (kind == kKindRrrLifted) {
    const int pm = p * m;
    SymMatrix w(pm);
    for (int q = 0; q < pm; ++q)
      for (int r = 0; r <= q; ++r) w.set(r, q, prog.psd_entry("lift", 1 + r, 1 + q, sol.x));
    out.wxx = std::move(w);
  }
  out.solverInfo.status = sol.status;
  out.solverInfo.primalResidual = sol.primalResidual;
  out.solverInfo.dualResidual = sol.dualResidual;
  out.solverInfo.gapResidual = sol.gapResidual;
  out.solverInfo.iterations = sol.iterations;
  out.solverInfo.wallTimeSeconds = sol.wallTimeSeconds;
  return out;
}

std::string save_rrr_instance(const RRRInstance& inst) {
  std::ostringstream out;
  out.precision(17);
  out << inst.n() << ' ' << inst.p() << ' ' << inst.m() << ' ' << inst.mu << '\n';
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.p(); ++j) out << (j ? " " : "") << inst.a(i, j);
    out << '\n';
  }
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.m(); ++j) out << (j ? " " : "") << inst.b(i, j);
    out << '\n';
  }
  return out.str();
}

RRRInstance load_rrr_instance(const std::string& text) {
  std::istringstream in(text);
  int n = 0, p = 0, m = 0;
  RRRInstance inst;
  if (!(in >> n >> p >> m >> inst.mu)) throw std::invalid_argument("rrr instance: bad header");
  if (n < 1 || p < 1 || m < 1) throw std::invalid_argument("rrr instance: bad dimensions");
  inst.a.resize(n, p);
  inst.b.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j)
      if (!(in >> inst.a(i, j))) throw std::invalid_argument("rrr instance: truncated A");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!(in >> inst.b(i, j))) throw std::invalid_argument("rrr instance: truncated B");
  inst.validate();
  return inst;
}

// --- basis pursuit ----------------------------------------------------------

namespace {

using ObsPair = std::pair<std::pair<int, int>, std::pair<int, int>>;

std::vector<ObsPair> select_pairs(const ObservedMatrix& obs, const RltMode& mode,
                                  bool sameRowOnly) {
  std::vector<std::pair<int, int>> entries(obs.omega.begin(), obs.omega.end());
  std::vector<ObsPair> pairs;
  for (size_t u = 0; u < entries.size(); ++u) {
    for (size_t v = u; v < entries.size(); ++v) {
      if (sameRowOnly && entries[u].first != entries[v].first) continue;
      pairs.push_back({entries[u], entries[v]});
    }
  }
  if (mode.kind == RltMode::Subsample) {
    CounterRng rng(mode.seed);
    // seeded partial Fisher-Yates, keep the first sampleCount
    const size_t keep = std::min<size_t>(std::max(mode.sampleCount, 0), pairs.size());
    for (size_t i = 0; i < keep; ++i) {
      const size_t j = i + static_cast<size_t>(rng.next_below(pairs.size() - i));
      std::swap(pairs[i], pairs[j]);
    }
    pairs.resize(keep);
  }
  return pairs;
}

}  // namespace

ConicProgram build_bp_full(const ObservedMatrix& obs, const RltMode& mode) {
  obs.validate();
  const int n = obs.rows(), m = obs.cols();
  const int nm = n * m;

  ConicProgram prog;
  prog.add_psd_block("lift", 1 + nm);
  add_coupling_hull(prog, m, n, 0.0, false);  // Y in Conv(Y_n)

  {
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int i = 0; i < n; ++i)
        prog.add_psd_term(row, "lift", 1 + i * m + a, 1 + i * m + b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", j, m + i, 1.0);
      prog.add_psd_term(row, "lift", 0, 1 + i * m + j, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  // interpolate observed entries
  for (const auto& [i, j] : obs.omega) {
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 0, 1 + i * m + j, 1.0);
    prog.add_equality(std::move(row), obs.a(i, j));
  }
  // RLT products of the interpolation equalities
  for (const auto& [e1, e2] : select_pairs(obs, mode, mode.kind == RltMode::SameRowOnly)) {
    const auto [i, j] = e1;
    const auto [k2, l2] = e2;
    ConicProgram::Row row;
    prog.add_psd_term(row, "lift", 1 + i * m + j, 1 + k2 * m + l2, 1.0);
    prog.add_psd_term(row, "lift", 0, 1 + i * m + j, -obs.a(k2, l2));
    prog.add_psd_term(row, "lift", 0, 1 + k2 * m + l2, -obs.a(i, j));
    prog.add_equality(std::move(row), -obs.a(i, j) * obs.a(k2, l2));
  }
  for (int i = 0; i < n; ++i) prog.add_objective_psd_entry("coupling", m + i, m + i, 1.0);
  prog.set_objective_offset(0.0);
  stamp(prog, n, m, true, kKindBpFull);
  return prog;
}

ConicProgram build_bp_reduced(const ObservedMatrix& obs, const RltMode& mode) {
  obs.validate();
  const int n = obs.rows(), m = obs.cols();

  ConicProgram prog;
  for (int i = 0; i < n; ++i) prog.add_psd_block(row_label(i), 1 + m);
  add_coupling_hull(prog, m, n, 0.0, false);

  for (int i = 0; i < n; ++i) {
    ConicProgram::Row row;
    prog.add_psd_term(row, row_label(i), 0, 0, 1.0);
    prog.add_equality(std::move(row), 1.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", j, m + i, 1.0);
      prog.add_psd_term(row, row_label(i), 0, 1 + j, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a <= b; ++a) {
      ConicProgram::Row row;
      prog.add_psd_term(row, "coupling", a, b, 1.0);
      for (int i = 0; i < n; ++i) prog.add_psd_term(row, row_label(i), 1 + a, 1 + b, -1.0);
      prog.add_equality(std::move(row), 0.0);
    }
  }
  for (const auto& [i, j] : obs.omega) {
    ConicProgram::Row row;
    prog.add_psd_term(row, row_label(i), 0, 1 + j, 1.0);
    prog.add_equality(std::move(row), obs.a(i, j));
  }
  // same-row RLT products on the S^i blocks
  for (const auto& [e1, e2] : select_pairs(obs, mode, true)) {
    const auto [i, j] = e1;
    const auto l2 = e2.second;
    ConicProgram::Row row;
    prog.add_psd_term(row, row_label(i), 1 + j, 1 + l2, 1.0);
    prog.add_psd_term(row, row_label(i), 0, 1 + j, -obs.a(i, l2));
    prog.add_psd_term(row, row_label(i), 0, 1 + l2, -obs.a(i, j));
    prog.add_equality(std::move(row), -obs.a(i, j) * obs.a(i, l2));
  }
  for (int i = 0; i < n; ++i) prog.add_objective_psd_entry("coupling", m + i, m + i, 1.0);
  prog.set_objective_offset(0.0);
  stamp(prog, n, m, true, kKindBpReduced);
  prog.meta["rows"] = n;
  return prog;
}

RelaxationSolution decode_bp(const ConicProgram& prog, const ConicSolution& sol) {
  const int kind = prog.meta.at("kind");
  if (kind == kKindBpReduced) return decode_mc_reduced(prog, sol);
  if (kind != kKindBpFull) throw std::invalid_argument("decode_bp: unexpected program kind");
  const int n = prog.meta.at("n"), m = prog.meta.at("m");
  RelaxationSolution out;
  out.lowerBound = sol.primalObjective + prog.objective_offset();
  out.x.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out.x(i, j) = prog.psd_entry("coupling", j, m + i, sol.x);
  SymMatrix y(n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a <= b; ++a) y.set(a, b, prog.psd_entry("coupling", m + a, m + b, sol.x));
  out.y = y;
  const int nm = n * m;
  SymMatrix w(nm);
  for (int q = 0; q < nm; ++q)
    for (int r = 0; r <= q; ++r) w.set(r, q, prog.psd_entry("lift", 1 + r, 1 + q, sol.x));
  out.wxx = std::move(w);
  out.solverInfo.status = sol.status;
  out.solverInfo.primalResidual = sol.primalResidual;
  out.solverInfo.dualResidual = sol.dualResidual;
  out.solverInfo.gapResidual = sol.gapResidual;
  out.solverInfo.iterations = sol.iterations;
  out.solverInfo.wallTimeSeconds = sol.wallTimeSeconds;
  return out;
}

}  // namespace lrsdp
