#include "lrsdp/problem.hpp"

#include "lrsdp/linalg.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lrsdp {

void ObservedMatrix::validate() const {
  require_finite(a, "ObservedMatrix.a");
  for (const auto& [i, j] : omega) {
    if (i < 0 || j < 0 || i >= rows() || j >= cols()) {
      throw std::invalid_argument("ObservedMatrix: index pair out of range");
    }
  }
}

DenseMatrix masked(const ObservedMatrix& obs) {
  DenseMatrix p = DenseMatrix::Zero(obs.rows(), obs.cols());
  for (const auto& [i, j] : obs.omega) p(i, j) = obs.a(i, j);
  return p;
}

void LowRankQuadraticProblem::validate() const {
  const int nm = n * m;
  if (n < 1 || m < 1) throw std::invalid_argument("problem: dimensions must be positive");
  if (h.dim() != nm) throw std::invalid_argument("problem: H must be nm x nm");
  if (d.rows() != n || d.cols() != m) throw std::invalid_argument("problem: D must be n x m");
  for (const auto& c : constraints) {
    if (c.q.dim() != nm) throw std::invalid_argument("problem: Q_i must be nm x nm");
    if (c.e.rows() != n || c.e.cols() != m) throw std::invalid_argument("problem: E_i must be n x m");
  }
  if (lambda < 0.0) throw std::invalid_argument("problem: lambda must be nonnegative");
  if (k < 1 || k > n) throw std::invalid_argument("problem: k must satisfy 1 <= k <= n");
}

double evaluate_objective(const LowRankQuadraticProblem& p, const DenseMatrix& x, int rank) {
  if (x.rows() != p.n || x.cols() != p.m)
    throw std::invalid_argument("evaluate_objective: X has wrong shape");
  const Vector v = p.orientation == VecOrientation::RowStacked ? vec_t(x) : vec(x);
  const DenseMatrix hFull = p.h.full();
  return p.lambda * rank + v.dot(hFull * v) + (p.d.array() * x.array()).sum() + p.constant;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIterations: return "maxIterations";
    case SolveStatus::NumericalFailure: return "numericalFailure";
  }
  return "unknown";
}

std::string save_instance(const McInstance& inst) {
  const auto& obs = inst.obs;
  std::ostringstream out;
  out.precision(17);
  out << obs.rows() << ' ' << obs.cols() << ' ' << obs.omega.size() << ' '
      << inst.lambda << ' ' << inst.k << ' ' << inst.gamma << '\n';
  for (int i = 0; i < obs.rows(); ++i) {
    for (int j = 0; j < obs.cols(); ++j) {
      if (j) out << ' ';
      out << obs.a(i, j);
    }
    out << '\n';
  }
  for (const auto& [i, j] : obs.omega) out << (i + 1) << ' ' << (j + 1) << '\n';
  return out.str();
}

McInstance load_instance(const std::string& text) {
  std::istringstream in(text);
  McInstance inst;
  int n = 0, m = 0;
  size_t cardinality = 0;
  if (!(in >> n >> m >> cardinality >> inst.lambda >> inst.k >> inst.gamma)) {
    throw std::invalid_argument("instance: malformed header");
  }
  if (n < 1 || m < 1) throw std::invalid_argument("instance: bad dimensions");
  inst.obs.a.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (!(in >> inst.obs.a(i, j))) throw std::invalid_argument("instance: truncated matrix body");
  for (size_t r = 0; r < cardinality; ++r) {
    int i = 0, j = 0;
    if (!(in >> i >> j)) throw std::invalid_argument("instance: truncated observation list");
    if (!inst.obs.omega.insert({i - 1, j - 1}).second)
      throw std::invalid_argument("instance: duplicate observation pair");
  }
  inst.obs.validate();
  if (inst.gamma < 0.0) throw std::invalid_argument("instance: gamma must be >= 0");
  return inst;
}

McInstance load_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return load_instance(buf.str());
}

void save_instance_file(const McInstance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write instance file: " + path);
  f << save_instance(inst);
}

}  // namespace lrsdp
