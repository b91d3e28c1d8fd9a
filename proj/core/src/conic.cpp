#include "lrsdp/conic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrsdp {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

Vector svec(const SymMatrix& m) {
  const int d = m.dim();
  Vector v(svec_len(d));
  int slot = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      v(slot++) = (i == j) ? m(i, j) : kSqrt2 * m(i, j);
    }
  }
  return v;
}

SymMatrix smat(const Vector& v) {
  const double root = (std::sqrt(8.0 * static_cast<double>(v.size()) + 1.0) - 1.0) / 2.0;
  const int d = static_cast<int>(std::lround(root));
  if (svec_len(d) != v.size()) throw std::invalid_argument("smat: length is not triangular");
  SymMatrix m(d);
  int slot = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      m.set(i, j, (i == j) ? v(slot) : v(slot) / kSqrt2);
      ++slot;
    }
  }
  return m;
}

int ConicProgram::add_block(ConeKind kind, const std::string& label, int size) {
  require_not_finalized();
  if (size < 1) throw std::invalid_argument("cone block must have positive size");
  if (labelToBlock_.count(label)) throw std::invalid_argument("duplicate block label: " + label);
  ConeBlock blk;
  blk.kind = kind;
  blk.size = size;
  blk.offset = scalarCount_;
  blk.scalarSize = (kind == ConeKind::Psd) ? svec_len(size) : size;
  blk.label = label;
  scalarCount_ += blk.scalarSize;
  labelToBlock_[label] = static_cast<int>(blocks_.size());
  blocks_.push_back(blk);
  return static_cast<int>(blocks_.size()) - 1;
}

int ConicProgram::add_free_block(const std::string& label, int len) {
  return add_block(ConeKind::Free, label, len);
}
int ConicProgram::add_nonneg_block(const std::string& label, int len) {
  return add_block(ConeKind::Nonneg, label, len);
}
int ConicProgram::add_soc_block(const std::string& label, int len) {
  if (len < 2) throw std::invalid_argument("second-order cone needs length >= 2");
  return add_block(ConeKind::SecondOrder, label, len);
}
int ConicProgram::add_psd_block(const std::string& label, int side) {
  return add_block(ConeKind::Psd, label, side);
}

const ConeBlock& ConicProgram::block(const std::string& label) const {
  auto it = labelToBlock_.find(label);
  if (it == labelToBlock_.end()) throw std::invalid_argument("unknown block label: " + label);
  return blocks_[it->second];
}

bool ConicProgram::has_block(const std::string& label) const {
  return labelToBlock_.count(label) > 0;
}

int ConicProgram::scalar_index(const std::string& label, int i) const {
  const ConeBlock& blk = block(label);
  if (blk.kind == ConeKind::Psd) throw std::invalid_argument("scalar_index: PSD block " + label);
  if (i < 0 || i >= blk.size) throw std::out_of_range("scalar_index: coordinate out of range");
  return blk.offset + i;
}

int ConicProgram::svec_index(const std::string& label, int i, int j) const {
  const ConeBlock& blk = block(label);
  if (blk.kind != ConeKind::Psd) throw std::invalid_argument("svec_index: not a PSD block");
  if (i < 0 || j < 0 || i >= blk.size || j >= blk.size)
    throw std::out_of_range("svec_index: entry out of range");
  return blk.offset + static_cast<int>(SymMatrix::tri_slot(i, j));
}

void ConicProgram::add_term(Row& row, const std::string& label, int i, double coeff) const {
  row.push_back({scalar_index(label, i), coeff});
}

void ConicProgram::add_psd_term(Row& row, const std::string& label, int i, int j,
                                double coeff) const {
  row.push_back({svec_index(label, i, j), coeff});
}

void ConicProgram::add_submatrix_term(Row& row, const std::string& label, int r0,
                                      const SymMatrix& c) const {
  const int d = c.dim();
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v = c(i, j);
      if (v == 0.0) continue;
      // <C,X> counts both mirror entries of an off-diagonal pair
      add_psd_term(row, label, r0 + i, r0 + j, (i == j) ? v : 2.0 * v);
    }
  }
}

int ConicProgram::add_equality(Row row, double rhs) {
  require_not_finalized();
  storedRows_.push_back({std::move(row), rhs, -1});
  rhs_.push_back(rhs);
  return static_cast<int>(storedRows_.size()) - 1;
}

int ConicProgram::add_inequality(Row row, double rhs) {
  require_not_finalized();
  const int slackOrdinal = static_cast<int>(slackOfRow_.size());
  storedRows_.push_back({std::move(row), rhs, slackOrdinal});  // resolved at finalize
  rhs_.push_back(rhs);
  slackOfRow_.push_back(static_cast<int>(storedRows_.size()) - 1);
  return static_cast<int>(storedRows_.size()) - 1;
}

void ConicProgram::add_objective_term(const std::string& label, int i, double coeff) {
  require_not_finalized();
  objective_.push_back({scalar_index(label, i), coeff});
}

void ConicProgram::add_objective_matrix(const std::string& label, const SymMatrix& c) {
  require_not_finalized();
  const ConeBlock& blk = block(label);
  if (blk.kind != ConeKind::Psd || blk.size != c.dim())
    throw std::invalid_argument("objective matrix does not match block " + label);
  add_submatrix_term(objective_, label, 0, c);
}

void ConicProgram::add_objective_submatrix(const std::string& label, int r0, const SymMatrix& c) {
  require_not_finalized();
  add_submatrix_term(objective_, label, r0, c);
}

void ConicProgram::add_objective_psd_entry(const std::string& label, int i, int j, double coeff) {
  require_not_finalized();
  add_psd_term(objective_, label, i, j, coeff);
}

void ConicProgram::add_objective_raw(int scalarIndex, double coeff) {
  require_not_finalized();
  if (scalarIndex < 0 || scalarIndex >= scalarCount_)
    throw std::out_of_range("add_objective_raw: coordinate out of range");
  objective_.push_back({scalarIndex, coeff});
}

void ConicProgram::require_not_finalized() const {
  if (finalized_) throw std::logic_error("program is frozen; no further edits");
}

double ConicProgram::coordinate_scale(int scalarIndex) const {
  const Coordinate c = locate(scalarIndex);
  if (c.j >= 0 && c.i != c.j) return 1.0 / kSqrt2;
  return 1.0;
}

ConicProgram::Coordinate ConicProgram::locate(int scalarIndex) const {
  if (scalarIndex < 0 || scalarIndex >= scalarCount_)
    throw std::out_of_range("locate: coordinate out of range");
  int lo = 0, hi = static_cast<int>(blocks_.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (blocks_[mid].offset <= scalarIndex) lo = mid;
    else hi = mid - 1;
  }
  const ConeBlock& blk = blocks_[lo];
  const int rel = scalarIndex - blk.offset;
  if (blk.kind != ConeKind::Psd) return {lo, rel, -1};
  // invert the triangular slot: find column j with j(j+1)/2 <= rel
  int j = static_cast<int>((std::sqrt(8.0 * rel + 1.0) - 1.0) / 2.0);
  while (static_cast<size_t>(j + 1) * (j + 2) / 2 <= static_cast<size_t>(rel)) ++j;
  while (static_cast<size_t>(j) * (j + 1) / 2 > static_cast<size_t>(rel)) --j;
  const int i = rel - j * (j + 1) / 2;
  return {lo, i, j};
}

double ConicProgram::row_value(const StoredRow& row, const Vector& x) const {
  double v = 0.0;
  for (const Term& t : row.terms) v += t.coeff * coordinate_scale(t.index) * x(t.index);
  return v;
}

void ConicProgram::finalize() {
  if (finalized_) return;
  const int numSlacks = static_cast<int>(slackOfRow_.size());
  if (numSlacks > 0) {
    add_block(ConeKind::Nonneg, "_slack", numSlacks);
  }
  const int slackOffset = numSlacks > 0 ? block("_slack").offset : 0;
  const int n = scalarCount_;
  const int m = static_cast<int>(storedRows_.size());

  for (auto& sr : storedRows_) {
    if (sr.slackScalarIndex >= 0) sr.slackScalarIndex = slackOffset + sr.slackScalarIndex;
  }

  std::vector<Eigen::Triplet<double>> trips;
  b_.resize(m);
  for (int r = 0; r < m; ++r) {
    const StoredRow& sr = storedRows_[r];
    std::map<int, double> acc;
    for (const Term& t : sr.terms) acc[t.index] += t.coeff * coordinate_scale(t.index);
    if (sr.slackScalarIndex >= 0) acc[sr.slackScalarIndex] += 1.0;
    double norm2 = 0.0;
    for (const auto& [idx, v] : acc) norm2 += v * v;
    if (norm2 < 1e-28) {
      throw std::invalid_argument("conic program: zero equality row " + std::to_string(r));
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (const auto& [idx, v] : acc) {
      if (v != 0.0) trips.emplace_back(r, idx, v * scale);
    }
    b_(r) = rhs_[r] * scale;
  }
  a_.resize(m, n);
  a_.setFromTriplets(trips.begin(), trips.end());
  a_.makeCompressed();

  c_ = Vector::Zero(n);
  for (const Term& t : objective_) c_(t.index) += t.coeff * coordinate_scale(t.index);
  finalized_ = true;
}

int ConicProgram::num_vars() const { return scalarCount_; }

const Eigen::SparseMatrix<double>& ConicProgram::matrix() const {
  if (!finalized_) throw std::logic_error("program not finalized");
  return a_;
}
const Vector& ConicProgram::rhs_vector() const {
  if (!finalized_) throw std::logic_error("program not finalized");
  return b_;
}
const Vector& ConicProgram::cost_vector() const {
  if (!finalized_) throw std::logic_error("program not finalized");
  return c_;
}

Vector ConicProgram::block_vector(const std::string& label, const Vector& x) const {
  const ConeBlock& blk = block(label);
  return x.segment(blk.offset, blk.scalarSize);
}

SymMatrix ConicProgram::block_matrix(const std::string& label, const Vector& x) const {
  const ConeBlock& blk = block(label);
  if (blk.kind != ConeKind::Psd) throw std::invalid_argument("block_matrix: not a PSD block");
  return smat(x.segment(blk.offset, blk.scalarSize));
}

double ConicProgram::psd_entry(const std::string& label, int i, int j, const Vector& x) const {
  const int idx = svec_index(label, i, j);
  return (i == j) ? x(idx) : x(idx) / kSqrt2;
}

}  // namespace lrsdp
