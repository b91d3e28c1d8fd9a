#include "lrsdp/sdpa.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace lrsdp {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConicProgram lower_socs(const ConicProgram& program) {
  ConicProgram out;
  out.meta = program.meta;

  // old scalar coordinate -> new scalar coordinate (functional coefficients
  // transfer unchanged: alpha*u_i == alpha*P_{0,i} as matrix functionals)
  std::vector<int> remap(program.num_vars(), -1);
  std::vector<std::string> loweredLabels;

  for (const ConeBlock& blk : program.blocks()) {
    if (blk.label == "_slack") continue;  // regenerated by add_inequality below
    switch (blk.kind) {
      case ConeKind::Free:
        out.add_free_block(blk.label, blk.size);
        for (int i = 0; i < blk.size; ++i) remap[blk.offset + i] = out.scalar_index(blk.label, i);
        break;
      case ConeKind::Nonneg:
        out.add_nonneg_block(blk.label, blk.size);
        for (int i = 0; i < blk.size; ++i) remap[blk.offset + i] = out.scalar_index(blk.label, i);
        break;
      case ConeKind::Psd:
        out.add_psd_block(blk.label, blk.size);
        for (int j = 0; j < blk.size; ++j)
          for (int i = 0; i <= j; ++i)
            remap[blk.offset + static_cast<int>(SymMatrix::tri_slot(i, j))] =
                out.svec_index(blk.label, i, j);
        break;
      case ConeKind::SecondOrder:
        out.add_psd_block(blk.label, blk.size);
        remap[blk.offset] = out.svec_index(blk.label, 0, 0);
        for (int i = 1; i < blk.size; ++i)
          remap[blk.offset + i] = out.svec_index(blk.label, 0, i);
        loweredLabels.push_back(blk.label);
        break;
    }
  }

  auto remapRow = [&](const ConicProgram::Row& row) {
    ConicProgram::Row r;
    r.reserve(row.size());
    for (const auto& t : row) {
      if (remap[t.index] < 0)
        throw std::logic_error("lower_socs: row references a slack coordinate");
      r.push_back({remap[t.index], t.coeff});
    }
    return r;
  };

  for (const auto& sr : program.stored_rows()) {
    if (sr.slackScalarIndex >= 0) {
      out.add_inequality(remapRow(sr.terms), sr.rhs);
    } else {
      out.add_equality(remapRow(sr.terms), sr.rhs);
    }
  }
  for (const auto& t : program.objective_terms()) {
    out.add_objective_raw(remap[t.index], t.coeff);
  }
  out.set_objective_offset(program.objective_offset());

  // pin the arrow structure of every lowered block
  for (const std::string& label : loweredLabels) {
    const int d = out.block(label).size;
    for (int i = 1; i < d; ++i) {
      ConicProgram::Row row;
      out.add_psd_term(row, label, i, i, 1.0);
      out.add_psd_term(row, label, 0, 0, -1.0);
      out.add_equality(std::move(row), 0.0);
    }
    for (int i = 1; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        ConicProgram::Row row;
        out.add_psd_term(row, label, i, j, 1.0);
        out.add_equality(std::move(row), 0.0);
      }
    }
  }
  return out;
}

std::string export_sdpa(const ConicProgram& program) {
  if (!program.finalized())
    throw std::logic_error("export_sdpa: finalize the program first");
  for (const ConeBlock& blk : program.blocks()) {
    if (blk.kind == ConeKind::SecondOrder)
      throw std::invalid_argument(
          "export_sdpa: second-order blocks present; run lower_socs first");
  }

  // SDPA block table; free blocks split into +/- halves of a diagonal block
  struct SdpaBlock {
    int number;     // 1-based
    int structSize; // negative => diagonal
  };
  std::vector<SdpaBlock> table;
  std::vector<int> blockNoOfBlock(program.blocks().size());
  for (size_t bi = 0; bi < program.blocks().size(); ++bi) {
    const ConeBlock& blk = program.blocks()[bi];
    SdpaBlock sb;
    sb.number = static_cast<int>(table.size()) + 1;
    switch (blk.kind) {
      case ConeKind::Psd: sb.structSize = blk.size; break;
      case ConeKind::Nonneg: sb.structSize = -blk.size; break;
      case ConeKind::Free: sb.structSize = -2 * blk.size; break;
      case ConeKind::SecondOrder: sb.structSize = 0; break;  // unreachable
    }
    blockNoOfBlock[bi] = sb.number;
    table.push_back(sb);
  }

  using Key = std::tuple<int, int, int>;  // block, i, j (1-based, i <= j)
  auto emit = [&](std::map<Key, double>& entries, int scalarIndex, double functionalCoeff) {
    const auto c = program.locate(scalarIndex);
    const ConeBlock& blk = program.blocks()[c.blockIndex];
    const int bno = blockNoOfBlock[c.blockIndex];
    if (blk.kind == ConeKind::Psd) {
      const double v = (c.i == c.j) ? functionalCoeff : functionalCoeff / 2.0;
      entries[{bno, c.i + 1, c.j + 1}] += v;
    } else if (blk.kind == ConeKind::Nonneg) {
      entries[{bno, c.i + 1, c.i + 1}] += functionalCoeff;
    } else {  // Free: v = v+ - v-
      entries[{bno, c.i + 1, c.i + 1}] += functionalCoeff;
      entries[{bno, blk.size + c.i + 1, blk.size + c.i + 1}] -= functionalCoeff;
    }
  };

  std::ostringstream out;
  const auto& rows = program.stored_rows();
  out << rows.size() << '\n';
  out << table.size() << '\n';
  for (size_t i = 0; i < table.size(); ++i) {
    if (i) out << ' ';
    out << table[i].structSize;
  }
  out << '\n';
  for (size_t r = 0; r < rows.size(); ++r) {
    if (r) out << ' ';
    out << fmt17(rows[r].rhs);
  }
  out << '\n';

  auto writeEntries = [&](int k, const std::map<Key, double>& entries) {
    for (const auto& [key, v] : entries) {
      if (v == 0.0) continue;
      out << k << ' ' << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key)
          << ' ' << fmt17(v) << '\n';
    }
  };

  // F0 = -objective so the file is SDPA's dual maximization
  std::map<Key, double> obj;
  for (const auto& t : program.objective_terms()) emit(obj, t.index, -t.coeff);
  writeEntries(0, obj);

  for (size_t r = 0; r < rows.size(); ++r) {
    std::map<Key, double> entries;
    for (const auto& t : rows[r].terms) emit(entries, t.index, t.coeff);
    if (rows[r].slackScalarIndex >= 0) emit(entries, rows[r].slackScalarIndex, 1.0);
    writeEntries(static_cast<int>(r) + 1, entries);
  }
  return out.str();
}

ConicProgram import_sdpa(const std::string& text) {
  std::istringstream in(text);
  int mdim = 0, nblock = 0;
  if (!(in >> mdim >> nblock)) throw std::invalid_argument("import_sdpa: malformed header");
  if (mdim < 0 || nblock < 1) throw std::invalid_argument("import_sdpa: bad dimensions");

  ConicProgram out;
  std::vector<std::string> labels(nblock);
  std::vector<bool> isPsd(nblock);
  for (int bi = 0; bi < nblock; ++bi) {
    int sz = 0;
    if (!(in >> sz) || sz == 0) throw std::invalid_argument("import_sdpa: bad block size");
    labels[bi] = "blk" + std::to_string(bi + 1);
    isPsd[bi] = sz > 0;
    if (sz > 0) out.add_psd_block(labels[bi], sz);
    else out.add_nonneg_block(labels[bi], -sz);
  }
  std::vector<double> rhs(mdim);
  for (int r = 0; r < mdim; ++r) {
    if (!(in >> rhs[r])) throw std::invalid_argument("import_sdpa: truncated rhs");
  }

  std::vector<ConicProgram::Row> rows(mdim);
  int k = 0, bno = 0, i = 0, j = 0;
  double v = 0.0;
  while (in >> k >> bno >> i >> j >> v) {
    if (k < 0 || k > mdim || bno < 1 || bno > nblock || i < 1 || j < i)
      throw std::invalid_argument("import_sdpa: bad entry line");
    const std::string& label = labels[bno - 1];
    if (k == 0) {
      // F0 entry -> objective (negated back)
      if (isPsd[bno - 1]) {
        out.add_objective_psd_entry(label, i - 1, j - 1, (i == j) ? -v : -2.0 * v);
      } else {
        if (i != j) throw std::invalid_argument("import_sdpa: off-diagonal in diagonal block");
        out.add_objective_term(label, i - 1, -v);
      }
      continue;
    }
    if (isPsd[bno - 1]) {
      out.add_psd_term(rows[k - 1], label, i - 1, j - 1, (i == j) ? v : 2.0 * v);
    } else {
      if (i != j) throw std::invalid_argument("import_sdpa: off-diagonal in diagonal block");
      out.add_term(rows[k - 1], label, i - 1, v);
    }
  }
  for (int r = 0; r < mdim; ++r) out.add_equality(std::move(rows[r]), rhs[r]);
  return out;
}

}  // namespace lrsdp
