#pragma once

#include "lrsdp/conic.hpp"

#include <string>

namespace lrsdp {

/// Rewrite every second-order-cone block (t, u) as the equivalent arrow PSD
/// block [[t, u^T], [u, t*I]], remapping all coefficient references and
/// pinning the arrow structure with equalities. Other blocks are copied.
ConicProgram lower_socs(const ConicProgram& program);

/// SDPA sparse (".dat-s") text for the program. Free blocks are split into
/// nonnegative pairs (v = v+ - v-); second-order blocks must be lowered
/// first (throws std::invalid_argument otherwise). The file encodes the
/// program as the SDPA dual
///     max <F0, Y>  s.t.  <Fk, Y> = bk,  Y >= 0
/// with F0 = -C_objective, so the SDPA dual objective equals the negated
/// optimal value of the program. Values carry 17 significant digits.
std::string export_sdpa(const ConicProgram& program);

/// Inverse of export_sdpa for testing: parses a ".dat-s" file into a program
/// with PSD and nonneg blocks (labels "blk1", "blk2", ...).
ConicProgram import_sdpa(const std::string& text);

}  // namespace lrsdp
