#pragma once

namespace lrsdp {

enum class SolveStatus { Optimal, MaxIterations, NumericalFailure };

const char* to_string(SolveStatus s);

}  // namespace lrsdp
