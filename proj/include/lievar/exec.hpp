#pragma once

namespace lievar {

/// Execution policy for data-parallel kernels. Serial is the reference
/// implementation; Parallel uses OpenMP when compiled in and must produce
/// identical results element for element.
enum class Exec { Serial, Parallel };

}  // namespace lievar
