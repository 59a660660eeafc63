#pragma once

#include <functional>

#include "lievar/exec.hpp"
#include "lievar/lie.hpp"

// Central finite differences. Steps are scaled per component as
// step * max(1, |x_i|). Non-finite evaluations are reported with the
// offending component index.

namespace lievar {

using ScalarFn = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;

/// Step used by the built-in derivative backends: cbrt(eps) ~ 6.1e-6.
double default_fd_step();

Vec fd_gradient(const ScalarFn& f, const Vec& x, double step);

/// Column-parallel Jacobian (OpenMP); `f` must be safe to call concurrently.
Mat fd_jacobian(const VectorFn& f, const Vec& x, double step, Exec exec = Exec::Parallel);
/// Serial reference implementation, kept for testing and benchmarking.
Mat fd_jacobian_serial(const VectorFn& f, const Vec& x, double step);

}  // namespace lievar
