#include "lievar/fd.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lievar {

double default_fd_step() {
  static const double s = std::cbrt(std::numeric_limits<double>::epsilon());
  return s;
}

namespace {

double component_step(double step, double xi) { return step * std::max(1.0, std::abs(xi)); }

}  // namespace

Vec fd_gradient(const ScalarFn& f, const Vec& x, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_gradient: step must be positive");
  Vec g(x.size());
  Vec xp = x, xm = x;
  for (int i = 0; i < x.size(); ++i) {
    const double d = component_step(step, x(i));
    xp(i) = x(i) + d;
    xm(i) = x(i) - d;
    const double fp = f(xp);
    const double fm = f(xm);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw std::runtime_error("fd_gradient: non-finite evaluation at component " +
                               std::to_string(i));
    }
    g(i) = (fp - fm) / (2.0 * d);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return g;
}

namespace {

void jacobian_column(const VectorFn& f, const Vec& x, double step, int i, Mat& J) {
  Vec xp = x, xm = x;
  const double d = component_step(step, x(i));
  xp(i) += d;
  xm(i) -= d;
  const Vec fp = f(xp);
  const Vec fm = f(xm);
  if (!fp.allFinite() || !fm.allFinite()) {
    throw std::runtime_error("fd_jacobian: non-finite evaluation at column " + std::to_string(i));
  }
  J.col(i) = (fp - fm) / (2.0 * d);
}

}  // namespace

Mat fd_jacobian_serial(const VectorFn& f, const Vec& x, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_jacobian: step must be positive");
  const Vec f0 = f(x);
  Mat J(f0.size(), x.size());
  for (int i = 0; i < x.size(); ++i) jacobian_column(f, x, step, i, J);
  return J;
}

Mat fd_jacobian(const VectorFn& f, const Vec& x, double step, Exec exec) {
  if (exec == Exec::Serial) return fd_jacobian_serial(f, x, step);
  if (step <= 0.0) throw std::invalid_argument("fd_jacobian: step must be positive");
  const Vec f0 = f(x);
  Mat J(f0.size(), x.size());
  std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < x.size(); ++i) {
    try {
      jacobian_column(f, x, step, i, J);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return J;
}

}  // namespace lievar
