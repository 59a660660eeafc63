#include "lievar/validation.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lievar {

ConvergenceReport convergence_order(const std::vector<double>& steps,
                                    const std::vector<double>& norms) {
  if (steps.size() != norms.size()) {
    throw std::invalid_argument("convergence_order: size mismatch");
  }
  if (steps.size() < 3) throw std::invalid_argument("convergence_order: need >= 3 points");
  ConvergenceReport rep;
  rep.steps = steps;
  rep.norms = norms;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] <= 0.0 || (i > 0 && steps[i] >= steps[i - 1])) {
      throw std::invalid_argument("convergence_order: steps must be positive and decreasing");
    }
    if (norms[i] < 0.0) throw std::invalid_argument("convergence_order: negative norm");
    if (norms[i] == 0.0) {
      rep.norms[i] = std::numeric_limits<double>::epsilon();
      rep.floored = true;
    }
  }
  const std::size_t n = steps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(rep.steps[i]);
    const double y = std::log(rep.norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rep.local_orders.push_back(std::log(rep.norms[i] / rep.norms[i + 1]) /
                               std::log(rep.steps[i] / rep.steps[i + 1]));
  }
  return rep;
}

Vec SecondOrderLagrangian::dxi(const Vec& xi, const Vec& xidot) const {
  if (grad_xi) return grad_xi(xi, xidot);
  return fd_gradient([&](const Vec& x) { return eval(x, xidot); }, xi, default_fd_step());
}

Vec SecondOrderLagrangian::dxidot(const Vec& xi, const Vec& xidot) const {
  if (grad_xidot) return grad_xidot(xi, xidot);
  return fd_gradient([&](const Vec& x) { return eval(xi, x); }, xidot, default_fd_step());
}

namespace {

// 2nd-order first derivative on an equispaced array: central in the interior,
// one-sided at the two ends.
std::vector<Vec> time_derivative(const std::vector<Vec>& f, double h) {
  const std::size_t n = f.size();
  std::vector<Vec> df(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      df[i] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    } else if (i == n - 1) {
      df[i] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    } else {
      df[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
  }
  return df;
}

}  // namespace

std::vector<Vec> continuous_ep2_residual(const SecondOrderLagrangian& L,
                                         const std::vector<Vec>& samples, double h) {
  const int n = static_cast<int>(samples.size());
  if (n < 5) throw std::invalid_argument("continuous_ep2_residual: need >= 5 samples");
  const std::vector<Vec> xidot = time_derivative(samples, h);
  std::vector<Vec> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = L.dxidot(samples[i], xidot[i]);
    b[i] = L.dxi(samples[i], xidot[i]);
  }
  const std::vector<Vec> da = time_derivative(a, h);
  const std::vector<Vec> db = time_derivative(b, h);
  std::vector<Vec> res;
  res.reserve(n - 4);
  for (int i = 2; i <= n - 3; ++i) {
    const Vec d2a = (a[i + 1] - 2.0 * a[i] + a[i - 1]) / (h * h);
    res.push_back(d2a - db[i] + ad_star(L.tag, samples[i], b[i]) -
                  ad_star(L.tag, samples[i], da[i]));
  }
  return res;
}

std::vector<Eigen::Vector3d> rigid_continuous_residual(const std::vector<Eigen::Vector3d>& Omegas,
                                                       const std::vector<Eigen::Vector3d>& us,
                                                       const Eigen::Vector3d& rho, double h) {
  if (Omegas.size() != us.size()) {
    throw std::invalid_argument("rigid_continuous_residual: sample arrays must align");
  }
  const int n = static_cast<int>(Omegas.size());
  if (n < 3) throw std::invalid_argument("rigid_continuous_residual: need >= 3 samples");
  std::vector<Eigen::Vector3d> res;
  res.reserve(n - 2);
  for (int i = 1; i + 1 < n; ++i) {
    const Eigen::Vector3d dOm = (Omegas[i + 1] - Omegas[i - 1]) / (2.0 * h);
    const Eigen::Vector3d& Om = Omegas[i];
    Eigen::Vector3d coupling(rho(0) * Om(1) * Om(2), rho(1) * Om(0) * Om(2),
                             rho(2) * Om(0) * Om(1));
    res.push_back(dOm - coupling - us[i]);
  }
  return res;
}

std::vector<Vector6d> rod_continuous_residual(const std::vector<Vector6d>& phis,
                                              const std::vector<Eigen::Vector3d>& fs,
                                              const std::vector<Eigen::Vector3d>& ls,
                                              const Matrix6d& K, const Vector6d& phi_bar,
                                              double h) {
  if (phis.size() != fs.size() || phis.size() != ls.size()) {
    throw std::invalid_argument("rod_continuous_residual: sample arrays must align");
  }
  const int n = static_cast<int>(phis.size());
  if (n < 3) throw std::invalid_argument("rod_continuous_residual: need >= 3 samples");
  // grad = K (phi - phi_bar), split as (m, n) in the (u, v) ordering.
  std::vector<Eigen::Vector3d> ms(n), ns(n);
  for (int i = 0; i < n; ++i) {
    const Vector6d grad = K * (phis[i] - phi_bar);
    ms[i] = grad.head<3>();
    ns[i] = grad.tail<3>();
  }
  std::vector<Vector6d> res;
  res.reserve(n - 2);
  for (int i = 1; i + 1 < n; ++i) {
    const Eigen::Vector3d ndot = (ns[i + 1] - ns[i - 1]) / (2.0 * h);
    const Eigen::Vector3d mdot = (ms[i + 1] - ms[i - 1]) / (2.0 * h);
    const Eigen::Vector3d u = phis[i].head<3>();
    const Eigen::Vector3d v = phis[i].tail<3>();
    Vector6d r;
    r.head<3>() = ndot + ns[i].cross(u) + fs[i];
    r.tail<3>() = mdot + ns[i].cross(v) + ms[i].cross(u) + ls[i];
    res.push_back(r);
  }
  return res;
}

std::vector<double> group_defect(const Trajectory& traj, Exec exec) {
  const int n = static_cast<int>(traj.points.size());
  std::vector<double> d(n);
#ifdef _OPENMP
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
#endif
  for (int i = 0; i < n; ++i) d[i] = group_defect(traj.points[i]);
  return d;
}

double max_group_defect(const Trajectory& traj, Exec exec) {
  const std::vector<double> d = group_defect(traj, exec);
  double worst = 0.0;
  for (double x : d) worst = std::max(worst, x);
  return worst;
}

}  // namespace lievar
