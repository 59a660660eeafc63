#pragma once

#include <functional>
#include <vector>

#include "lievar/discrete.hpp"
#include "lievar/fd.hpp"
#include "lievar/lie.hpp"

// Independent numerical oracles: continuous-equation residual evaluators,
// conservation diagnostics and convergence-order estimation. All convergence
// slopes reported anywhere in the project are computed here.

namespace lievar {

struct ConvergenceReport {
  std::vector<double> steps;         // h_i, strictly decreasing
  std::vector<double> norms;         // residual norms, floored at eps if zero
  std::vector<double> local_orders;  // per-pair log ratios
  double slope = 0.0;                // least-squares slope of log norm vs log h
  bool floored = false;              // some norm hit the machine-epsilon floor
};

/// Least-squares fit of log(norm) against log(h). Requires >= 3 points and
/// strictly decreasing h.
ConvergenceReport convergence_order(const std::vector<double>& steps,
                                    const std::vector<double>& norms);

/// Second-order Lagrangian l(xi, xi_dot) in algebra variables, with optional
/// analytic gradients (finite differences otherwise).
struct SecondOrderLagrangian {
  GroupTag tag = GroupTag::SO3;
  std::function<double(const Vec&, const Vec&)> eval;
  std::function<Vec(const Vec&, const Vec&)> grad_xi;      // optional
  std::function<Vec(const Vec&, const Vec&)> grad_xidot;   // optional

  Vec dxi(const Vec& xi, const Vec& xidot) const;
  Vec dxidot(const Vec& xi, const Vec& xidot) const;
};

/// Residual of the second-order Euler-Poincare equations
///   d2/dt2 (dl/dxidot) - d/dt (dl/dxi) + ad*_xi (dl/dxi) - ad*_xi (d/dt dl/dxidot)
/// evaluated on equispaced samples xi(t_i). Time derivatives use 2nd-order
/// central stencils; returned for interior indices 2 .. n-3 only.
std::vector<Vec> continuous_ep2_residual(const SecondOrderLagrangian& L,
                                         const std::vector<Vec>& samples, double h);

/// Residual of Omega_dot_i - rho_i Omega_j Omega_k - u_i with the time
/// derivative by central differences; interior samples 1 .. n-2.
std::vector<Eigen::Vector3d> rigid_continuous_residual(const std::vector<Eigen::Vector3d>& Omegas,
                                                       const std::vector<Eigen::Vector3d>& us,
                                                       const Eigen::Vector3d& rho, double h);

/// Residual of the rod equilibrium equations
///   n_dot + n x u + f,   m_dot + n x v + m x u + l
/// on equispaced strain samples; interior samples 1 .. n-2.
std::vector<Vector6d> rod_continuous_residual(const std::vector<Vector6d>& phis,
                                              const std::vector<Eigen::Vector3d>& fs,
                                              const std::vector<Eigen::Vector3d>& ls,
                                              const Matrix6d& K, const Vector6d& phi_bar,
                                              double h);

/// Per-step membership defect of a trajectory.
std::vector<double> group_defect(const Trajectory& traj, Exec exec = Exec::Parallel);
double max_group_defect(const Trajectory& traj, Exec exec = Exec::Parallel);

}  // namespace lievar
