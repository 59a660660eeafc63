#include "lievar/control.hpp"

#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lievar {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::Vector3d coupling(const Eigen::Vector3d& Omega, const Eigen::Vector3d& rho) {
  return {rho(0) * Omega(1) * Omega(2), rho(1) * Omega(0) * Omega(2),
          rho(2) * Omega(0) * Omega(1)};
}

// d(coupling)/dOmega.
Eigen::Matrix3d coupling_jacobian(const Eigen::Vector3d& Omega, const Eigen::Vector3d& rho) {
  Eigen::Matrix3d B;
  B << 0, rho(0) * Omega(2), rho(0) * Omega(1),
       rho(1) * Omega(2), 0, rho(1) * Omega(0),
       rho(2) * Omega(1), rho(2) * Omega(0), 0;
  return B;
}

}  // namespace

void RigidBodyProblem::validate() const {
  if (N < 4) throw std::invalid_argument("rigid-body problem requires N >= 4");
  if (!(h > 0.0)) throw std::invalid_argument("rigid-body problem requires h > 0");
  if (R0.tag() != GroupTag::SO3 || RT.tag() != GroupTag::SO3) {
    throw std::invalid_argument("rigid-body boundary matrices must be SO(3) elements");
  }
  if (!rho.allFinite() || !Omega0.allFinite()) {
    throw std::invalid_argument("rigid-body parameters must be finite");
  }
  if (strict_terminal_velocity && !OmegaT) {
    throw std::invalid_argument("strict terminal mode requires OmegaT");
  }
}

void CosseratRodProblem::validate() const {
  if (N < 4) throw std::invalid_argument("rod problem requires N >= 4");
  if (!(h > 0.0)) throw std::invalid_argument("rod problem requires h > 0");
  if ((K - K.transpose()).norm() > 1e-12 * (1.0 + K.norm())) {
    throw std::invalid_argument("rod stiffness K must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix6d> es(K);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("rod stiffness K must be positive definite");
  }
  if (Phi0.tag() != GroupTag::SE3 || PhiT.tag() != GroupTag::SE3) {
    throw std::invalid_argument("rod boundary matrices must be SE(3) elements");
  }
  if (scheme != "cayley-full" && scheme != "direct-truncated") {
    throw std::invalid_argument("rod scheme must be cayley-full or direct-truncated");
  }
}

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("newton: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("newton: max_iter must be >= 1");
  if (!(fd_step > 0.0)) throw std::invalid_argument("newton: fd_step must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    throw std::invalid_argument("newton: backtrack factor must be in (0,1)");
  }
  if (!(armijo > 0.0 && armijo < 1.0)) {
    throw std::invalid_argument("newton: armijo constant must be in (0,1)");
  }
}

Eigen::Vector3d rigid_controls(const Eigen::Vector3d& Omega, const Eigen::Vector3d& Omega_dot,
                               const Eigen::Vector3d& rho) {
  return Omega_dot - coupling(Omega, rho);
}

double rigid_lagrangian(const Eigen::Vector3d& Omega, const Eigen::Vector3d& Omega_dot,
                        const Eigen::Vector3d& rho) {
  return 0.5 * rigid_controls(Omega, Omega_dot, rho).squaredNorm();
}

ReducedDiscreteLagrangian2 rigid_discrete_lagrangian(const Eigen::Vector3d& rho, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("rigid_discrete_lagrangian: h must be positive");
  ReducedDiscreteLagrangian2 ld;
  ld.tag = GroupTag::SO3;
  ld.eval = [rho, h](const Vec& x0, const Vec& x1) {
    return h * rigid_lagrangian(x0, Vec((x1 - x0) / h), rho);
  };
  // l_d = h l(x0, (x1-x0)/h) with l = 0.5|u|^2:
  //   D1 = -h (dB/dOmega)^T u - u,   D2 = u,   u = (x1-x0)/h - B(x0).
  ld.d1 = [rho, h](const Vec& x0, const Vec& x1) {
    const Eigen::Vector3d u = rigid_controls(x0, Eigen::Vector3d((x1 - x0) / h), rho);
    return Vec(-h * coupling_jacobian(x0, rho).transpose() * u - u);
  };
  ld.d2 = [rho, h](const Vec& x0, const Vec& x1) {
    return Vec(rigid_controls(x0, Eigen::Vector3d((x1 - x0) / h), rho));
  };
  return ld;
}

Vec terminal_constraint(const std::vector<Vec>& xis, const GroupElement& g0,
                        const GroupElement& gT, const Retraction& retr, double h) {
  GroupElement P = GroupElement::identity(g0.tag(), g0.algebra_dim());
  for (const Vec& xi : xis) P = P * retr.tau(Vec(h * xi));
  return retr.tau_inv(P.inverse() * g0.inverse() * gT);
}

Trajectory reconstruct(const GroupElement& g0, const std::vector<Vec>& xis,
                       const Retraction& retr, double h) {
  Trajectory traj;
  traj.tag = g0.tag();
  traj.h = h;
  traj.velocities = xis;
  traj.points.reserve(xis.size() + 1);
  traj.points.push_back(g0);
  for (const Vec& xi : xis) {
    traj.points.push_back(traj.points.back() * retr.tau(Vec(h * xi)));
  }
  return traj;
}

namespace {

// Shared structure of the second-order residual stacks: given per-sample
// one-form sums mu_k, the interior block at k is
//   Ad*_{tau(h x_{k-1})} dtau_inv*_{h x_{k-1}} mu_{k-1} - dtau_inv*_{h x_k} mu_k.
// mu_{N-1} omits the (x_{N-1}, x_N) pair: the discrete cost only sums the
// available pairs k = 0..N-2.
Vec assemble_second_order_stack(const ReducedDiscreteLagrangian2& ld, const Retraction& retr,
                                const std::vector<Vec>& x_all, double h, const GroupElement& g0,
                                const GroupElement& gT, Exec exec) {
  const int N = static_cast<int>(x_all.size());
  const int d = retr.dim();
  std::vector<Vec> mu(N);
  std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
#endif
  for (int k = 1; k < N; ++k) {
    try {
      mu[k] = (k + 1 < N) ? Vec(ld.D1(x_all[k], x_all[k + 1]) + ld.D2(x_all[k - 1], x_all[k]))
                          : ld.D2(x_all[k - 1], x_all[k]);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  Vec F(d * (N - 1));
#ifdef _OPENMP
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
#endif
  for (int k = 2; k < N; ++k) {
    try {
      const Vec xm = h * x_all[k - 1];
      const Vec xk = h * x_all[k];
      F.segment(d * (k - 2), d) = Ad_star(retr.tau(xm), retr.dtau_inv_star(xm, mu[k - 1])) -
                                  retr.dtau_inv_star(xk, mu[k]);
    } catch (const std::domain_error& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!err) {
        err = std::make_exception_ptr(
            std::domain_error(std::string(e.what()) + " (residual block k=" + std::to_string(k) +
                              ")"));
      }
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  F.tail(d) = terminal_constraint(x_all, g0, gT, retr, h);
  return F;
}

}  // namespace

Vec assemble_rigid_residual(const RigidBodyProblem& p, const Vec& x, const Retraction& retr,
                            Exec exec) {
  const int N = p.N;
  if (x.size() != 3 * (N - 1)) {
    throw std::invalid_argument("assemble_rigid_residual: expected 3(N-1) unknowns");
  }
  std::vector<Vec> Om(N);
  Om[0] = p.Omega0;
  for (int k = 1; k < N; ++k) Om[k] = x.segment(3 * (k - 1), 3);
  Vec F = assemble_second_order_stack(rigid_discrete_lagrangian(p.rho, p.h), retr, Om, p.h, p.R0,
                                      p.RT, exec);
  if (p.strict_terminal_velocity && p.OmegaT) {
    // Pin Omega_{N-1} instead of the k = N-1 stationarity block.
    F.segment(3 * (N - 3), 3) = Om[N - 1] - *p.OmegaT;
  }
  return F;
}

std::pair<Vec, SolveReport> newton_solve(const VectorFn& F, const Vec& x0,
                                         const NewtonConfig& cfg, Exec exec) {
  cfg.validate();
  const auto t0 = Clock::now();
  SolveReport rep;
  Vec x = x0;
  Vec Fx = F(x);
  if (Fx.size() != x.size()) {
    throw std::invalid_argument("newton_solve: system is not square");
  }
  double r = Fx.lpNorm<Eigen::Infinity>();
  rep.history.push_back(r);

  for (int it = 0; it < cfg.max_iter && r > cfg.tol; ++it) {
    const Mat J = fd_jacobian(F, x, cfg.fd_step, exec);
    Vec d = J.partialPivLu().solve(-Fx);
    const bool solve_ok =
        d.allFinite() && (J * d + Fx).norm() <= 1e-8 * (Fx.norm() + 1.0) + 1e-300;
    if (!solve_ok) {
      const double shift = 1e-8 * J.norm();
      const Mat JtJ =
          J.transpose() * J + shift * Mat::Identity(x.size(), x.size());
      d = JtJ.ldlt().solve(Vec(-J.transpose() * Fx));
      if (!d.allFinite()) {
        rep.message = "linear solve failed (singular Jacobian after regularization)";
        break;
      }
    }

    const double f0 = Fx.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    double best_f = f0;
    double best_alpha = -1.0;
    Vec xn, Fn, best_x, best_F;
    for (int b = 0; b <= cfg.max_backtracks; ++b) {
      xn = x + alpha * d;
      bool ok = true;
      try {
        Fn = F(xn);
        ok = Fn.allFinite();
      } catch (const std::exception&) {
        ok = false;  // e.g. retraction domain error: reject this step length
      }
      if (ok) {
        const double fn = Fn.squaredNorm();
        if (fn <= (1.0 - 2.0 * cfg.armijo * alpha) * f0) {
          accepted = true;
          break;
        }
        if (fn < best_f) {
          best_f = fn;
          best_alpha = alpha;
          best_x = xn;
          best_F = Fn;
        }
      }
      alpha *= cfg.backtrack;
    }
    if (!accepted) {
      if (best_alpha > 0.0) {
        xn = best_x;
        Fn = best_F;
      } else {
        rep.message = "line search failed to decrease the residual";
        break;
      }
    }
    x = xn;
    Fx = Fn;
    r = Fx.lpNorm<Eigen::Infinity>();
    rep.history.push_back(r);
    rep.iterations = it + 1;
  }

  rep.residual = r;
  rep.converged = (r <= cfg.tol);
  if (!rep.converged && rep.message.empty()) rep.message = "max iterations reached";
  rep.wall_seconds = seconds_since(t0);
  return {x, rep};
}

RigidBodySolution solve_rigid_body(const RigidBodyProblem& p, const NewtonConfig& cfg,
                                   const std::optional<Vec>& initial_guess, Exec exec) {
  p.validate();
  const auto retr = make_retraction(p.retraction, GroupTag::SO3);
  const int N = p.N;

  Vec x0(3 * (N - 1));
  if (initial_guess) {
    if (initial_guess->size() != x0.size()) {
      throw std::invalid_argument("solve_rigid_body: initial guess has wrong size");
    }
    x0 = *initial_guess;
  } else {
    // Constant geodesic-like guess tau^-1(R0^-1 RT) / (N h).
    const Vec xi = retr->tau_inv(p.R0.inverse() * p.RT) / (N * p.h);
    for (int k = 0; k < N - 1; ++k) x0.segment(3 * k, 3) = xi;
  }

  const VectorFn F = [&](const Vec& x) {
    return assemble_rigid_residual(p, x, *retr, Exec::Serial);
  };
  auto [x, report] = newton_solve(F, x0, cfg, exec);

  RigidBodySolution sol;
  sol.report = std::move(report);
  sol.Omegas.resize(N);
  sol.Omegas[0] = p.Omega0;
  for (int k = 1; k < N; ++k) sol.Omegas[k] = x.segment(3 * (k - 1), 3);
  sol.trajectory = reconstruct(p.R0, sol.Omegas, *retr, p.h);
  sol.report.terminal_error = (sol.trajectory.points.back().matrix() - p.RT.matrix()).norm();
  for (int k = 0; k + 1 < N; ++k) {
    sol.controls.push_back(rigid_controls(sol.Omegas[k],
                                          Eigen::Vector3d((sol.Omegas[k + 1] - sol.Omegas[k]) / p.h),
                                          p.rho));
  }
  sol.cost = discrete_cost(rigid_discrete_lagrangian(p.rho, p.h), sol.Omegas);
  return sol;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> rod_internal_forces(const Vector6d& phi,
                                                                const Matrix6d& K,
                                                                const Vector6d& phi_bar) {
  const Vector6d grad = K * (phi - phi_bar);  // (m, n) in the (u, v) ordering
  return {grad.tail<3>(), grad.head<3>()};
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> rod_controls(const Vector6d& phi,
                                                         const Vector6d& phi_dot,
                                                         const Matrix6d& K,
                                                         const Vector6d& phi_bar) {
  const auto [n, m] = rod_internal_forces(phi, K, phi_bar);
  const Vector6d rate = K * phi_dot;  // (m_dot, n_dot)
  const Eigen::Vector3d mdot = rate.head<3>();
  const Eigen::Vector3d ndot = rate.tail<3>();
  const Eigen::Vector3d u = phi.head<3>();
  const Eigen::Vector3d v = phi.tail<3>();
  return {-(ndot + n.cross(u)), -(mdot + n.cross(v) + m.cross(u))};
}

double rod_lagrangian(const Vector6d& phi, const Vector6d& phi_dot, const Matrix6d& K,
                      const Vector6d& phi_bar, double rho1) {
  const auto [f, l] = rod_controls(phi, phi_dot, K, phi_bar);
  return f.squaredNorm() + rho1 * rho1 * l.squaredNorm();
}

namespace {

// Jacobians of (f, l) with respect to phi and phi_dot; rows f then l.
struct RodJacobians {
  Eigen::Matrix<double, 3, 6> f_phi, l_phi, f_rate, l_rate;
  Eigen::Vector3d f, l;
};

RodJacobians rod_jacobians(const Vector6d& phi, const Vector6d& phi_dot, const Matrix6d& K,
                           const Vector6d& phi_bar) {
  RodJacobians J;
  const auto [n, m] = rod_internal_forces(phi, K, phi_bar);
  const auto fl = rod_controls(phi, phi_dot, K, phi_bar);
  J.f = fl.first;
  J.l = fl.second;
  const Eigen::Vector3d u = phi.head<3>();
  const Eigen::Vector3d v = phi.tail<3>();
  const Eigen::Matrix3d Kuu = K.topLeftCorner<3, 3>();
  const Eigen::Matrix3d Kuv = K.topRightCorner<3, 3>();
  const Eigen::Matrix3d Kvu = K.bottomLeftCorner<3, 3>();
  const Eigen::Matrix3d Kvv = K.bottomRightCorner<3, 3>();
  const Eigen::Matrix3d U = hat3(u);
  const Eigen::Matrix3d V = hat3(v);
  J.f_phi.leftCols<3>() = U * Kvu - hat3(n);
  J.f_phi.rightCols<3>() = U * Kvv;
  J.l_phi.leftCols<3>() = V * Kvu + U * Kuu - hat3(m);
  J.l_phi.rightCols<3>() = V * Kvv - hat3(n) + U * Kuv;
  J.f_rate = -K.bottomRows<3>();
  J.l_rate = -K.topRows<3>();
  return J;
}

}  // namespace

ReducedDiscreteLagrangian2 rod_discrete_lagrangian(const Matrix6d& K, const Vector6d& phi_bar,
                                                   double rho1, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("rod_discrete_lagrangian: h must be positive");
  ReducedDiscreteLagrangian2 ld;
  ld.tag = GroupTag::SE3;
  ld.eval = [K, phi_bar, rho1, h](const Vec& x0, const Vec& x1) {
    return h * rod_lagrangian(x0, Vector6d((x1 - x0) / h), K, phi_bar, rho1);
  };
  const auto grads = [K, phi_bar, rho1, h](const Vec& x0, const Vec& x1) {
    const RodJacobians J = rod_jacobians(x0, Vector6d((x1 - x0) / h), K, phi_bar);
    const double w = 2.0 * rho1 * rho1;
    Vector6d gphi = 2.0 * J.f_phi.transpose() * J.f + w * J.l_phi.transpose() * J.l;
    Vector6d grate = 2.0 * J.f_rate.transpose() * J.f + w * J.l_rate.transpose() * J.l;
    return std::make_pair(gphi, grate);
  };
  ld.d1 = [grads, h](const Vec& x0, const Vec& x1) {
    const auto [gphi, grate] = grads(x0, x1);
    return Vec(h * gphi - grate);
  };
  ld.d2 = [grads](const Vec& x0, const Vec& x1) {
    const auto [gphi, grate] = grads(x0, x1);
    return Vec(grate);
  };
  return ld;
}

Vec assemble_rod_residual(const CosseratRodProblem& p, const Vec& x, const Retraction& retr,
                          Exec exec) {
  const int N = p.N;
  if (x.size() != 6 * (N - 1)) {
    throw std::invalid_argument("assemble_rod_residual: expected 6(N-1) unknowns");
  }
  std::vector<Vec> phi(N);
  phi[0] = p.phi0;
  for (int k = 1; k < N; ++k) phi[k] = x.segment(6 * (k - 1), 6);
  return assemble_second_order_stack(rod_discrete_lagrangian(p.K, p.phi_bar, p.rho1, p.h), retr,
                                     phi, p.h, p.Phi0, p.PhiT, exec);
}

Trajectory reconstruct_rod_direct(const GroupElement& Phi0, const std::vector<Vec>& phis,
                                  double h) {
  Trajectory traj;
  traj.tag = GroupTag::SE3;
  traj.h = h;
  traj.velocities = phis;
  Eigen::Matrix3d R = Phi0.rotation();
  Eigen::Vector3d r = Phi0.translation();
  traj.points.push_back(Phi0);
  for (const Vec& phi : phis) {
    const Eigen::Vector3d u = phi.head<3>();
    const Eigen::Vector3d v = phi.tail<3>();
    r += h * R * v;
    R = R * cay_so3(h * u);
    traj.points.push_back(GroupElement::se3(R, r));
  }
  return traj;
}

Vec assemble_rod_direct_residual(const CosseratRodProblem& p, const Vec& x, Exec exec) {
  const int N = p.N;
  if (x.size() != 6 * (N - 1)) {
    throw std::invalid_argument("assemble_rod_direct_residual: expected 6(N-1) unknowns");
  }
  const ReducedDiscreteLagrangian2 ld = rod_discrete_lagrangian(p.K, p.phi_bar, p.rho1, p.h);
  std::vector<Vec> phi(N);
  phi[0] = p.phi0;
  for (int k = 1; k < N; ++k) phi[k] = x.segment(6 * (k - 1), 6);

  // One-form sums per sample; index N-1 keeps only the trailing-pair part.
  std::vector<Eigen::Vector3d> ups_so(N), ups_r3(N);
  std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
#endif
  for (int m = 1; m < N; ++m) {
    try {
      Vec s = ld.D2(phi[m - 1], phi[m]);
      if (m + 1 < N) s += ld.D1(phi[m], phi[m + 1]);
      ups_so[m] = s.head<3>();
      ups_r3[m] = s.tail<3>();
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  Vec F(6 * (N - 1));
#ifdef _OPENMP
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
#endif
  for (int k = 2; k < N; ++k) {
    const Eigen::Vector3d um = p.h * phi[k - 1].head<3>();
    const Eigen::Vector3d uk = p.h * phi[k].head<3>();
    const Eigen::Vector3d vk = phi[k].tail<3>();
    const Eigen::Matrix3d g_km1 = cay_so3(um);
    const Eigen::Vector3d so_block =
        g_km1.transpose() * (dcay_inv_so3(um).transpose() * ups_so[k - 1]) -
        dcay_inv_so3(uk).transpose() * ups_so[k] + p.h * ups_r3[k].cross(vk);
    const Eigen::Vector3d r3_block = g_km1.transpose() * ups_r3[k - 1] - ups_r3[k];
    F.segment(6 * (k - 2), 3) = so_block;
    F.segment(6 * (k - 2) + 3, 3) = r3_block;
  }

  // Terminal rows: R_N = R(T) through the inverse Cayley map, r_N = r(T).
  Eigen::Matrix3d R = p.Phi0.rotation();
  Eigen::Vector3d r = p.Phi0.translation();
  for (int k = 0; k < N; ++k) {
    r += p.h * R * phi[k].tail<3>();
    R = R * cay_so3(p.h * phi[k].head<3>());
  }
  F.segment(6 * (N - 2), 3) =
      cay_inv(GroupElement::so3(Eigen::Matrix3d(R.transpose() * p.PhiT.rotation())));
  F.segment(6 * (N - 2) + 3, 3) = r - p.PhiT.translation();
  return F;
}

RodSolution solve_rod(const CosseratRodProblem& p, const NewtonConfig& cfg,
                      const std::optional<Vec>& initial_guess, Exec exec) {
  p.validate();
  const bool direct = (p.scheme == "direct-truncated");
  const auto retr = make_retraction(p.retraction, GroupTag::SE3);
  const int N = p.N;

  Vec x0(6 * (N - 1));
  if (initial_guess) {
    if (initial_guess->size() != x0.size()) {
      throw std::invalid_argument("solve_rod: initial guess has wrong size");
    }
    x0 = *initial_guess;
  } else {
    const Vec xi = cay_inv(p.Phi0.inverse() * p.PhiT) / (N * p.h);
    for (int k = 0; k < N - 1; ++k) x0.segment(6 * k, 6) = xi;
  }

  const VectorFn F = [&](const Vec& x) {
    return direct ? assemble_rod_direct_residual(p, x, Exec::Serial)
                  : assemble_rod_residual(p, x, *retr, Exec::Serial);
  };
  auto [x, report] = newton_solve(F, x0, cfg, exec);

  RodSolution sol;
  sol.report = std::move(report);
  sol.phis.resize(N);
  sol.phis[0] = p.phi0;
  for (int k = 1; k < N; ++k) sol.phis[k] = x.segment(6 * (k - 1), 6);
  sol.trajectory = direct ? reconstruct_rod_direct(p.Phi0, sol.phis, p.h)
                          : reconstruct(p.Phi0, sol.phis, *retr, p.h);
  sol.report.terminal_error = (sol.trajectory.points.back().matrix() - p.PhiT.matrix()).norm();
  for (int k = 0; k + 1 < N; ++k) {
    const auto [f, l] = rod_controls(sol.phis[k], Vector6d((sol.phis[k + 1] - sol.phis[k]) / p.h),
                                     p.K, p.phi_bar);
    sol.forces.push_back(f);
    sol.moments.push_back(l);
  }
  sol.cost = discrete_cost(rod_discrete_lagrangian(p.K, p.phi_bar, p.rho1, p.h), sol.phis);
  return sol;
}

double discrete_cost(const ReducedDiscreteLagrangian2& ld, const std::vector<Vec>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("discrete_cost: need >= 2 samples");
  double c = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) c += ld.eval(samples[k], samples[k + 1]);
  return c;
}

}  // namespace lievar
