#include "lievar/discrete.hpp"

#include <cmath>

namespace lievar {

namespace {

GroupElement basis_exp(GroupTag tag, int dim, int i, double t) {
  Vec e = Vec::Zero(dim);
  e(i) = t;
  return group_exp(tag, e);
}

double group_scale(const GroupElement& g) { return std::max(1.0, g.matrix().norm()); }

}  // namespace

Vec left_pullback(const GroupScalarFn& f, const GroupElement& W) {
  const int d = W.algebra_dim();
  const double step = default_fd_step() * group_scale(W);
  Vec out(d);
  for (int i = 0; i < d; ++i) {
    const double fp = f(W * basis_exp(W.tag(), d, i, step));
    const double fm = f(W * basis_exp(W.tag(), d, i, -step));
    out(i) = (fp - fm) / (2.0 * step);
  }
  return out;
}

Vec right_pullback(const GroupScalarFn& f, const GroupElement& W) {
  const int d = W.algebra_dim();
  const double step = default_fd_step() * group_scale(W);
  Vec out(d);
  for (int i = 0; i < d; ++i) {
    const double fp = f(basis_exp(W.tag(), d, i, step) * W);
    const double fm = f(basis_exp(W.tag(), d, i, -step) * W);
    out(i) = (fp - fm) / (2.0 * step);
  }
  return out;
}

Vec DiscreteLagrangian::D1(const GroupElement& q0, const GroupElement& q1) const {
  if (d1) return d1(q0, q1);
  return left_pullback([&](const GroupElement& g) { return eval(g, q1); }, q0);
}

Vec DiscreteLagrangian::D2(const GroupElement& q0, const GroupElement& q1) const {
  if (d2) return d2(q0, q1);
  return left_pullback([&](const GroupElement& g) { return eval(q0, g); }, q1);
}

Vec ReducedDiscreteLagrangian2::D1(const Vec& x0, const Vec& x1) const {
  if (d1) return d1(x0, x1);
  return fd_gradient([&](const Vec& x) { return eval(x, x1); }, x0, default_fd_step());
}

Vec ReducedDiscreteLagrangian2::D2(const Vec& x0, const Vec& x1) const {
  if (d2) return d2(x0, x1);
  return fd_gradient([&](const Vec& x) { return eval(x0, x); }, x1, default_fd_step());
}

GroupAction left_multiplication_action(GroupTag tag, int n) {
  GroupAction a;
  a.dim = (tag == GroupTag::SO3) ? 3 : (tag == GroupTag::SE3 ? 6 : n);
  a.flow = [tag](const Vec& xi, double t, const GroupElement& q) {
    return group_exp(tag, Vec(t * xi)) * q;
  };
  a.generator = [tag](const Vec& xi, const GroupElement& q) {
    return Mat(wedge(tag, xi) * q.matrix());
  };
  return a;
}

GroupAction translation_action(int n) {
  GroupAction a;
  a.dim = n;
  a.flow = [](const Vec& xi, double t, const GroupElement& q) {
    return GroupElement::rn(Vec(q.matrix().col(0) + t * xi));
  };
  a.generator = [](const Vec& xi, const GroupElement&) { return Mat(xi); };
  return a;
}

double Trajectory::reconstruction_defect(const Retraction& retr) const {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < points.size() && k < velocities.size(); ++k) {
    const GroupElement pred = points[k] * retr.tau(Vec(h * velocities[k]));
    worst = std::max(worst, (pred.matrix() - points[k + 1].matrix()).norm());
  }
  return worst;
}

double action_sum(const DiscreteLagrangian& Ld, const Trajectory& traj) {
  if (traj.points.size() < 2) {
    throw std::invalid_argument("action_sum: trajectory needs at least two points");
  }
  double s = 0.0;
  for (std::size_t k = 1; k < traj.points.size(); ++k) {
    s += Ld.eval(traj.points[k - 1], traj.points[k]);
  }
  return s;
}

Vec del_residual(const DiscreteLagrangian& Ld, const Trajectory& traj, int k) {
  const int N = traj.steps();
  if (k < 1 || k > N - 1) throw std::out_of_range("del_residual: index must satisfy 1 <= k <= N-1");
  return Ld.D1(traj.points[k], traj.points[k + 1]) + Ld.D2(traj.points[k - 1], traj.points[k]);
}

std::pair<GroupElement, Vec> discrete_legendre_minus(const DiscreteLagrangian& Ld,
                                                     const GroupElement& q0,
                                                     const GroupElement& q1) {
  return {q0, Vec(-Ld.D1(q0, q1))};
}

std::pair<GroupElement, Vec> discrete_legendre_plus(const DiscreteLagrangian& Ld,
                                                    const GroupElement& q0,
                                                    const GroupElement& q1) {
  return {q1, Ld.D2(q0, q1)};
}

Vec discrete_momentum_map(const DiscreteLagrangian& Ld, const GroupAction& action,
                          const GroupElement& qk, const GroupElement& qk1) {
  const double step = default_fd_step() * group_scale(qk1);
  Vec J(action.dim);
  Vec e = Vec::Zero(action.dim);
  for (int i = 0; i < action.dim; ++i) {
    e(i) = 1.0;
    const double fp = Ld.eval(qk, action.flow(e, step, qk1));
    const double fm = Ld.eval(qk, action.flow(e, -step, qk1));
    J(i) = (fp - fm) / (2.0 * step);
    e(i) = 0.0;
  }
  return J;
}

Vec dep1_residual(const GroupScalarFn& ld, const GroupElement& Wkm1, const GroupElement& Wk) {
  return right_pullback(ld, Wk) - left_pullback(ld, Wkm1);
}

Vec dep2_algebra_residual(const ReducedDiscreteLagrangian2& ld, const Retraction& retr, double h,
                          const std::array<Vec, 4>& window) {
  const Vec& xkm2 = window[0];
  const Vec& xkm1 = window[1];
  const Vec& xk = window[2];
  const Vec& xk1 = window[3];
  const Vec mu_km1 = ld.D1(xkm1, xk) + ld.D2(xkm2, xkm1);
  const Vec mu_k = ld.D1(xk, xk1) + ld.D2(xkm1, xk);
  return Ad_star(retr.tau(Vec(h * xkm1)), retr.dtau_inv_star(Vec(h * xkm1), mu_km1)) -
         retr.dtau_inv_star(Vec(h * xk), mu_k);
}

namespace detail {

Vec slot_left_pullback(const GroupScalarKFn& f, const std::vector<GroupElement>& args, int slot) {
  const GroupElement& W = args[slot];
  const int d = W.algebra_dim();
  const double step = default_fd_step() * group_scale(W);
  std::vector<GroupElement> a = args;
  Vec out(d);
  for (int i = 0; i < d; ++i) {
    a[slot] = W * basis_exp(W.tag(), d, i, step);
    const double fp = f(a);
    a[slot] = W * basis_exp(W.tag(), d, i, -step);
    const double fm = f(a);
    out(i) = (fp - fm) / (2.0 * step);
  }
  return out;
}

Vec slot_right_pullback(const GroupScalarKFn& f, const std::vector<GroupElement>& args, int slot) {
  const GroupElement& W = args[slot];
  const int d = W.algebra_dim();
  const double step = default_fd_step() * group_scale(W);
  std::vector<GroupElement> a = args;
  Vec out(d);
  for (int i = 0; i < d; ++i) {
    a[slot] = basis_exp(W.tag(), d, i, step) * W;
    const double fp = f(a);
    a[slot] = basis_exp(W.tag(), d, i, -step) * W;
    const double fm = f(a);
    out(i) = (fp - fm) / (2.0 * step);
  }
  return out;
}

}  // namespace detail

Vec dep2_group_residual(const GroupScalar2Fn& ld, const std::array<GroupElement, 4>& W) {
  const GroupScalarKFn f = [&](const std::vector<GroupElement>& a) { return ld(a[0], a[1]); };
  const std::vector<GroupElement> pair_km1 = {W[1], W[2]};   // (W_{k-1}, W_k)
  const std::vector<GroupElement> pair_k = {W[2], W[3]};     // (W_k, W_{k+1})
  const std::vector<GroupElement> pair_km2 = {W[0], W[1]};   // (W_{k-2}, W_{k-1})
  return detail::slot_left_pullback(f, pair_km1, 0) - detail::slot_right_pullback(f, pair_k, 0) -
         detail::slot_right_pullback(f, pair_km1, 1) + detail::slot_left_pullback(f, pair_km2, 1);
}

Vec del2_group_residual(const GroupScalar3Fn& Ld, const std::array<GroupElement, 3>& g,
                        const std::array<GroupElement, 4>& W) {
  for (int j = 0; j < 2; ++j) {
    const GroupElement pred = g[j].inverse() * g[j + 1];
    if ((pred.matrix() - W[j].matrix()).norm() > 1e-10) {
      throw std::invalid_argument("del2_group_residual: W_j != g_j^-1 g_{j+1}");
    }
  }
  const GroupScalarKFn f = [&](const std::vector<GroupElement>& a) { return Ld(a[0], a[1], a[2]); };
  const std::vector<GroupElement> at_k = {g[2], W[2], W[3]};      // (g_k, W_k, W_{k+1})
  const std::vector<GroupElement> at_km1 = {g[1], W[1], W[2]};    // (g_{k-1}, W_{k-1}, W_k)
  const std::vector<GroupElement> at_km2 = {g[0], W[0], W[1]};    // (g_{k-2}, W_{k-2}, W_{k-1})
  // The g-slot derivative enters at index k, aligned with the variation
  // Sigma_k; a variant shifted to index k-1 fails the variation oracle.
  return detail::slot_left_pullback(f, at_k, 0) + detail::slot_left_pullback(f, at_km1, 1) -
         detail::slot_right_pullback(f, at_k, 1) - detail::slot_right_pullback(f, at_km1, 2) +
         detail::slot_left_pullback(f, at_km2, 2);
}

DiscreteLagrangian vector_space_lagrangian(const Mat& M, const Mat& A, const Vec& b, double h) {
  if (M.rows() != M.cols() || A.rows() != A.cols() || M.rows() != A.rows() ||
      b.size() != M.rows()) {
    throw std::invalid_argument("vector_space_lagrangian: inconsistent dimensions");
  }
  if (!(h > 0.0)) throw std::invalid_argument("vector_space_lagrangian: h must be positive");
  DiscreteLagrangian Ld;
  Ld.tag = GroupTag::Rn;
  Ld.eval = [M, A, b, h](const GroupElement& g0, const GroupElement& g1) {
    const Vec q0 = g0.matrix().col(0);
    const Vec q1 = g1.matrix().col(0);
    const Vec vel = (q1 - q0) / h;
    const double V = 0.5 * q0.dot(A * q0) + b.dot(q0);
    return h * (0.5 * vel.dot(M * vel) - V);
  };
  Ld.d1 = [M, A, b, h](const GroupElement& g0, const GroupElement& g1) {
    const Vec q0 = g0.matrix().col(0);
    const Vec q1 = g1.matrix().col(0);
    return Vec(-M * (q1 - q0) / h - h * (A * q0 + b));
  };
  Ld.d2 = [M, h](const GroupElement& g0, const GroupElement& g1) {
    return Vec(M * (g1.matrix().col(0) - g0.matrix().col(0)) / h);
  };
  return Ld;
}

std::vector<Vec> integrate_vector_space(const Mat& M, const Mat& A, const Vec& b, const Vec& q0,
                                        const Vec& q1, int N, double h) {
  if (N < 1) throw std::invalid_argument("integrate_vector_space: N must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("integrate_vector_space: h must be positive");
  Eigen::FullPivLU<Mat> lu(M);
  if (!lu.isInvertible()) throw std::invalid_argument("integrate_vector_space: singular M");
  std::vector<Vec> q;
  q.reserve(N + 1);
  q.push_back(q0);
  if (N >= 1) q.push_back(q1);
  for (int k = 1; k < N; ++k) {
    const Vec gradV = A * q[k] + b;
    q.push_back(Vec(2.0 * q[k] - q[k - 1] - h * h * lu.solve(gradV)));
  }
  return q;
}

Vec depk_residual(const GroupScalarKFn& ld, const std::vector<GroupElement>& window, int k) {
  if (k < 1) throw std::invalid_argument("depk_residual: k must be >= 1");
  if (static_cast<int>(window.size()) != 2 * k) {
    throw std::invalid_argument("depk_residual: window must hold 2k elements W_{i-k}..W_{i+k-1}");
  }
  // window[j] = W_{i-k+j}; the slot-s argument tuple for the lambda terms is
  // (W_{i-s}, ..., W_{i-s+k-1}) and for the rho terms (W_{i-s+1}, ..., W_{i-s+k}).
  const int d = window.front().algebra_dim();
  Vec out = Vec::Zero(d);
  for (int s = 1; s <= k; ++s) {
    std::vector<GroupElement> lam_args(window.begin() + (k - s), window.begin() + (2 * k - s));
    std::vector<GroupElement> rho_args(window.begin() + (k - s + 1),
                                       window.begin() + (2 * k - s + 1));
    out += detail::slot_left_pullback(ld, lam_args, s - 1);
    out -= detail::slot_right_pullback(ld, rho_args, s - 1);
  }
  return out;
}

}  // namespace lievar
