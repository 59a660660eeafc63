#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "lievar/fd.hpp"
#include "lievar/lie.hpp"
#include "lievar/retraction.hpp"

// Discrete Lagrangian machinery: action sums, discrete Euler-Lagrange
// residuals, discrete Legendre transforms, the discrete momentum map, and
// discrete Euler-Poincare residuals of first, second and generic order k.
//
// Derivatives with respect to group arguments are stored as dual-algebra
// coordinate vectors in the body (left-trivialized) form
//   <lambda, eta> = d/de F(W exp(e eta)),
// and the spatial (right) form is obtained as rho(W) = Ad*_{W^-1} lambda(W).
// Perturbations use the exact exponential; with central differences the
// choice of chart only enters at third order in the step.

namespace lievar {

using GroupScalarFn = std::function<double(const GroupElement&)>;
using GroupScalar2Fn = std::function<double(const GroupElement&, const GroupElement&)>;
using GroupScalar3Fn =
    std::function<double(const GroupElement&, const GroupElement&, const GroupElement&)>;
using GroupScalarKFn = std::function<double(const std::vector<GroupElement>&)>;

/// Body-form directional derivative <lambda(W), e_i> = d/de F(W exp(e e_i)).
Vec left_pullback(const GroupScalarFn& f, const GroupElement& W);
/// Spatial-form directional derivative <rho(W), e_i> = d/de F(exp(e e_i) W).
Vec right_pullback(const GroupScalarFn& f, const GroupElement& W);

/// Two-point discrete Lagrangian on a group. D1/D2 return left-trivialized
/// gradients; analytic derivatives are optional and fall back to central
/// differences through the exponential chart.
struct DiscreteLagrangian {
  GroupTag tag = GroupTag::Rn;
  GroupScalar2Fn eval;
  std::function<Vec(const GroupElement&, const GroupElement&)> d1;  // optional
  std::function<Vec(const GroupElement&, const GroupElement&)> d2;  // optional

  Vec D1(const GroupElement& q0, const GroupElement& q1) const;
  Vec D2(const GroupElement& q0, const GroupElement& q1) const;
};

/// Two-point Lagrangian in algebra variables (used by the reduced
/// second-order equations). D1/D2 are plain gradients on R^d.
struct ReducedDiscreteLagrangian2 {
  GroupTag tag = GroupTag::SO3;
  std::function<double(const Vec&, const Vec&)> eval;
  std::function<Vec(const Vec&, const Vec&)> d1;  // optional
  std::function<Vec(const Vec&, const Vec&)> d2;  // optional

  Vec D1(const Vec& x0, const Vec& x1) const;
  Vec D2(const Vec& x0, const Vec& x1) const;
};

/// Left action of a group H on the configuration space, described by its
/// one-parameter flows q -> exp_H(t xi) . q together with the infinitesimal
/// generator (tangent vector at q in matrix coordinates).
struct GroupAction {
  int dim = 0;
  std::function<GroupElement(const Vec& xi, double t, const GroupElement& q)> flow;
  std::function<Mat(const Vec& xi, const GroupElement& q)> generator;  // optional
};

/// Left-multiplication action of the configuration group on itself.
GroupAction left_multiplication_action(GroupTag tag, int n = 3);
/// Translation action on R^n.
GroupAction translation_action(int n);

struct Trajectory {
  GroupTag tag = GroupTag::Rn;
  std::vector<GroupElement> points;  // g_0 .. g_N
  std::vector<Vec> velocities;       // optional xi_0 .. xi_{N-1}
  double h = 0.0;

  int steps() const { return static_cast<int>(points.size()) - 1; }
  /// max_k | g_{k+1} - g_k tau(h xi_k) | when velocities are present.
  double reconstruction_defect(const Retraction& retr) const;
};

double action_sum(const DiscreteLagrangian& Ld, const Trajectory& traj);

/// D1 Ld(q_k, q_{k+1}) + D2 Ld(q_{k-1}, q_k), trivialized at q_k.
/// Valid for 1 <= k <= N-1.
Vec del_residual(const DiscreteLagrangian& Ld, const Trajectory& traj, int k);

std::pair<GroupElement, Vec> discrete_legendre_minus(const DiscreteLagrangian& Ld,
                                                     const GroupElement& q0,
                                                     const GroupElement& q1);
std::pair<GroupElement, Vec> discrete_legendre_plus(const DiscreteLagrangian& Ld,
                                                    const GroupElement& q0,
                                                    const GroupElement& q1);

/// <J_d, xi> = <D2 Ld(q_k, q_{k+1}), xi_Q(q_{k+1})>, one entry per basis
/// element of the acting algebra.
Vec discrete_momentum_map(const DiscreteLagrangian& Ld, const GroupAction& action,
                          const GroupElement& qk, const GroupElement& qk1);

/// First-order discrete Euler-Poincare residual rho(W_k) - lambda(W_{k-1}).
Vec dep1_residual(const GroupScalarFn& ld, const GroupElement& Wkm1, const GroupElement& Wk);

/// Second-order discrete Euler-Poincare residual in algebra variables for a
/// retraction-based discretization with step h:
///   Ad*_{tau(h x_{k-1})} dtau_inv*_{h x_{k-1}} (D1 ld(x_{k-1}, x_k) + D2 ld(x_{k-2}, x_{k-1}))
///   - dtau_inv*_{h x_k} (D1 ld(x_k, x_{k+1}) + D2 ld(x_{k-1}, x_k)).
/// `window` holds x_{k-2}, x_{k-1}, x_k, x_{k+1}.
Vec dep2_algebra_residual(const ReducedDiscreteLagrangian2& ld, const Retraction& retr, double h,
                          const std::array<Vec, 4>& window);

/// Second-order discrete Euler-Poincare residual in group variables:
///   lambda_1(W_{k-1}, W_k) - rho_1(W_k, W_{k+1}) - rho_2(W_{k-1}, W_k)
///   + lambda_2(W_{k-2}, W_{k-1}),
/// where lambda_i / rho_i are the body / spatial forms of the slot-i
/// derivative. Equals the variation coefficient of Sigma_k in the action sum
/// under dW = -Sigma W + W Sigma'.
Vec dep2_group_residual(const GroupScalar2Fn& ld, const std::array<GroupElement, 4>& W);

/// Unreduced variant on G x G x G with arguments (g_k, W_k, W_{k+1}); adds
/// the body-form g-slot derivative at (g_k, W_k, W_{k+1}).
/// `g` holds g_{k-2}, g_{k-1}, g_k and `W` holds W_{k-2} .. W_{k+1}; the
/// reconstruction W_j = g_j^-1 g_{j+1} is checked where both ends are given.
Vec del2_group_residual(const GroupScalar3Fn& Ld, const std::array<GroupElement, 3>& g,
                        const std::array<GroupElement, 4>& W);

/// Order-k discrete Euler-Poincare residual for ld on k group copies.
/// `window` holds W_{i-k} .. W_{i+k-1} (length 2k); the result is
///   sum_{s=1..k} lambda_s(W_{i-s..i-s+k-1}) - sum_{s=1..k} rho_s(W_{i-s+1..i-s+k}),
/// the variation coefficient of Sigma_i. Note the k=1 specialization is the
/// negative of dep1_residual, whose sign convention is the boundary-one-form
/// difference rho - lambda rather than the variation coefficient.
Vec depk_residual(const GroupScalarKFn& ld, const std::vector<GroupElement>& window, int k);

/// Euler discretization of L(q, qdot) = 0.5 qdot^T M qdot - V(q) on R^n with
/// quadratic potential V(q) = 0.5 q^T A q + b^T q:
///   Ld(q0, q1) = h [ 0.5 ((q1-q0)/h)^T M ((q1-q0)/h) - V(q0) ],
/// with analytic gradients. Its discrete Euler-Lagrange equations are the
/// second-difference Newton law M (q_{k+1} - 2 q_k + q_{k-1})/h^2 = -grad V(q_k).
DiscreteLagrangian vector_space_lagrangian(const Mat& M, const Mat& A, const Vec& b, double h);

/// Explicit discrete flow of the Newton-law recurrence from (q0, q1);
/// returns q_0 .. q_N. Throws on singular M.
std::vector<Vec> integrate_vector_space(const Mat& M, const Mat& A, const Vec& b, const Vec& q0,
                                        const Vec& q1, int N, double h);

namespace detail {
/// Body-form gradient of a multi-argument group scalar w.r.t. `slot`.
Vec slot_left_pullback(const GroupScalarKFn& f, const std::vector<GroupElement>& args, int slot);
/// Spatial-form gradient w.r.t. `slot`.
Vec slot_right_pullback(const GroupScalarKFn& f, const std::vector<GroupElement>& args, int slot);
}  // namespace detail

}  // namespace lievar
