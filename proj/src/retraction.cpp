#include "lievar/retraction.hpp"

#include <array>
#include <cmath>

namespace lievar {

Eigen::Matrix3d cay_so3(const Eigen::Vector3d& omega) {
  const Eigen::Matrix3d W = hat3(omega);
  const double s = 4.0 / (4.0 + omega.squaredNorm());
  return Eigen::Matrix3d::Identity() + s * (W + 0.5 * W * W);
}

Eigen::Matrix3d dcay_so3(const Eigen::Vector3d& omega) {
  const double s = 2.0 / (4.0 + omega.squaredNorm());
  return s * (2.0 * Eigen::Matrix3d::Identity() + hat3(omega));
}

Eigen::Matrix3d dcay_inv_so3(const Eigen::Vector3d& omega) {
  return Eigen::Matrix3d::Identity() - 0.5 * hat3(omega) + 0.25 * omega * omega.transpose();
}

Mat cay_matrix(const Mat& X) {
  const Mat I = Mat::Identity(X.rows(), X.cols());
  Eigen::FullPivLU<Mat> lu(I - 0.5 * X);
  if (!lu.isInvertible()) {
    throw std::domain_error("cay: I - xi/2 is singular");
  }
  return lu.solve(I + 0.5 * X);
}

GroupElement cay(GroupTag tag, const Vec& xi) {
  detail::check_dim(tag, xi, "cay");
  switch (tag) {
    case GroupTag::SO3:
      return GroupElement::so3(cay_so3(xi));
    case GroupTag::SE3: {
      const Eigen::Vector3d u = xi.head<3>();
      const Eigen::Vector3d v = xi.tail<3>();
      const Eigen::Matrix3d A = Eigen::Matrix3d::Identity() - 0.5 * hat3(u);
      return GroupElement::se3(cay_so3(u), A.lu().solve(v));
    }
    case GroupTag::Rn:
      return GroupElement::rn(xi);
  }
  return {};
}

Vec cay_inv(const GroupElement& g) {
  if (g.tag() == GroupTag::Rn) return g.matrix().col(0);
  const Mat& m = g.matrix();
  const Mat I = Mat::Identity(m.rows(), m.cols());
  Eigen::FullPivLU<Mat> lu(I + m);
  if (!lu.isInvertible()) {
    throw std::domain_error("cay_inv: I + g is singular (rotation angle at pi)");
  }
  // For SO(3), guard well before the singularity so the result is reliable.
  if (g.tag() == GroupTag::SO3 && g.rotation().trace() < -1.0 + 1e-12) {
    throw std::domain_error("cay_inv: rotation angle too close to pi");
  }
  if (g.tag() == GroupTag::SE3) {
    const Eigen::Matrix3d R = g.rotation();
    if (R.trace() < -1.0 + 1e-12) {
      throw std::domain_error("cay_inv: rotation angle too close to pi");
    }
  }
  Mat Xi = 2.0 * lu.solve(m - I);
  // The result is an algebra element up to roundoff; take the antisymmetric
  // part of the rotation block before reading off coordinates.
  if (g.tag() == GroupTag::SO3) {
    const Mat S = 0.5 * (Xi - Xi.transpose());
    if ((Xi - S).norm() > 1e-6 * (1.0 + Xi.norm())) {
      throw std::domain_error("cay_inv: result is not antisymmetric");
    }
    return vee3(S, 1e-6);
  }
  Mat top = Xi.topLeftCorner(3, 3);
  const Mat S = 0.5 * (top - top.transpose());
  Vector6d out;
  out.head<3>() = vee3(S, 1e-6);
  out.tail<3>() = Xi.topRightCorner(3, 1);
  return out;
}

Vec dcay(GroupTag tag, const Vec& xi, const Vec& eta) {
  detail::check_dim(tag, xi, "dcay");
  if (tag == GroupTag::Rn) return eta;
  if (tag == GroupTag::SO3) return dcay_so3(xi) * eta;
  const Mat X = wedge(tag, xi);
  const Mat E = wedge(tag, eta);
  const Mat I = Mat::Identity(X.rows(), X.cols());
  Eigen::PartialPivLU<Mat> lm(I - 0.5 * X);
  Eigen::PartialPivLU<Mat> lp(I + 0.5 * X);
  return vee(tag, lm.solve(Mat(E * lp.inverse())), 1e-6);
}

Vec dcay_inv(GroupTag tag, const Vec& xi, const Vec& eta) {
  detail::check_dim(tag, xi, "dcay_inv");
  if (tag == GroupTag::Rn) return eta;
  if (tag == GroupTag::SO3) return dcay_inv_so3(xi) * eta;
  const Mat X = wedge(tag, xi);
  const Mat E = wedge(tag, eta);
  const Mat I = Mat::Identity(X.rows(), X.cols());
  return vee(tag, Mat((I - 0.5 * X) * E * (I + 0.5 * X)), 1e-6);
}

namespace {

// B_0..B_12, B_1 = -1/2.
constexpr std::array<double, 13> kBernoulli = {
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0,
    0.0, -1.0 / 30.0, 0.0, 5.0 / 66.0, 0.0, -691.0 / 2730.0};

}  // namespace

Vec dexp_truncated(GroupTag tag, const Vec& xi, const Vec& eta, int order) {
  if (order < 0) throw std::invalid_argument("dexp_truncated: order must be >= 0");
  Vec term = eta;
  Vec sum = eta;
  double fact = 1.0;
  for (int j = 1; j <= order; ++j) {
    term = ad(tag, xi, term);
    fact *= static_cast<double>(j + 1);
    sum += term / fact;
  }
  return sum;
}

Vec dexp_inv_truncated(GroupTag tag, const Vec& xi, const Vec& eta, int order) {
  if (order < 0) throw std::invalid_argument("dexp_inv_truncated: order must be >= 0");
  if (order >= static_cast<int>(kBernoulli.size())) {
    throw std::invalid_argument("dexp_inv_truncated: order beyond tabulated Bernoulli numbers");
  }
  Vec term = eta;
  Vec sum = kBernoulli[0] * eta;
  double fact = 1.0;
  for (int j = 1; j <= order; ++j) {
    term = ad(tag, xi, term);
    fact *= static_cast<double>(j);
    if (kBernoulli[j] != 0.0) sum += (kBernoulli[j] / fact) * term;
  }
  return sum;
}

int Retraction::dim() const {
  switch (tag_) {
    case GroupTag::SO3: return 3;
    case GroupTag::SE3: return 6;
    case GroupTag::Rn: return n_;
  }
  return 0;
}

Mat Retraction::dtau_inv_matrix(const Vec& xi) const {
  const int d = dim();
  Mat M(d, d);
  Vec e = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    e(i) = 1.0;
    M.col(i) = dtau_inv(xi, e);
    e(i) = 0.0;
  }
  return M;
}

Vec Retraction::dtau_inv_star(const Vec& xi, const Vec& mu) const {
  return dtau_inv_matrix(xi).transpose() * mu;
}

GroupElement CayleyRetraction::tau(const Vec& xi) const { return cay(tag_, xi); }
Vec CayleyRetraction::tau_inv(const GroupElement& g) const { return cay_inv(g); }
Vec CayleyRetraction::dtau(const Vec& xi, const Vec& eta) const { return dcay(tag_, xi, eta); }
Vec CayleyRetraction::dtau_inv(const Vec& xi, const Vec& eta) const {
  return dcay_inv(tag_, xi, eta);
}

Mat CayleyRetraction::dtau_inv_matrix(const Vec& xi) const {
  if (tag_ == GroupTag::SO3) return dcay_inv_so3(xi);
  if (tag_ == GroupTag::Rn) return Mat::Identity(n_, n_);
  return Retraction::dtau_inv_matrix(xi);
}

GroupElement TruncatedExpRetraction::tau(const Vec& xi) const { return group_exp(tag_, xi); }
Vec TruncatedExpRetraction::tau_inv(const GroupElement& g) const { return group_log(g); }
Vec TruncatedExpRetraction::dtau(const Vec& xi, const Vec& eta) const {
  return dexp_truncated(tag_, xi, eta, order_);
}
Vec TruncatedExpRetraction::dtau_inv(const Vec& xi, const Vec& eta) const {
  return dexp_inv_truncated(tag_, xi, eta, order_);
}

std::shared_ptr<const Retraction> make_retraction(const std::string& name, GroupTag tag, int n) {
  if (name == "cayley") return std::make_shared<CayleyRetraction>(tag, n);
  if (name == "exp1") return std::make_shared<TruncatedExpRetraction>(tag, 1, n);
  if (name == "exp2") return std::make_shared<TruncatedExpRetraction>(tag, 2, n);
  if (name == "exp4") return std::make_shared<TruncatedExpRetraction>(tag, 4, n);
  throw std::invalid_argument("unknown retraction '" + name +
                              "' (expected cayley | exp1 | exp2 | exp4)");
}

}  // namespace lievar
