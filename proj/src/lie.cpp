#include "lievar/lie.hpp"

#include <algorithm>
#include <cmath>

namespace lievar {

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::SO3: return "SO3";
    case GroupTag::SE3: return "SE3";
    case GroupTag::Rn: return "Rn";
  }
  return "?";
}

double so3_defect(const Eigen::Matrix3d& R) {
  return (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
}

double se3_defect(const Eigen::Matrix4d& T) {
  const Eigen::Matrix3d R = T.topLeftCorner<3, 3>();
  Eigen::RowVector4d bottom = T.row(3);
  bottom(3) -= 1.0;
  return so3_defect(R) + bottom.norm();
}

double quadratic_defect(const Mat& Y, const Mat& P) {
  return (Y.transpose() * P * Y - P).norm();
}

Eigen::Matrix3d polar_rotation(const Eigen::Matrix3d& A) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    R = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return R;
}

GroupElement GroupElement::so3(const Eigen::Matrix3d& R) {
  if (so3_defect(R) > kMembershipTol || R.determinant() <= 0.0) {
    throw std::invalid_argument("GroupElement::so3: matrix is not a rotation (defect " +
                                std::to_string(so3_defect(R)) + ")");
  }
  GroupElement g;
  g.tag_ = GroupTag::SO3;
  g.m_ = R;
  return g;
}

GroupElement GroupElement::se3(const Eigen::Matrix4d& T) {
  if (!(T.row(3) == Eigen::RowVector4d(0, 0, 0, 1))) {
    throw std::invalid_argument("GroupElement::se3: bottom row must be exactly (0,0,0,1)");
  }
  const Eigen::Matrix3d R = T.topLeftCorner<3, 3>();
  if (so3_defect(R) > kMembershipTol || R.determinant() <= 0.0) {
    throw std::invalid_argument("GroupElement::se3: rotation block is not a rotation");
  }
  GroupElement g;
  g.tag_ = GroupTag::SE3;
  g.m_ = T;
  return g;
}

GroupElement GroupElement::se3(const Eigen::Matrix3d& R, const Eigen::Vector3d& r) {
  Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
  T.topLeftCorner<3, 3>() = R;
  T.topRightCorner<3, 1>() = r;
  return se3(T);
}

GroupElement GroupElement::rn(const Vec& q) {
  if (!q.allFinite()) throw std::invalid_argument("GroupElement::rn: non-finite entries");
  GroupElement g;
  g.tag_ = GroupTag::Rn;
  g.m_ = q;
  return g;
}

GroupElement GroupElement::identity(GroupTag tag, int n) {
  GroupElement g;
  g.tag_ = tag;
  switch (tag) {
    case GroupTag::SO3: g.m_ = Eigen::Matrix3d::Identity(); break;
    case GroupTag::SE3: g.m_ = Eigen::Matrix4d::Identity(); break;
    case GroupTag::Rn: g.m_ = Mat::Zero(n, 1); break;
  }
  return g;
}

int GroupElement::algebra_dim() const {
  switch (tag_) {
    case GroupTag::SO3: return 3;
    case GroupTag::SE3: return 6;
    case GroupTag::Rn: return static_cast<int>(m_.rows());
  }
  return 0;
}

Eigen::Matrix3d GroupElement::rotation() const {
  if (tag_ == GroupTag::Rn) throw std::logic_error("rotation(): R^n element");
  return m_.topLeftCorner<3, 3>();
}

Eigen::Vector3d GroupElement::translation() const {
  if (tag_ != GroupTag::SE3) throw std::logic_error("translation(): not SE(3)");
  return m_.topRightCorner<3, 1>();
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (tag_ != o.tag_ || m_.rows() != o.m_.rows()) {
    throw std::invalid_argument("GroupElement::operator*: tag mismatch");
  }
  GroupElement g;
  g.tag_ = tag_;
  g.m_ = (tag_ == GroupTag::Rn) ? Mat(m_ + o.m_) : Mat(m_ * o.m_);
  return g;
}

GroupElement GroupElement::inverse() const {
  GroupElement g;
  g.tag_ = tag_;
  switch (tag_) {
    case GroupTag::SO3:
      g.m_ = m_.transpose();
      break;
    case GroupTag::SE3: {
      // Closed block form [[R^T, -R^T r], [0, 1]].
      const Eigen::Matrix3d Rt = m_.topLeftCorner<3, 3>().transpose();
      Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
      T.topLeftCorner<3, 3>() = Rt;
      T.topRightCorner<3, 1>() = -Rt * m_.topRightCorner<3, 1>();
      g.m_ = T;
      break;
    }
    case GroupTag::Rn:
      g.m_ = -m_;
      break;
  }
  return g;
}

bool GroupElement::approx(const GroupElement& o, double tol) const {
  return tag_ == o.tag_ && m_.rows() == o.m_.rows() && (m_ - o.m_).norm() <= tol;
}

double group_defect(const GroupElement& g) {
  switch (g.tag()) {
    case GroupTag::SO3: return so3_defect(g.matrix());
    case GroupTag::SE3: return se3_defect(g.matrix());
    case GroupTag::Rn: return 0.0;
  }
  return 0.0;
}

Eigen::Matrix3d hat3(const Eigen::Vector3d& x) {
  Eigen::Matrix3d X;
  X << 0, -x(2), x(1),
       x(2), 0, -x(0),
      -x(1), x(0), 0;
  return X;
}

Eigen::Vector3d vee3(const Eigen::Matrix3d& X, double tol) {
  if ((X + X.transpose()).norm() > tol) {
    throw std::invalid_argument("vee3: matrix is not antisymmetric within tolerance");
  }
  return Eigen::Vector3d(X(2, 1), X(0, 2), X(1, 0));
}

Eigen::Matrix4d wedge_se3(const Vector6d& phi) {
  Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
  X.topLeftCorner<3, 3>() = hat3(phi.head<3>());
  X.topRightCorner<3, 1>() = phi.tail<3>();
  return X;
}

Vector6d vee_se3(const Eigen::Matrix4d& X, double tol) {
  if (X.row(3).norm() > tol) {
    throw std::invalid_argument("vee_se3: bottom row must vanish");
  }
  Vector6d phi;
  phi.head<3>() = vee3(X.topLeftCorner<3, 3>(), tol);
  phi.tail<3>() = X.topRightCorner<3, 1>();
  return phi;
}

namespace detail {
void check_dim(GroupTag tag, const Vec& x, const char* what) {
  if ((tag == GroupTag::SO3 && x.size() != 3) || (tag == GroupTag::SE3 && x.size() != 6)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch for " + to_string(tag));
  }
  if (!x.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}
}  // namespace detail

Mat wedge(GroupTag tag, const Vec& xi) {
  detail::check_dim(tag, xi, "wedge");
  switch (tag) {
    case GroupTag::SO3: return hat3(xi);
    case GroupTag::SE3: return wedge_se3(xi);
    case GroupTag::Rn: return xi;
  }
  return {};
}

Vec vee(GroupTag tag, const Mat& X, double tol) {
  switch (tag) {
    case GroupTag::SO3: return vee3(X, tol);
    case GroupTag::SE3: return vee_se3(X, tol);
    case GroupTag::Rn: return X.col(0);
  }
  return {};
}

Mat ad_matrix(GroupTag tag, const Vec& xi) {
  detail::check_dim(tag, xi, "ad_matrix");
  switch (tag) {
    case GroupTag::SO3:
      return hat3(xi);
    case GroupTag::SE3: {
      Matrix6d A = Matrix6d::Zero();
      const Eigen::Matrix3d U = hat3(xi.head<3>());
      A.topLeftCorner<3, 3>() = U;
      A.bottomLeftCorner<3, 3>() = hat3(xi.tail<3>());
      A.bottomRightCorner<3, 3>() = U;
      return A;
    }
    case GroupTag::Rn:
      return Mat::Zero(xi.size(), xi.size());
  }
  return {};
}

Vec ad(GroupTag tag, const Vec& xi, const Vec& eta) {
  if (xi.size() != eta.size()) throw std::invalid_argument("ad: dimension mismatch");
  return ad_matrix(tag, xi) * eta;
}

Vec ad_star(GroupTag tag, const Vec& xi, const Vec& mu) {
  if (xi.size() != mu.size()) throw std::invalid_argument("ad_star: dimension mismatch");
  return ad_matrix(tag, xi).transpose() * mu;
}

Mat adjoint_matrix(const GroupElement& g) {
  switch (g.tag()) {
    case GroupTag::SO3:
      return g.matrix();
    case GroupTag::SE3: {
      Matrix6d A = Matrix6d::Zero();
      const Eigen::Matrix3d R = g.rotation();
      A.topLeftCorner<3, 3>() = R;
      A.bottomLeftCorner<3, 3>() = hat3(g.translation()) * R;
      A.bottomRightCorner<3, 3>() = R;
      return A;
    }
    case GroupTag::Rn:
      return Mat::Identity(g.algebra_dim(), g.algebra_dim());
  }
  return {};
}

Vec Ad(const GroupElement& g, const Vec& eta) {
  if (eta.size() != g.algebra_dim()) throw std::invalid_argument("Ad: dimension mismatch");
  return adjoint_matrix(g) * eta;
}

Vec Ad_star(const GroupElement& g, const Vec& mu) {
  if (mu.size() != g.algebra_dim()) throw std::invalid_argument("Ad_star: dimension mismatch");
  return adjoint_matrix(g).transpose() * mu;
}

namespace {

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w) {
  const double th = w.norm();
  const Eigen::Matrix3d W = hat3(w);
  if (th < 1e-12) {
    return Eigen::Matrix3d::Identity() + W + 0.5 * W * W;
  }
  const double a = std::sin(th) / th;
  const double b = (1.0 - std::cos(th)) / (th * th);
  return Eigen::Matrix3d::Identity() + a * W + b * W * W;
}

// phi1(W) = sum_k W^k/(k+1)!, the translation factor of the 4x4 exponential.
Eigen::Matrix3d so3_phi1(const Eigen::Vector3d& w) {
  const double th = w.norm();
  const Eigen::Matrix3d W = hat3(w);
  if (th < 1e-8) {
    return Eigen::Matrix3d::Identity() + 0.5 * W + W * W / 6.0;
  }
  const double b = (1.0 - std::cos(th)) / (th * th);
  const double c = (th - std::sin(th)) / (th * th * th);
  return Eigen::Matrix3d::Identity() + b * W + c * W * W;
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& R) {
  const double c = std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
  const double th = std::acos(c);
  if (th < 1e-12) {
    return vee3(0.5 * (R - R.transpose()), 1e-6);
  }
  if (th > M_PI - 1e-9) {
    throw std::domain_error("group_log: rotation angle at the pi singularity");
  }
  return (th / (2.0 * std::sin(th))) * Eigen::Vector3d(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0),
                                                       R(1, 0) - R(0, 1));
}

}  // namespace

GroupElement group_exp(GroupTag tag, const Vec& xi) {
  detail::check_dim(tag, xi, "group_exp");
  switch (tag) {
    case GroupTag::SO3:
      return GroupElement::so3(rodrigues(xi.head<3>()));
    case GroupTag::SE3: {
      const Eigen::Vector3d u = xi.head<3>();
      const Eigen::Vector3d v = xi.tail<3>();
      return GroupElement::se3(rodrigues(u), so3_phi1(u) * v);
    }
    case GroupTag::Rn:
      return GroupElement::rn(xi);
  }
  return {};
}

Vec group_log(const GroupElement& g) {
  switch (g.tag()) {
    case GroupTag::SO3:
      return so3_log(g.rotation());
    case GroupTag::SE3: {
      const Eigen::Vector3d u = so3_log(g.rotation());
      Vector6d xi;
      xi.head<3>() = u;
      xi.tail<3>() = so3_phi1(u).lu().solve(g.translation());
      return xi;
    }
    case GroupTag::Rn:
      return g.matrix().col(0);
  }
  return {};
}

}  // namespace lievar
