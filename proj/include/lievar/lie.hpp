#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

// Exact matrix Lie group / Lie algebra kernels for SO(3), SE(3) and the
// abelian group R^n, with adjoint and coadjoint actions under the Euclidean
// pairing. Algebra elements and covectors are plain coordinate vectors in a
// fixed basis; se(3) coordinates are ordered (u, v) = (rotational,
// translational). All starred operators are coordinate-matrix transposes.

namespace lievar {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

enum class GroupTag { SO3, SE3, Rn };

std::string to_string(GroupTag tag);

/// Frobenius defect of the orthogonality condition R^T R = I.
double so3_defect(const Eigen::Matrix3d& R);

/// Membership defect of a 4x4 matrix against SE(3): rotation-block
/// orthogonality plus deviation of the bottom row from (0,0,0,1).
double se3_defect(const Eigen::Matrix4d& T);

/// ||Y^T P Y - P||_F for a general quadratic group with defining matrix P.
double quadratic_defect(const Mat& Y, const Mat& P);

/// Closest rotation to A in the Frobenius sense (polar factor, det +1).
/// Exposed for explicit re-orthonormalization; never applied implicitly.
Eigen::Matrix3d polar_rotation(const Eigen::Matrix3d& A);

/// Tagged group element: SO(3) 3x3, SE(3) 4x4, or an R^n point stored n x 1.
/// Factories validate membership (tolerance 1e-9) and throw on violation.
class GroupElement {
 public:
  GroupElement() = default;

  static GroupElement so3(const Eigen::Matrix3d& R);
  static GroupElement se3(const Eigen::Matrix4d& T);
  static GroupElement se3(const Eigen::Matrix3d& R, const Eigen::Vector3d& r);
  static GroupElement rn(const Vec& q);
  static GroupElement identity(GroupTag tag, int n = 3);

  GroupTag tag() const { return tag_; }
  const Mat& matrix() const { return m_; }
  int algebra_dim() const;

  /// Rotation / translation accessors (SO3 and SE3 only).
  Eigen::Matrix3d rotation() const;
  Eigen::Vector3d translation() const;

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;

  bool approx(const GroupElement& o, double tol = 1e-12) const;

  static constexpr double kMembershipTol = 1e-9;

 private:
  GroupTag tag_ = GroupTag::SO3;
  Mat m_ = Eigen::Matrix3d::Identity();
};

/// Membership defect of g against its own group (0 for R^n).
double group_defect(const GroupElement& g);

// Hat / wedge isomorphisms and their inverses. vee3 / vee_se3 reject inputs
// whose symmetric part exceeds tol.
Eigen::Matrix3d hat3(const Eigen::Vector3d& x);
Eigen::Vector3d vee3(const Eigen::Matrix3d& X, double tol = 1e-9);
Eigen::Matrix4d wedge_se3(const Vector6d& phi);
Vector6d vee_se3(const Eigen::Matrix4d& X, double tol = 1e-9);

/// Matrix representative of an algebra vector (R^n: the n x 1 vector itself).
Mat wedge(GroupTag tag, const Vec& xi);
Vec vee(GroupTag tag, const Mat& X, double tol = 1e-9);

/// Coordinate matrix of ad_xi = [xi, .].
Mat ad_matrix(GroupTag tag, const Vec& xi);
Vec ad(GroupTag tag, const Vec& xi, const Vec& eta);
/// <ad_star(xi, mu), eta> = <mu, ad(xi, eta)>.
Vec ad_star(GroupTag tag, const Vec& xi, const Vec& mu);

/// Coordinate matrix of Ad_g = g (.)^wedge g^-1.
Mat adjoint_matrix(const GroupElement& g);
Vec Ad(const GroupElement& g, const Vec& eta);
/// <Ad_star(g, mu), eta> = <mu, Ad(g, eta)>.
Vec Ad_star(const GroupElement& g, const Vec& mu);

/// Exact exponential g = exp(xi^wedge) (Rodrigues on SO(3), closed block
/// form on SE(3), identity chart on R^n).
GroupElement group_exp(GroupTag tag, const Vec& xi);
/// Exact logarithm; throws std::domain_error at the angle-pi singularity.
Vec group_log(const GroupElement& g);

namespace detail {
void check_dim(GroupTag tag, const Vec& x, const char* what);
}  // namespace detail

}  // namespace lievar
