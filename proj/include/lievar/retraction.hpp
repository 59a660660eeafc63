#pragma once

#include <memory>
#include <string>

#include "lievar/lie.hpp"

// Retraction maps tau: g -> G with right-trivialized tangents dtau_xi, their
// inverses and duals, and inverse retractions. Shipped families: the Cayley
// map (exact on SO(3), SE(3) and R^n) and the exponential with
// series-truncated tangents at orders 1, 2 and 4.

namespace lievar {

// Closed forms on so(3).
Eigen::Matrix3d cay_so3(const Eigen::Vector3d& omega);
Eigen::Matrix3d dcay_so3(const Eigen::Vector3d& omega);
Eigen::Matrix3d dcay_inv_so3(const Eigen::Vector3d& omega);

/// cay(X) = (I - X/2)^-1 (I + X/2) for a square matrix X.
/// Throws std::domain_error when I - X/2 is singular.
Mat cay_matrix(const Mat& X);

/// Cayley map in algebra coordinates; SE(3) uses the exact block form
/// [[cay_so3(u), (I - hat(u)/2)^-1 v], [0, 1]].
GroupElement cay(GroupTag tag, const Vec& xi);

/// Inverse Cayley map xi = 2 (I + g)^-1 (g - I) in coordinates.
/// Throws std::domain_error at the angle-pi singularity (trace R = -1).
Vec cay_inv(const GroupElement& g);

/// Right-trivialized tangent of the Cayley map and its inverse, via the
/// sandwich forms (I -+ xi^/2)^-1 eta^ (I +- xi^/2)^-1 resp. the reverse.
Vec dcay(GroupTag tag, const Vec& xi, const Vec& eta);
Vec dcay_inv(GroupTag tag, const Vec& xi, const Vec& eta);

/// Truncated series sum_{j<=p} ad_xi^j eta / (j+1)!  (right-trivialized
/// tangent of the exponential) and its Bernoulli-coefficient inverse
/// sum_{j<=p} B_j/j! ad_xi^j eta.
Vec dexp_truncated(GroupTag tag, const Vec& xi, const Vec& eta, int order);
Vec dexp_inv_truncated(GroupTag tag, const Vec& xi, const Vec& eta, int order);

class Retraction {
 public:
  Retraction(GroupTag tag, int n) : tag_(tag), n_(n) {}
  virtual ~Retraction() = default;

  GroupTag tag() const { return tag_; }
  int dim() const;
  virtual std::string name() const = 0;

  virtual GroupElement tau(const Vec& xi) const = 0;
  virtual Vec tau_inv(const GroupElement& g) const = 0;
  virtual Vec dtau(const Vec& xi, const Vec& eta) const = 0;
  virtual Vec dtau_inv(const Vec& xi, const Vec& eta) const = 0;

  /// Coordinate matrix of dtau_inv(xi, .); default assembles it by columns.
  virtual Mat dtau_inv_matrix(const Vec& xi) const;

  /// <dtau_inv_star(xi, mu), eta> = <mu, dtau_inv(xi, eta)>.
  Vec dtau_inv_star(const Vec& xi, const Vec& mu) const;

 protected:
  GroupTag tag_;
  int n_;
};

class CayleyRetraction final : public Retraction {
 public:
  explicit CayleyRetraction(GroupTag tag, int n = 3) : Retraction(tag, n) {}
  std::string name() const override { return "cayley"; }
  GroupElement tau(const Vec& xi) const override;
  Vec tau_inv(const GroupElement& g) const override;
  Vec dtau(const Vec& xi, const Vec& eta) const override;
  Vec dtau_inv(const Vec& xi, const Vec& eta) const override;
  Mat dtau_inv_matrix(const Vec& xi) const override;
};

/// Exponential retraction: tau is the exact exponential (so the reconstructed
/// elements stay on the group); dtau and dtau_inv are the series truncated at
/// `order`, so the tangent identities hold to the truncation order only.
class TruncatedExpRetraction final : public Retraction {
 public:
  TruncatedExpRetraction(GroupTag tag, int order, int n = 3)
      : Retraction(tag, n), order_(order) {}
  std::string name() const override { return "exp" + std::to_string(order_); }
  int order() const { return order_; }
  GroupElement tau(const Vec& xi) const override;
  Vec tau_inv(const GroupElement& g) const override;
  Vec dtau(const Vec& xi, const Vec& eta) const override;
  Vec dtau_inv(const Vec& xi, const Vec& eta) const override;

 private:
  int order_;
};

/// Factory keyed by the external name tokens "cayley" | "exp1" | "exp2" |
/// "exp4". Throws std::invalid_argument for unknown names.
std::shared_ptr<const Retraction> make_retraction(const std::string& name, GroupTag tag,
                                                  int n = 3);

}  // namespace lievar
