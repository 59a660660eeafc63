#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lievar/lie.hpp"
#include "lievar/studies.hpp"

using namespace lievar;

namespace {

std::mt19937 rng(12345);

}  // namespace

TEST_CASE("hat3 basics") {
  CHECK(hat3(Eigen::Vector3d::Zero()).isZero(0.0));

  Eigen::Matrix3d expected;
  expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((hat3(Eigen::Vector3d(1, 2, 3)) - expected).norm() == 0.0);

  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d x(u(rng), u(rng), u(rng));
    const Eigen::Vector3d y(u(rng), u(rng), u(rng));
    CHECK((hat3(x) * y - x.cross(y)).norm() <= 1e-14);
    CHECK((vee3(hat3(x)) - x).norm() == 0.0);
    CHECK((hat3(x) + hat3(x).transpose()).isZero(0.0));
  }
}

TEST_CASE("vee3 rejects non-antisymmetric input") {
  CHECK((vee3(Eigen::Matrix3d::Zero())).isZero(0.0));
  Eigen::Matrix3d X;
  X << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((vee3(X) - Eigen::Vector3d(1, 2, 3)).norm() == 0.0);
  X(0, 0) = 1e-3;
  CHECK_THROWS_AS(vee3(X), std::invalid_argument);
}

TEST_CASE("wedge_se3 block layout and inverse") {
  CHECK(wedge_se3(Vector6d::Zero()).isZero(0.0));

  Vector6d phi;
  phi << 1, 2, 3, 4, 5, 6;
  const Eigen::Matrix4d X = wedge_se3(phi);
  CHECK((X.topLeftCorner<3, 3>() - hat3(Eigen::Vector3d(1, 2, 3))).norm() == 0.0);
  CHECK((X.topRightCorner<3, 1>() - Eigen::Vector3d(4, 5, 6)).norm() == 0.0);
  CHECK(X.row(3).isZero(0.0));

  for (int i = 0; i < 100; ++i) {
    const Vec p = random_vec(rng, 6, 2.0);
    CHECK((vee_se3(wedge_se3(p)) - p).norm() == 0.0);
  }
}

TEST_CASE("ad on so(3) is the cross product") {
  Vec xi(3), eta(3);
  xi << 1, 0, 0;
  eta << 0, 1, 0;
  CHECK((ad(GroupTag::SO3, xi, eta) - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-15);
  for (int i = 0; i < 20; ++i) {
    const Vec x = random_vec(rng, 3, 2.0);
    CHECK(ad(GroupTag::SO3, x, x).norm() <= 1e-14);
  }
}

TEST_CASE("ad matches the matrix commutator of wedges") {
  for (GroupTag tag : {GroupTag::SO3, GroupTag::SE3}) {
    const int d = (tag == GroupTag::SO3) ? 3 : 6;
    for (int i = 0; i < 100; ++i) {
      const Vec x = random_vec(rng, d, 2.0);
      const Vec y = random_vec(rng, d, 2.0);
      const Mat commutator = wedge(tag, x) * wedge(tag, y) - wedge(tag, y) * wedge(tag, x);
      CHECK((wedge(tag, ad(tag, x, y)) - commutator).norm() <= 1e-12);
    }
  }
}

TEST_CASE("ad_star duality pairing") {
  Vec xi(3), mu(3);
  xi << 1, 0, 0;
  mu << 0, 1, 0;
  CHECK((ad_star(GroupTag::SO3, xi, mu) - Eigen::Vector3d(0, 0, -1)).norm() <= 1e-15);
  CHECK(ad_star(GroupTag::SO3, xi, Vec(Vec::Zero(3))).norm() == 0.0);

  for (GroupTag tag : {GroupTag::SO3, GroupTag::SE3}) {
    const int d = (tag == GroupTag::SO3) ? 3 : 6;
    for (int i = 0; i < 50; ++i) {
      const Vec x = random_vec(rng, d, 2.0);
      const Vec m = random_vec(rng, d, 2.0);
      for (int b = 0; b < d; ++b) {
        Vec e = Vec::Zero(d);
        e(b) = 1.0;
        CHECK(ad_star(tag, x, m).dot(e) == doctest::Approx(m.dot(ad(tag, x, e))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Ad on SO(3) rotates the coordinate vector") {
  const GroupElement I3 = GroupElement::identity(GroupTag::SO3);
  const Vec eta = random_vec(rng, 3, 2.0);
  CHECK((Ad(I3, eta) - eta).norm() == 0.0);

  // quarter turn about x maps e_y to e_z
  const GroupElement R = group_exp(GroupTag::SO3, Vec(Eigen::Vector3d(M_PI / 2, 0, 0)));
  const Vec omega = (Vec(3) << 0, 1, 0).finished();
  CHECK((Ad(R, omega) - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-12);

  for (int i = 0; i < 100; ++i) {
    const GroupElement g1 = random_rotation(rng);
    const GroupElement g2 = random_rotation(rng);
    const Vec e = random_vec(rng, 3, 2.0);
    CHECK((Ad(g1 * g2, e) - Ad(g1, Ad(g2, e))).norm() <= 1e-12);
  }
}

TEST_CASE("Ad homomorphism and sandwich form on SE(3)") {
  for (int i = 0; i < 100; ++i) {
    const GroupElement g1 = random_frame(rng);
    const GroupElement g2 = random_frame(rng);
    const Vec e = random_vec(rng, 6, 2.0);
    CHECK((Ad(g1 * g2, e) - Ad(g1, Ad(g2, e))).norm() <= 1e-12);

    const Mat sandwich = g1.matrix() * wedge(GroupTag::SE3, e) * g1.inverse().matrix();
    CHECK((wedge(GroupTag::SE3, Ad(g1, e)) - sandwich).norm() <= 1e-12);
  }
}

TEST_CASE("Ad_star is the transpose action") {
  const GroupElement I3 = GroupElement::identity(GroupTag::SO3);
  const Vec mu = random_vec(rng, 3, 2.0);
  CHECK((Ad_star(I3, mu) - mu).norm() == 0.0);

  for (int i = 0; i < 50; ++i) {
    const GroupElement R = random_rotation(rng);
    const Vec m = random_vec(rng, 3, 2.0);
    CHECK((Ad_star(R, m) - R.rotation().transpose() * Eigen::Vector3d(m)).norm() <= 1e-12);
    for (int b = 0; b < 3; ++b) {
      Vec e = Vec::Zero(3);
      e(b) = 1.0;
      CHECK(Ad_star(R, m).dot(e) == doctest::Approx(m.dot(Ad(R, e))).epsilon(1e-12));
    }
    CHECK((Ad_star(R.inverse(), Vec(Ad_star(R, m))) - m).norm() <= 1e-12);
  }
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = random_frame(rng);
    const Vec m = random_vec(rng, 6, 2.0);
    for (int b = 0; b < 6; ++b) {
      Vec e = Vec::Zero(6);
      e(b) = 1.0;
      CHECK(Ad_star(g, m).dot(e) == doctest::Approx(m.dot(Ad(g, e))).epsilon(1e-12));
    }
    CHECK((Ad_star(g.inverse(), Vec(Ad_star(g, m))) - m).norm() <= 1e-12);
  }
}

TEST_CASE("group operations") {
  const GroupElement g = random_rotation(rng);
  CHECK((g * GroupElement::identity(GroupTag::SO3)).approx(g, 0.0));

  // closed-form SE(3) inverse
  const GroupElement R = group_exp(GroupTag::SO3, Vec(Eigen::Vector3d(M_PI / 2, 0, 0)));
  const GroupElement Phi = GroupElement::se3(R.rotation(), Eigen::Vector3d(1, 0, 0));
  const GroupElement inv = Phi.inverse();
  CHECK((inv.rotation() - R.rotation().transpose()).norm() <= 1e-15);
  CHECK((inv.translation() - Eigen::Vector3d(-1, 0, 0)).norm() <= 1e-12);

  for (int i = 0; i < 100; ++i) {
    const GroupElement a = random_frame(rng);
    const GroupElement b = random_frame(rng);
    CHECK(((a * b).inverse().matrix() - (b.inverse() * a.inverse()).matrix()).norm() <= 1e-12);
    CHECK(((a.inverse() * a).matrix() - Eigen::Matrix4d::Identity()).norm() <= 1e-12);
  }
}

TEST_CASE("membership validation and projection") {
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(0, 1) = 1e-3;
  CHECK_THROWS_AS(GroupElement::so3(bad), std::invalid_argument);
  CHECK(so3_defect(polar_rotation(bad)) <= 1e-14);

  Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
  T(3, 0) = 1e-12;  // bottom row must be exact
  CHECK_THROWS_AS(GroupElement::se3(T), std::invalid_argument);
}

TEST_CASE("quadratic group invariant survives long products") {
  // SO(3) with P = I, and the 2x2 symplectic group with P = J.
  GroupElement g = GroupElement::identity(GroupTag::SO3);
  for (int i = 0; i < 10000; ++i) {
    g = g * random_rotation(rng, 0.5);
  }
  CHECK(quadratic_defect(g.matrix(), Mat(Mat::Identity(3, 3))) <= 1e-9);

  // The symplectic group is non-compact, so the walk uses small generators
  // to keep |Y| bounded.
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  Mat J(2, 2);
  J << 0, 1, -1, 0;
  Mat Y = Mat::Identity(2, 2);
  for (int i = 0; i < 2000; ++i) {
    // Hamiltonian (trace-free) generator satisfies J X + X^T J = 0.
    Mat X(2, 2);
    const double a = u(rng), b = u(rng), c = u(rng);
    X << a, b, c, -a;
    const Mat I2 = Mat::Identity(2, 2);
    Y = Y * Mat((I2 - 0.5 * X).lu().solve(Mat(I2 + 0.5 * X)));
  }
  CHECK(Y.allFinite());
  CHECK(quadratic_defect(Y, J) <= 1e-9);
}

TEST_CASE("group_exp and group_log round trip") {
  for (int i = 0; i < 100; ++i) {
    const Vec xi = random_vec(rng, 3, 1.0);
    CHECK((group_log(group_exp(GroupTag::SO3, xi)) - xi).norm() <= 1e-12);
    const Vec phi = random_vec(rng, 6, 1.0);
    CHECK((group_log(group_exp(GroupTag::SE3, phi)) - phi).norm() <= 1e-11);
  }
  const GroupElement flip =
      GroupElement::so3(Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix());
  CHECK_THROWS_AS(group_log(flip), std::domain_error);
}
