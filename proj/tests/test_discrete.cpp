#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lievar/discrete.hpp"
#include "lievar/studies.hpp"

using namespace lievar;

namespace {

std::mt19937 rng(424242);

GroupElement random_element(GroupTag tag, int n = 3) {
  switch (tag) {
    case GroupTag::SO3: return random_rotation(rng);
    case GroupTag::SE3: return random_frame(rng);
    case GroupTag::Rn: return GroupElement::rn(random_vec(rng, n, 1.0));
  }
  return {};
}

// Smooth non-invariant scalar on a group, with random coefficients.
GroupScalarFn random_group_scalar(GroupTag tag, int n = 3) {
  const int rows = (tag == GroupTag::SO3) ? 3 : (tag == GroupTag::SE3 ? 4 : n);
  Mat C = Mat::Random(rows, rows);
  if (tag == GroupTag::Rn) {
    const Vec c = random_vec(rng, n, 1.0);
    const Mat Q = random_spd(rng, n, 2.0);
    return [c, Q](const GroupElement& W) {
      const Vec q = W.matrix().col(0);
      return c.dot(q) + 0.5 * q.dot(Q * q);
    };
  }
  return [C](const GroupElement& W) {
    const Mat D = W.matrix() - Mat::Identity(W.matrix().rows(), W.matrix().cols());
    return (C * D).trace() + 0.5 * (D * D.transpose()).trace() +
           std::sin((C.col(0).head(2)).dot(D.col(0).head(2)));
  };
}

// Smooth scalar of several group arguments coupling neighboring slots.
GroupScalarKFn random_multislot_scalar(GroupTag tag, int slots, int n = 3) {
  std::vector<GroupScalarFn> singles;
  for (int i = 0; i < slots; ++i) singles.push_back(random_group_scalar(tag, n));
  std::vector<Mat> couple;
  const int rows = (tag == GroupTag::SO3) ? 3 : (tag == GroupTag::SE3 ? 4 : n);
  for (int i = 0; i + 1 < slots; ++i) couple.push_back(Mat::Random(rows, rows));
  return [singles, couple, tag, n](const std::vector<GroupElement>& W) {
    double s = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) s += singles[i](W[i]);
    for (std::size_t i = 0; i + 1 < W.size(); ++i) {
      if (tag == GroupTag::Rn) {
        s += W[i].matrix().col(0).dot(couple[i].leftCols(n) * W[i + 1].matrix().col(0));
      } else {
        s += (W[i].matrix() * couple[i] * W[i + 1].matrix().transpose()).trace();
      }
    }
    return s;
  };
}

// d/de of the windowed action under the constrained variation that moves
// W_{i-1} -> W_{i-1} exp(e eta) and W_i -> exp(-e eta) W_i; this is the
// variation coefficient of Sigma_i. `window` holds W_{i-k} .. W_{i+k-1}.
Vec variation_oracle(const GroupScalarKFn& ld, const std::vector<GroupElement>& window, int k) {
  const int d = window.front().algebra_dim();
  const GroupTag tag = window.front().tag();
  const double eps = 1e-6;
  Vec out(d);
  for (int b = 0; b < d; ++b) {
    Vec e = Vec::Zero(d);
    e(b) = 1.0;
    double plus = 0.0, minus = 0.0;
    for (double sgn : {1.0, -1.0}) {
      std::vector<GroupElement> W = window;
      W[k - 1] = W[k - 1] * group_exp(tag, Vec(sgn * eps * e));          // W_{i-1}
      W[k] = group_exp(tag, Vec(-sgn * eps * e)) * W[k];                 // W_i
      double s = 0.0;
      for (int a = 0; a + k <= 2 * k; ++a) {
        std::vector<GroupElement> args(W.begin() + a, W.begin() + a + k);
        s += ld(args);
      }
      (sgn > 0 ? plus : minus) = s;
    }
    out(b) = (plus - minus) / (2.0 * eps);
  }
  return out;
}

}  // namespace

TEST_CASE("action_sum") {
  const double h = 0.1;
  const Mat M = Mat::Identity(3, 3);
  const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Zero(3, 3), Vec::Zero(3), h);

  // uniform motion with unit step: each term is h * 0.5 |step/h|^2
  Trajectory traj;
  traj.tag = GroupTag::Rn;
  traj.h = h;
  for (int k = 0; k <= 5; ++k) {
    traj.points.push_back(GroupElement::rn(Vec(Eigen::Vector3d(1.0 * k, 0, 0))));
  }
  const double per_term = h * 0.5 * (1.0 / h) * (1.0 / h);
  CHECK(action_sum(Ld, traj) == doctest::Approx(5.0 * per_term).epsilon(1e-14));

  // single pair reduces to one evaluation
  Trajectory pair;
  pair.tag = GroupTag::Rn;
  pair.h = h;
  pair.points = {traj.points[0], traj.points[1]};
  CHECK(action_sum(Ld, pair) == doctest::Approx(Ld.eval(pair.points[0], pair.points[1])));

  // additivity over a split
  Trajectory tail;
  tail.tag = GroupTag::Rn;
  tail.h = h;
  tail.points.assign(traj.points.begin() + 2, traj.points.end());
  Trajectory head;
  head.tag = GroupTag::Rn;
  head.h = h;
  head.points.assign(traj.points.begin(), traj.points.begin() + 3);
  CHECK(action_sum(Ld, traj) ==
        doctest::Approx(action_sum(Ld, head) + action_sum(Ld, tail)).epsilon(1e-14));

  CHECK_THROWS_AS(action_sum(Ld, pair = Trajectory{}), std::invalid_argument);
}

TEST_CASE("del_residual Newton law on 100 random windows") {
  const double h = 0.1;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat M = random_spd(rng, 3);
    const Mat A = random_spd(rng, 3, 2.0);
    const Vec b = random_vec(rng, 3, 1.0);
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, A, b, h);
    Trajectory traj;
    traj.tag = GroupTag::Rn;
    traj.h = h;
    for (int i = 0; i < 3; ++i) traj.points.push_back(GroupElement::rn(random_vec(rng, 3, 1.0)));
    const Vec q0 = traj.points[0].matrix().col(0);
    const Vec q1 = traj.points[1].matrix().col(0);
    const Vec q2 = traj.points[2].matrix().col(0);
    // second-difference Newton law: residual = -h (M d2q/h^2 + grad V)
    const Vec newton = M * (q2 - 2.0 * q1 + q0) / (h * h) + (A * q1 + b);
    CHECK((del_residual(Ld, traj, 1) + h * newton).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("del_residual special values") {
  const double h = 0.1;
  const Mat M = Mat::Identity(3, 3);

  // free uniform motion is a discrete solution
  {
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Zero(3, 3), Vec::Zero(3), h);
    Trajectory traj;
    traj.tag = GroupTag::Rn;
    traj.h = h;
    for (int k = 0; k < 4; ++k) {
      traj.points.push_back(GroupElement::rn(Vec(Eigen::Vector3d(0.3 * k, -0.1 * k, 0))));
    }
    CHECK(del_residual(Ld, traj, 1).norm() <= 1e-14);
    CHECK(del_residual(Ld, traj, 2).norm() <= 1e-14);
    CHECK_THROWS_AS(del_residual(Ld, traj, 0), std::out_of_range);
    CHECK_THROWS_AS(del_residual(Ld, traj, 3), std::out_of_range);
  }

  // V(q) = 0.5 |q|^2 at the constant point (1,0,0): residual (-h, 0, 0)
  {
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Identity(3, 3), Vec::Zero(3), h);
    Trajectory traj;
    traj.tag = GroupTag::Rn;
    traj.h = h;
    for (int k = 0; k < 3; ++k) traj.points.push_back(GroupElement::rn(Vec(Eigen::Vector3d(1, 0, 0))));
    CHECK((del_residual(Ld, traj, 1) - Eigen::Vector3d(-0.1, 0, 0)).norm() <= 1e-15);
  }
}

TEST_CASE("del_residual equals the action-sum gradient (FD backend)") {
  const DiscreteLagrangian Ld = [] {
    DiscreteLagrangian L;
    L.tag = GroupTag::SO3;
    const GroupScalarFn f = random_group_scalar(GroupTag::SO3);
    const GroupScalarFn g = random_group_scalar(GroupTag::SO3);
    L.eval = [f, g](const GroupElement& a, const GroupElement& b) {
      return f(a) * 0.5 + g(b) + f(a) * g(b) * 0.1;
    };
    return L;
  }();
  for (int trial = 0; trial < 20; ++trial) {
    Trajectory traj;
    traj.tag = GroupTag::SO3;
    traj.h = 0.1;
    for (int i = 0; i < 3; ++i) traj.points.push_back(random_rotation(rng));
    const Vec res = del_residual(Ld, traj, 1);
    const GroupScalarFn action = [&](const GroupElement& mid) {
      return Ld.eval(traj.points[0], mid) + Ld.eval(mid, traj.points[2]);
    };
    const Vec oracle = left_pullback(action, traj.points[1]);
    CHECK((res - oracle).norm() <= 1e-6 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("discrete Legendre transforms") {
  const double h = 0.1;
  const Mat M = 2.0 * Mat::Identity(3, 3);
  const Vec step = (Vec(3) << 1, 0, 0).finished();

  // free particle: both momenta equal M (q1 - q0)/h
  {
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Zero(3, 3), Vec::Zero(3), h);
    const GroupElement q0 = GroupElement::rn(Vec(Vec::Zero(3)));
    const GroupElement q1 = GroupElement::rn(step);
    const auto [qm, pm] = discrete_legendre_minus(Ld, q0, q1);
    const auto [qp, pp] = discrete_legendre_plus(Ld, q0, q1);
    CHECK(qm.approx(q0, 0.0));
    CHECK(qp.approx(q1, 0.0));
    const Vec expected = M * step / h;
    CHECK((pm - expected).norm() <= 1e-12);
    CHECK((pp - expected).norm() <= 1e-12);
  }

  // with a potential the minus-momentum gains h grad V(q0)
  {
    const Mat A = random_spd(rng, 3, 2.0);
    const Vec b = random_vec(rng, 3, 1.0);
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, A, b, h);
    const GroupElement q0 = GroupElement::rn(random_vec(rng, 3, 1.0));
    const GroupElement q1 = GroupElement::rn(random_vec(rng, 3, 1.0));
    const Vec pm = discrete_legendre_minus(Ld, q0, q1).second;
    const Vec pp = discrete_legendre_plus(Ld, q0, q1).second;
    const Vec gradV = A * q0.matrix().col(0) + b;
    CHECK((pm - pp - h * gradV).norm() <= 1e-12);
  }

  // matching condition along a discrete solution restates the residual
  {
    const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Zero(3, 3), Vec::Zero(3), h);
    const auto qs = integrate_vector_space(M, Mat::Zero(3, 3), Vec::Zero(3), Vec::Zero(3), step,
                                           4, h);
    for (int k = 1; k + 1 < static_cast<int>(qs.size()); ++k) {
      const Vec plus =
          discrete_legendre_plus(Ld, GroupElement::rn(qs[k - 1]), GroupElement::rn(qs[k])).second;
      const Vec minus =
          discrete_legendre_minus(Ld, GroupElement::rn(qs[k]), GroupElement::rn(qs[k + 1])).second;
      CHECK((plus - minus).norm() <= 1e-12);
    }
  }
}

TEST_CASE("discrete momentum map") {
  const double h = 0.1;
  const Mat M = Mat::Identity(3, 3);
  const DiscreteLagrangian Ld = vector_space_lagrangian(M, Mat::Zero(3, 3), Vec::Zero(3), h);
  const GroupAction action = translation_action(3);

  const GroupElement q0 = GroupElement::rn(Vec(Vec::Zero(3)));
  const GroupElement q1 = GroupElement::rn(Vec(Eigen::Vector3d(1, 0, 0)));
  CHECK((discrete_momentum_map(Ld, action, q0, q1) - Eigen::Vector3d(10, 0, 0)).norm() <= 1e-9);
  CHECK(discrete_momentum_map(Ld, action, q0, q0).norm() <= 1e-12);

  // constancy along a 1000-step discrete solution
  const Vec v0 = random_vec(rng, 3, 1.0);
  const auto qs = integrate_vector_space(M, Mat::Zero(3, 3), Vec::Zero(3), Vec::Zero(3),
                                         Vec(h * v0), 1000, h);
  Vec J0;
  double drift = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec J = discrete_momentum_map(Ld, action, GroupElement::rn(qs[k]),
                                        GroupElement::rn(qs[k + 1]));
    if (k == 0) {
      J0 = J;
    } else {
      drift = std::max(drift, (J - J0).lpNorm<Eigen::Infinity>());
    }
  }
  CHECK(drift <= 1e-10);

  // generator invariant: matches the finite difference of the flow
  const GroupAction lma = left_multiplication_action(GroupTag::SO3);
  const GroupElement W = random_rotation(rng);
  const Vec xi = random_vec(rng, 3, 1.0);
  const double eps = 1e-6;
  const Mat fd_gen =
      (lma.flow(xi, eps, W).matrix() - lma.flow(xi, -eps, W).matrix()) / (2.0 * eps);
  CHECK((lma.generator(xi, W) - fd_gen).norm() <= 1e-6 * std::max(1.0, fd_gen.norm()));
}

TEST_CASE("dep1_residual") {
  // abelian specialization: ld(W) = 0.5 |W|^2 gives W_k - W_{k-1}
  const GroupScalarFn quad = [](const GroupElement& W) {
    return 0.5 * W.matrix().col(0).squaredNorm();
  };
  const Vec a = random_vec(rng, 4, 1.0);
  const Vec b = random_vec(rng, 4, 1.0);
  CHECK((dep1_residual(quad, GroupElement::rn(a), GroupElement::rn(b)) - (b - a)).norm() <= 1e-9);

  // rho(W) = Ad*_{W^-1} lambda(W)
  for (int i = 0; i < 20; ++i) {
    const GroupScalarFn f = random_group_scalar(GroupTag::SO3);
    const GroupElement W = random_rotation(rng);
    const Vec lambda = left_pullback(f, W);
    const Vec rho = right_pullback(f, W);
    CHECK((rho - Ad_star(W.inverse(), lambda)).norm() <= 1e-8 * std::max(1.0, lambda.norm()));
  }

  // equivalence with del_residual for the left-invariant lift (opposite
  // orientation: the del form collects the same terms with the other sign)
  for (int i = 0; i < 20; ++i) {
    const GroupScalarFn lt = random_group_scalar(GroupTag::SO3);
    DiscreteLagrangian Ld;
    Ld.tag = GroupTag::SO3;
    Ld.eval = [lt](const GroupElement& g0, const GroupElement& g1) {
      return lt(g0.inverse() * g1);
    };
    Trajectory traj;
    traj.tag = GroupTag::SO3;
    traj.h = 0.1;
    for (int j = 0; j < 3; ++j) traj.points.push_back(random_rotation(rng));
    const GroupElement W0 = traj.points[0].inverse() * traj.points[1];
    const GroupElement W1 = traj.points[1].inverse() * traj.points[2];
    const Vec dep1 = dep1_residual(lt, W0, W1);
    const Vec del = del_residual(Ld, traj, 1);
    CHECK((del + dep1).norm() <= 1e-9 * std::max(1.0, dep1.norm()));
  }
}

TEST_CASE("dep2_group_residual") {
  // abelian quadratic case: third difference annihilates affine sequences
  const GroupScalar2Fn quad = [](const GroupElement& W0, const GroupElement& W1) {
    return 0.5 * (W1.matrix().col(0) - W0.matrix().col(0)).squaredNorm();
  };
  const Vec base = random_vec(rng, 3, 1.0);
  const Vec slope = random_vec(rng, 3, 1.0);
  std::array<GroupElement, 4> affine = {
      GroupElement::rn(base), GroupElement::rn(Vec(base + slope)),
      GroupElement::rn(Vec(base + 2 * slope)), GroupElement::rn(Vec(base + 3 * slope))};
  CHECK(dep2_group_residual(quad, affine).norm() <= 1e-8);

  // symmetric minimum at a constant sequence
  const GroupScalar2Fn sym = [](const GroupElement& W0, const GroupElement& W1) {
    return (W0.matrix() - W1.matrix()).squaredNorm();
  };
  const GroupElement W = random_rotation(rng);
  std::array<GroupElement, 4> constant = {W, W, W, W};
  CHECK(dep2_group_residual(sym, constant).norm() <= 1e-8);

  // master variation oracle on SO(3) and SE(3)
  for (GroupTag tag : {GroupTag::SO3, GroupTag::SE3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const GroupScalarKFn ld = random_multislot_scalar(tag, 2);
      const GroupScalar2Fn ld2 = [ld](const GroupElement& a, const GroupElement& b) {
        return ld({a, b});
      };
      std::vector<GroupElement> window;
      for (int i = 0; i < 4; ++i) window.push_back(random_element(tag));
      const std::array<GroupElement, 4> arr = {window[0], window[1], window[2], window[3]};
      const Vec res = dep2_group_residual(ld2, arr);
      const Vec oracle = variation_oracle(ld, window, 2);
      CHECK((res - oracle).norm() <= 1e-6 * std::max(1.0, oracle.norm()));
    }
  }
}

TEST_CASE("del2_group_residual") {
  // g-independent lagrangian reduces exactly to dep2_group_residual
  {
    const GroupScalarKFn ld = random_multislot_scalar(GroupTag::SO3, 2);
    const GroupScalar3Fn L3 = [ld](const GroupElement&, const GroupElement& a,
                                   const GroupElement& b) { return ld({a, b}); };
    const GroupScalar2Fn L2 = [ld](const GroupElement& a, const GroupElement& b) {
      return ld({a, b});
    };
    std::vector<GroupElement> gs;
    for (int i = 0; i < 5; ++i) gs.push_back(random_rotation(rng));
    std::array<GroupElement, 3> g = {gs[0], gs[1], gs[2]};
    std::array<GroupElement, 4> W;
    for (int j = 0; j < 4; ++j) W[j] = gs[j].inverse() * gs[j + 1];
    CHECK((del2_group_residual(L3, g, W) - dep2_group_residual(L2, W)).norm() <= 1e-8);
  }

  // reconstruction consistency is enforced
  {
    const GroupScalar3Fn L3 = [](const GroupElement&, const GroupElement&, const GroupElement&) {
      return 0.0;
    };
    std::array<GroupElement, 3> g = {random_rotation(rng), random_rotation(rng),
                                     random_rotation(rng)};
    std::array<GroupElement, 4> W = {random_rotation(rng), random_rotation(rng),
                                     random_rotation(rng), random_rotation(rng)};
    CHECK_THROWS_AS(del2_group_residual(L3, g, W), std::invalid_argument);
  }

  // variation oracle: perturb g_k, rebuild W from the group trajectory
  for (int trial = 0; trial < 10; ++trial) {
    const GroupScalarKFn ld3 = random_multislot_scalar(GroupTag::SO3, 3);
    const GroupScalar3Fn L3 = [ld3](const GroupElement& a, const GroupElement& b,
                                    const GroupElement& c) { return ld3({a, b, c}); };
    std::vector<GroupElement> gs;
    for (int i = 0; i < 5; ++i) gs.push_back(random_rotation(rng));  // g_{k-2} .. g_{k+2}
    std::array<GroupElement, 3> g = {gs[0], gs[1], gs[2]};
    std::array<GroupElement, 4> W;
    for (int j = 0; j < 4; ++j) W[j] = gs[j].inverse() * gs[j + 1];
    const Vec res = del2_group_residual(L3, g, W);

    const double eps = 1e-6;
    Vec oracle(3);
    for (int b = 0; b < 3; ++b) {
      Vec e = Vec::Zero(3);
      e(b) = 1.0;
      double vals[2];
      int vi = 0;
      for (double sgn : {1.0, -1.0}) {
        std::vector<GroupElement> gp = gs;
        gp[2] = gp[2] * group_exp(GroupTag::SO3, Vec(sgn * eps * e));  // g_k
        double s = 0.0;
        for (int j = 0; j + 2 < 5; ++j) {
          s += L3(gp[j], gp[j].inverse() * gp[j + 1], gp[j + 1].inverse() * gp[j + 2]);
        }
        vals[vi++] = s;
      }
      oracle(b) = (vals[0] - vals[1]) / (2.0 * eps);
    }
    CHECK((res - oracle).norm() <= 1e-6 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("depk_residual") {
  // specializations at k = 1 and k = 2 (dep1_residual uses the opposite sign
  // convention, so k = 1 reproduces its negative)
  for (int trial = 0; trial < 5; ++trial) {
    const GroupScalarFn f1 = random_group_scalar(GroupTag::SO3);
    const GroupScalarKFn ld1 = [f1](const std::vector<GroupElement>& W) { return f1(W[0]); };
    const GroupElement A = random_rotation(rng);
    const GroupElement B = random_rotation(rng);
    const Vec k1 = depk_residual(ld1, {A, B}, 1);
    CHECK((k1 + dep1_residual(f1, A, B)).norm() <= 1e-12 * std::max(1.0, k1.norm()) + 1e-12);

    const GroupScalarKFn ld2 = random_multislot_scalar(GroupTag::SO3, 2);
    const GroupScalar2Fn ld2b = [ld2](const GroupElement& a, const GroupElement& b) {
      return ld2({a, b});
    };
    std::vector<GroupElement> W4;
    for (int i = 0; i < 4; ++i) W4.push_back(random_rotation(rng));
    const std::array<GroupElement, 4> arr = {W4[0], W4[1], W4[2], W4[3]};
    CHECK((depk_residual(ld2, W4, 2) - dep2_group_residual(ld2b, arr)).norm() <= 1e-12);
  }

  // polynomial annihilation on the abelian line: quadratic ld built from
  // k-th differences kills sequences of degree < k
  for (int k : {1, 2, 3}) {
    const GroupScalarKFn ld = [k](const std::vector<GroupElement>& W) {
      // telescoped k-th difference of the scalar samples
      double acc = 0.0;
      for (int j = 0; j <= k - 1; ++j) {
        double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
        double binom = 1.0;
        for (int t = 0; t < j; ++t) binom = binom * (k - 1 - t) / (t + 1);
        acc += sign * binom * W[j].matrix()(0, 0);
      }
      return 0.5 * acc * acc;
    };
    std::vector<GroupElement> window;
    for (int j = 0; j < 2 * k; ++j) {
      // degree k-1 polynomial in the index
      double v = 0.0;
      for (int p = 0; p < k; ++p) v += std::pow(j + 1.0, p) * (0.3 + 0.1 * p);
      window.push_back(GroupElement::rn(Vec(Vec::Constant(1, v))));
    }
    CHECK(depk_residual(ld, window, k).norm() <= 1e-7);
  }

  // master variation oracle at k = 3 on SO(3)
  for (int trial = 0; trial < 5; ++trial) {
    const int k = 3;
    const GroupScalarKFn ld = random_multislot_scalar(GroupTag::SO3, k);
    std::vector<GroupElement> window;
    for (int j = 0; j < 2 * k; ++j) window.push_back(random_rotation(rng));
    const Vec res = depk_residual(ld, window, k);
    const Vec oracle = variation_oracle(ld, window, k);
    CHECK((res - oracle).norm() <= 1e-6 * std::max(1.0, oracle.norm()));
  }

  CHECK_THROWS_AS(depk_residual([](const std::vector<GroupElement>&) { return 0.0; },
                                {random_rotation(rng)}, 1),
                  std::invalid_argument);
}

TEST_CASE("dep2_algebra_residual") {
  const auto retr = make_retraction("cayley", GroupTag::SO3);

  // constant body velocity with zero coupling is a discrete solution
  {
    const ReducedDiscreteLagrangian2 ld = rigid_discrete_lagrangian(Eigen::Vector3d::Zero(), 0.1);
    const Vec Om = random_vec(rng, 3, 1.0);
    const std::array<Vec, 4> window = {Om, Om, Om, Om};
    CHECK(dep2_algebra_residual(ld, *retr, 0.1, window).norm() <= 1e-14);
  }

  // constrained-variation oracle: the residual equals h times the derivative
  // of the discrete cost along the variation direction induced by eta_k
  for (const char* rname : {"cayley", "exp2"}) {
    for (GroupTag tag : {GroupTag::SO3, GroupTag::SE3}) {
      const int d = (tag == GroupTag::SO3) ? 3 : 6;
      const auto rr = make_retraction(rname, tag);
      for (int trial = 0; trial < 5; ++trial) {
        const double h = 0.08;
        const Mat Q = random_spd(rng, 2 * d, 2.5);
        const Vec c = random_vec(rng, 2 * d, 1.0);
        ReducedDiscreteLagrangian2 ld;
        ld.tag = tag;
        ld.eval = [Q, c, d](const Vec& a, const Vec& b) {
          Vec z(2 * d);
          z << a, b;
          return 0.5 * z.dot(Q * z) + c.dot(z) + 0.3 * std::sin(z(0)) * z(d);
        };
        std::vector<Vec> Om(5);
        for (auto& o : Om) o = random_vec(rng, d, 0.8);
        const std::array<Vec, 4> window = {Om[0], Om[1], Om[2], Om[3]};
        const Vec res = dep2_algebra_residual(ld, *rr, h, window);

        const double eps = 1e-6;
        Vec oracle(d);
        for (int b = 0; b < d; ++b) {
          Vec e = Vec::Zero(d);
          e(b) = 1.0;
          // variation direction from eta_k at base values (window index 2)
          const Vec w_km1 = rr->dtau_inv(Vec(h * Om[1]), Ad(rr->tau(Vec(h * Om[1])), e)) / h;
          const Vec w_k = -rr->dtau_inv(Vec(h * Om[2]), e) / h;
          double vals[2];
          int vi = 0;
          for (double sgn : {1.0, -1.0}) {
            std::vector<Vec> P = Om;
            P[1] += sgn * eps * w_km1;
            P[2] += sgn * eps * w_k;
            double s = 0.0;
            for (int j = 0; j + 1 < 5; ++j) s += ld.eval(P[j], P[j + 1]);
            vals[vi++] = s;
          }
          oracle(b) = h * (vals[0] - vals[1]) / (2.0 * eps);
        }
        CHECK((res - oracle).norm() <= 1e-6 * std::max(1.0, oracle.norm()));
      }
    }
  }
}

TEST_CASE("dep2_algebra_residual decays on sampled stationary curves") {
  const Eigen::Vector3d rho(1.0, -1.0, 0.5);
  const auto retr = make_retraction("cayley", GroupTag::SO3);
  std::vector<double> hs = {0.1, 0.05, 0.025, 0.0125};
  std::vector<double> norms;
  for (double h : hs) {
    const auto samples =
        ep2_rigid_reference(rho, Eigen::Vector3d(0.4, 0.3, -0.2), Eigen::Vector3d(0.1, -0.05, 0.2),
                            Eigen::Vector3d(0.05, 0.1, -0.1), 1.6, h, 0.0125 / 16.0);
    const ReducedDiscreteLagrangian2 ld = rigid_discrete_lagrangian(rho, h);
    double worst = 0.0;
    for (std::size_t k = 2; k + 1 < samples.size(); ++k) {
      const std::array<Vec, 4> window = {Vec(samples[k - 2]), Vec(samples[k - 1]), Vec(samples[k]),
                                         Vec(samples[k + 1])};
      worst =
          std::max(worst, dep2_algebra_residual(ld, *retr, h, window).lpNorm<Eigen::Infinity>());
    }
    norms.push_back(worst);
  }
  const ConvergenceReport rep = convergence_order(hs, norms);
  CHECK(rep.slope >= 1.0);
}

TEST_CASE("vector space integrator") {
  // uniform motion
  const Mat M = Mat::Identity(3, 3);
  auto qs = integrate_vector_space(M, Mat::Zero(3, 3), Vec::Zero(3), Vec::Zero(3),
                                   Vec(Eigen::Vector3d(0.1, 0, 0)), 50, 0.1);
  for (int k = 0; k <= 50; ++k) {
    CHECK((qs[k] - Eigen::Vector3d(0.1 * k, 0, 0)).norm() <= 1e-12);
  }

  // zero initial data stays zero
  qs = integrate_vector_space(M, Mat::Identity(3, 3), Vec::Zero(3), Vec::Zero(3), Vec::Zero(3),
                              20, 0.1);
  for (const auto& q : qs) CHECK(q.norm() == 0.0);

  // harmonic oscillator: the energy band stays put over 10^4 steps (bounded
  // oscillation, no secular drift beyond 1% of the mean level)
  const double h = 0.05;
  qs = integrate_vector_space(M, Mat::Identity(3, 3), Vec::Zero(3),
                              Vec(Eigen::Vector3d(1, 0, 0)), Vec(Eigen::Vector3d(1, 0, 0)), 10000,
                              h);
  const auto energy_at = [&](std::size_t k) {
    const Vec v = (qs[k + 1] - qs[k - 1]) / (2.0 * h);
    return 0.5 * v.squaredNorm() + 0.5 * qs[k].squaredNorm();
  };
  double head = 0.0, tail = 0.0, mean = 0.0;
  const int window = 200;
  for (int k = 1; k <= window; ++k) head += energy_at(k) / window;
  for (std::size_t k = qs.size() - 1 - window; k + 1 < qs.size(); ++k) {
    tail += energy_at(k) / window;
  }
  for (std::size_t k = 1; k + 1 < qs.size(); ++k) mean += energy_at(k) / (qs.size() - 2);
  CHECK(std::abs(tail - head) <= 0.01 * mean);

  CHECK_THROWS_AS(integrate_vector_space(Mat::Zero(3, 3), Mat::Zero(3, 3), Vec::Zero(3),
                                         Vec::Zero(3), Vec::Zero(3), 5, 0.1),
                  std::invalid_argument);
}

TEST_CASE("vector space lagrangian analytic gradients agree with finite differences") {
  const Mat M = random_spd(rng, 3);
  const Mat A = random_spd(rng, 3, 2.0);
  const Vec b = random_vec(rng, 3, 1.0);
  const DiscreteLagrangian Ld = vector_space_lagrangian(M, A, b, 0.1);
  for (int i = 0; i < 20; ++i) {
    const GroupElement q0 = GroupElement::rn(random_vec(rng, 3, 1.0));
    const GroupElement q1 = GroupElement::rn(random_vec(rng, 3, 1.0));
    const Vec d1 = Ld.D1(q0, q1);
    const Vec d2 = Ld.D2(q0, q1);
    const Vec d1_fd = left_pullback([&](const GroupElement& g) { return Ld.eval(g, q1); }, q0);
    const Vec d2_fd = left_pullback([&](const GroupElement& g) { return Ld.eval(q0, g); }, q1);
    CHECK((d1 - d1_fd).norm() <= 1e-6 * std::max(1.0, d1_fd.norm()));
    CHECK((d2 - d2_fd).norm() <= 1e-6 * std::max(1.0, d2_fd.norm()));
  }
}

TEST_CASE("reconstruction defect tracking") {
  const auto retr = make_retraction("cayley", GroupTag::SO3);
  std::vector<Vec> Om;
  for (int k = 0; k < 20; ++k) Om.push_back(random_vec(rng, 3, 1.0));
  const Trajectory traj = reconstruct(GroupElement::identity(GroupTag::SO3), Om, *retr, 0.05);
  CHECK(traj.reconstruction_defect(*retr) <= 1e-12);
}
