#pragma once

#include <random>
#include <vector>

#include "lievar/discrete.hpp"
#include "lievar/studies.hpp"

// Shared test fixtures: random smooth scalars on groups and the
// constrained-variation finite-difference oracle used to validate every
// residual assembler.

namespace lievar::testsupport {

inline GroupElement random_element(std::mt19937& rng, GroupTag tag, int n = 3) {
  switch (tag) {
    case GroupTag::SO3: return random_rotation(rng);
    case GroupTag::SE3: return random_frame(rng);
    case GroupTag::Rn: return GroupElement::rn(random_vec(rng, n, 1.0));
  }
  return {};
}

// Smooth non-invariant scalar on a group, with random coefficients.
inline GroupScalarFn random_group_scalar(std::mt19937& rng, GroupTag tag, int n = 3) {
  if (tag == GroupTag::Rn) {
    const Vec c = random_vec(rng, n, 1.0);
    const Mat Q = random_spd(rng, n, 2.0);
    return [c, Q](const GroupElement& W) {
      const Vec q = W.matrix().col(0);
      return c.dot(q) + 0.5 * q.dot(Q * q);
    };
  }
  const int rows = (tag == GroupTag::SO3) ? 3 : 4;
  Mat C(rows, rows);
  for (int r = 0; r < rows; ++r) C.row(r) = random_vec(rng, rows, 1.0).transpose();
  return [C](const GroupElement& W) {
    const Mat D = W.matrix() - Mat::Identity(W.matrix().rows(), W.matrix().cols());
    return (C * D).trace() + 0.5 * (D * D.transpose()).trace() +
           std::sin((C.col(0).head(2)).dot(D.col(0).head(2)));
  };
}

// Smooth scalar of several group arguments coupling neighboring slots.
inline GroupScalarKFn random_multislot_scalar(std::mt19937& rng, GroupTag tag, int slots,
                                              int n = 3) {
  std::vector<GroupScalarFn> singles;
  for (int i = 0; i < slots; ++i) singles.push_back(random_group_scalar(rng, tag, n));
  const int rows = (tag == GroupTag::SO3) ? 3 : (tag == GroupTag::SE3 ? 4 : n);
  std::vector<Mat> couple;
  for (int i = 0; i + 1 < slots; ++i) {
    Mat C(rows, rows);
    for (int r = 0; r < rows; ++r) C.row(r) = random_vec(rng, rows, 1.0).transpose();
    couple.push_back(C);
  }
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
inline Vec variation_oracle(const GroupScalarKFn& ld, const std::vector<GroupElement>& window,
                            int k) {
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
      W[k - 1] = W[k - 1] * group_exp(tag, Vec(sgn * eps * e));  // W_{i-1}
      W[k] = group_exp(tag, Vec(-sgn * eps * e)) * W[k];         // W_i
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

// h times the derivative of the pairwise discrete cost along the variation
// direction induced by eta_k = e_b at window sample `k`; the expected value
// of the second-order algebra residual blocks.
inline Vec algebra_variation_oracle(const ReducedDiscreteLagrangian2& ld, const Retraction& retr,
                                    double h, const std::vector<Vec>& samples, int k) {
  const int d = retr.dim();
  const double eps = 1e-6;
  Vec out(d);
  for (int b = 0; b < d; ++b) {
    Vec e = Vec::Zero(d);
    e(b) = 1.0;
    const Vec w_km1 =
        retr.dtau_inv(Vec(h * samples[k - 1]), Ad(retr.tau(Vec(h * samples[k - 1])), e)) / h;
    const Vec w_k = -retr.dtau_inv(Vec(h * samples[k]), e) / h;
    double vals[2];
    int vi = 0;
    for (double sgn : {1.0, -1.0}) {
      std::vector<Vec> P = samples;
      P[k - 1] += sgn * eps * w_km1;
      P[k] += sgn * eps * w_k;
      vals[vi++] = discrete_cost(ld, P);
    }
    out(b) = h * (vals[0] - vals[1]) / (2.0 * eps);
  }
  return out;
}

}  // namespace lievar::testsupport
