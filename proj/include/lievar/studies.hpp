#pragma once

#include <random>
#include <string>
#include <vector>

#include "lievar/control.hpp"
#include "lievar/validation.hpp"

// Named property and convergence studies behind the `check` command. Each
// study returns pass/fail plus the measured numbers as a JSON document.

namespace lievar {

struct StudyResult {
  std::string name;
  bool pass = false;
  std::string details_json;  // measured quantities and thresholds
};

const std::vector<std::string>& study_names();
/// Runs one of retraction-identities | del-oracle | dep2-consistency |
/// momentum | rod-schemes. Throws std::invalid_argument for unknown names.
StudyResult run_study(const std::string& name, unsigned seed);

// Shared generators (also used by the test suites).

/// Uniform random rotation with angle <= max_angle.
GroupElement random_rotation(std::mt19937& rng, double max_angle = 2.0);
/// Random SE(3) element with rotation angle <= max_angle, |r| <= max_shift.
GroupElement random_frame(std::mt19937& rng, double max_angle = 2.0, double max_shift = 1.0);
Vec random_vec(std::mt19937& rng, int n, double scale = 1.0);
/// Random symmetric positive-definite matrix with eigenvalues >= shift - 1.
Mat random_spd(std::mt19937& rng, int n, double shift = 3.0);

/// Samples Omega(t_k), k = 0..round(T/h), of a solution of the second-order
/// stationarity dynamics of the rigid-body cost Lagrangian
///   d2/dt2 u = d/dt (B'(Om)^T u) - ad*_Om (B'(Om)^T u) + ad*_Om (du/dt),
/// integrated from (Om0, u0, udot0) by fixed-step RK4 at resolution dt_ref
/// (the internal high-accuracy reference; dt_ref must divide h).
std::vector<Eigen::Vector3d> ep2_rigid_reference(const Eigen::Vector3d& rho,
                                                 const Eigen::Vector3d& Om0,
                                                 const Eigen::Vector3d& u0,
                                                 const Eigen::Vector3d& udot0, double T, double h,
                                                 double dt_ref);

/// Rigid-body problem whose terminal rotation is reached exactly by the
/// reconstruction of Omega_bar plus a random perturbation of magnitude eps
/// on the interior samples; the generating samples are returned.
RigidBodyProblem forward_rigid_problem(std::mt19937& rng, int N, double h,
                                       const Eigen::Vector3d& rho,
                                       const Eigen::Vector3d& Omega_bar, double eps,
                                       std::vector<Vec>* generating = nullptr);

/// Rod problem whose terminal frame is generated by the scheme's own
/// reconstruction of phi_bar plus a smooth perturbation of magnitude eps.
CosseratRodProblem forward_rod_problem(int N, double h, const Matrix6d& K,
                                       const Vector6d& phi_bar, double rho1,
                                       const std::string& scheme, double eps,
                                       std::vector<Vec>* generating = nullptr);

}  // namespace lievar
