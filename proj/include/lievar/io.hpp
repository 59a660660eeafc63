#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lievar/control.hpp"

// Configuration ingestion (JSON), trajectory serialization (CSV, full
// 17-significant-digit precision) and solve reports (JSON).

namespace lievar {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vector-space problem for the discrete Newton-law integrator:
/// L(q, qdot) = 0.5 qdot^T M qdot - V(q), V(q) = 0.5 q^T A q + b^T q.
struct VectorSpaceProblem {
  Mat M;
  Mat A;
  Vec b;
  Vec q0, q1;
  int N = 10;
  double h = 0.1;
};

enum class ProblemKind { RigidBody, Rod, VectorSpace };

struct ProblemConfig {
  ProblemKind kind = ProblemKind::RigidBody;
  RigidBodyProblem rigid;
  CosseratRodProblem rod;
  VectorSpaceProblem vecspace;
  NewtonConfig newton;
  std::vector<std::string> warnings;  // e.g. boundary matrices re-orthonormalized
};

/// Parses and validates a configuration document. Boundary matrices with a
/// membership defect <= 1e-6 are projected back to the group (with a
/// warning); larger defects are rejected. Throws ConfigError with a
/// field-level diagnostic on any problem.
ProblemConfig parse_config(const std::string& json_text);
ProblemConfig load_config(const std::string& path);

// Trajectory files. Headers:
//   rigid: k,t,R00..R22,w1,w2,w3,u1,u2,u3
//   rod:   k,t,R00..R22,r1,r2,r3,w1,w2,w3,v1,v2,v3,f1,f2,f3,l1,l2,l3
//   vector space: k,t,q1..qn
// Control cells are empty at k = N-1 and k = N; velocity cells at k = N.
void write_rigid_trajectory_csv(const std::string& path, const RigidBodySolution& sol);
void write_rod_trajectory_csv(const std::string& path, const RodSolution& sol);
void write_vector_trajectory_csv(const std::string& path, const std::vector<Vec>& qs, double h);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

/// {converged, iterations, residual, cost, terminal errors, wall time, ...}.
std::string solve_report_json(const SolveReport& rep, double cost, ProblemKind kind);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lievar
