#include "lievar/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lievar {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

json require(const json& j, const std::string& field) {
  if (!j.contains(field)) fail(field, "missing");
  return j.at(field);
}

double number(const json& j, const std::string& field) {
  const json v = require(j, field);
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

int integer(const json& j, const std::string& field) {
  const json v = require(j, field);
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

Vec vector_field(const json& j, const std::string& field, int expected = -1) {
  const json v = require(j, field);
  if (!v.is_array()) fail(field, "expected an array of numbers");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(field, "expected an array of numbers");
    out(i) = v[i].get<double>();
  }
  if (expected >= 0 && out.size() != expected) {
    fail(field, "expected " + std::to_string(expected) + " entries, got " +
                    std::to_string(out.size()));
  }
  return out;
}

Eigen::Matrix3d rotation_field(const json& j, const std::string& field,
                               std::vector<std::string>& warnings) {
  const Vec v = vector_field(j, field, 9);
  Eigen::Matrix3d R;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) R(r, c) = v(3 * r + c);
  const double defect = so3_defect(R);
  if (defect > 1e-6 || R.determinant() <= 0.0) {
    fail(field, "matrix fails SO(3) membership (defect " + sci(defect) + ", tol 1e-6)");
  }
  if (defect > GroupElement::kMembershipTol) {
    warnings.push_back("field '" + field + "': re-orthonormalized (defect " + sci(defect) + ")");
    R = polar_rotation(R);
  }
  return R;
}

GroupElement frame_field(const json& j, const std::string& field,
                         std::vector<std::string>& warnings) {
  const Vec v = vector_field(j, field, 12);
  Eigen::Matrix3d R;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) R(r, c) = v(3 * r + c);
  const double defect = so3_defect(R);
  if (defect > 1e-6 || R.determinant() <= 0.0) {
    fail(field, "rotation block fails SO(3) membership (defect " + sci(defect) + ", tol 1e-6)");
  }
  if (defect > GroupElement::kMembershipTol) {
    warnings.push_back("field '" + field + "': re-orthonormalized (defect " + sci(defect) + ")");
    R = polar_rotation(R);
  }
  return GroupElement::se3(R, Eigen::Vector3d(v.segment(9, 3)));
}

Mat square_matrix_field(const json& j, const std::string& field, int n) {
  const Vec v = vector_field(j, field);
  if (v.size() == n) return Vec(v).asDiagonal();  // diagonal shorthand
  if (v.size() != n * n) {
    fail(field, "expected " + std::to_string(n) + " (diagonal) or " + std::to_string(n * n) +
                    " (row-major) entries");
  }
  Mat M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = v(n * r + c);
  return M;
}

NewtonConfig newton_field(const json& j) {
  NewtonConfig cfg;
  if (!j.contains("newton")) return cfg;
  const json n = j.at("newton");
  if (n.contains("tol")) cfg.tol = n.at("tol").get<double>();
  if (n.contains("max_iter")) cfg.max_iter = n.at("max_iter").get<int>();
  if (n.contains("fd_step")) cfg.fd_step = n.at("fd_step").get<double>();
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    fail("newton", e.what());
  }
  return cfg;
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void append_matrix_row_major(std::string& line, const Eigen::Matrix3d& R) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) line += "," + format_full(R(r, c));
}

void append_vec(std::string& line, const Vec& v) {
  for (int i = 0; i < v.size(); ++i) line += "," + format_full(v(i));
}

void append_empty(std::string& line, int count) {
  for (int i = 0; i < count; ++i) line += ",";
}

}  // namespace

ProblemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  ProblemConfig cfg;
  const json pj = require(j, "problem");
  if (!pj.is_string()) fail("problem", "expected a string");
  const std::string problem = pj.get<std::string>();
  cfg.newton = newton_field(j);

  if (problem == "rigid-body") {
    cfg.kind = ProblemKind::RigidBody;
    RigidBodyProblem& p = cfg.rigid;
    p.rho = vector_field(j, "rho", 3);
    const json b = require(j, "boundary");
    p.R0 = GroupElement::so3(rotation_field(b, "R0", cfg.warnings));
    p.RT = GroupElement::so3(rotation_field(b, "RT", cfg.warnings));
    p.Omega0 = vector_field(b, "Omega0", 3);
    if (b.contains("OmegaT")) p.OmegaT = Eigen::Vector3d(vector_field(b, "OmegaT", 3));
    p.N = integer(j, "N");
    p.h = number(j, "h");
    if (j.contains("retraction")) p.retraction = j.at("retraction").get<std::string>();
    if (j.contains("strict_terminal_velocity")) {
      p.strict_terminal_velocity = j.at("strict_terminal_velocity").get<bool>();
    }
    try {
      p.validate();
      make_retraction(p.retraction, GroupTag::SO3);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (problem == "rod") {
    cfg.kind = ProblemKind::Rod;
    CosseratRodProblem& p = cfg.rod;
    p.K = square_matrix_field(j, "K", 6);
    p.phi_bar = vector_field(j, "phi_bar", 6);
    p.rho1 = number(j, "rho1");
    const json b = require(j, "boundary");
    p.Phi0 = frame_field(b, "Phi0", cfg.warnings);
    p.PhiT = frame_field(b, "PhiT", cfg.warnings);
    p.phi0 = vector_field(b, "phi0", 6);
    if (b.contains("phiT")) p.phiT = Vector6d(vector_field(b, "phiT", 6));
    p.N = integer(j, "N");
    p.h = number(j, "h");
    if (j.contains("scheme")) p.scheme = j.at("scheme").get<std::string>();
    if (j.contains("retraction")) p.retraction = j.at("retraction").get<std::string>();
    try {
      p.validate();
      make_retraction(p.retraction, GroupTag::SE3);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (problem == "vector-space") {
    cfg.kind = ProblemKind::VectorSpace;
    VectorSpaceProblem& p = cfg.vecspace;
    p.q0 = vector_field(j, "q0");
    p.q1 = vector_field(j, "q1", static_cast<int>(p.q0.size()));
    const int n = static_cast<int>(p.q0.size());
    p.M = square_matrix_field(j, "M", n);
    p.A = Mat::Zero(n, n);
    p.b = Vec::Zero(n);
    if (j.contains("V")) {
      const json V = j.at("V");
      if (V.contains("quadratic")) p.A = square_matrix_field(V, "quadratic", n);
      if (V.contains("linear")) p.b = vector_field(V, "linear", n);
    }
    p.N = integer(j, "N");
    p.h = number(j, "h");
    if (p.N < 1) throw ConfigError("vector-space problem requires N >= 1");
    if (!(p.h > 0.0)) throw ConfigError("vector-space problem requires h > 0");
  } else {
    throw ConfigError("config field 'problem': unknown value '" + problem +
                      "' (expected rigid-body | rod | vector-space)");
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void write_rigid_trajectory_csv(const std::string& path, const RigidBodySolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "k,t,R00,R01,R02,R10,R11,R12,R20,R21,R22,w1,w2,w3,u1,u2,u3\n";
  const int N = sol.trajectory.steps();
  for (int k = 0; k <= N; ++k) {
    std::string line = std::to_string(k) + "," + format_full(k * sol.trajectory.h);
    append_matrix_row_major(line, sol.trajectory.points[k].rotation());
    if (k < static_cast<int>(sol.Omegas.size())) {
      append_vec(line, sol.Omegas[k]);
    } else {
      append_empty(line, 3);
    }
    if (k < static_cast<int>(sol.controls.size())) {
      append_vec(line, sol.controls[k]);
    } else {
      append_empty(line, 3);
    }
    out << line << "\n";
  }
}

void write_rod_trajectory_csv(const std::string& path, const RodSolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "k,t,R00,R01,R02,R10,R11,R12,R20,R21,R22,r1,r2,r3,"
         "w1,w2,w3,v1,v2,v3,f1,f2,f3,l1,l2,l3\n";
  const int N = sol.trajectory.steps();
  for (int k = 0; k <= N; ++k) {
    std::string line = std::to_string(k) + "," + format_full(k * sol.trajectory.h);
    append_matrix_row_major(line, sol.trajectory.points[k].rotation());
    append_vec(line, sol.trajectory.points[k].translation());
    if (k < static_cast<int>(sol.phis.size())) {
      append_vec(line, sol.phis[k]);
    } else {
      append_empty(line, 6);
    }
    if (k < static_cast<int>(sol.forces.size())) {
      append_vec(line, sol.forces[k]);
      append_vec(line, sol.moments[k]);
    } else {
      append_empty(line, 6);
    }
    out << line << "\n";
  }
}

void write_vector_trajectory_csv(const std::string& path, const std::vector<Vec>& qs, double h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  const int n = qs.empty() ? 0 : static_cast<int>(qs.front().size());
  out << "k,t";
  for (int i = 1; i <= n; ++i) out << ",q" << i;
  out << "\n";
  for (std::size_t k = 0; k < qs.size(); ++k) {
    std::string line = std::to_string(k) + "," + format_full(k * h);
    append_vec(line, qs[k]);
    out << line << "\n";
  }
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      table.header = cells;
      first = false;
      continue;
    }
    std::vector<std::optional<double>> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) {
      if (c.empty()) {
        row.push_back(std::nullopt);
      } else {
        row.push_back(std::stod(c));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string solve_report_json(const SolveReport& rep, double cost, ProblemKind kind) {
  json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["residual"] = rep.residual;
  j["cost"] = cost;
  if (kind == ProblemKind::Rod) {
    j["terminal_frame_error"] = rep.terminal_error;
  } else {
    j["terminal_rotation_error"] = rep.terminal_error;
  }
  j["wall_seconds"] = rep.wall_seconds;
  j["message"] = rep.message;
  j["residual_history"] = rep.history;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file '" + path + "'");
  out << text;
}

}  // namespace lievar
