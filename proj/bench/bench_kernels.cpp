#include <benchmark/benchmark.h>

#include <random>

#include "lievar/control.hpp"
#include "lievar/fd.hpp"
#include "lievar/studies.hpp"

// Serial vs OpenMP variants of the two hot kernels: residual assembly and the
// column-wise finite-difference Jacobian.

namespace {

using namespace lievar;

struct Fixture {
  RigidBodyProblem problem;
  std::shared_ptr<const Retraction> retr;
  Vec x;

  explicit Fixture(int N) {
    std::mt19937 rng(7);
    problem = forward_rigid_problem(rng, N, 0.05, Eigen::Vector3d(1.0, -1.0, 0.5),
                                    Eigen::Vector3d(0.3, -0.2, 0.4), 0.05);
    retr = make_retraction("cayley", GroupTag::SO3);
    x = Vec::Zero(3 * (N - 1));
    for (int k = 0; k < N - 1; ++k) x.segment(3 * k, 3) = Eigen::Vector3d(0.3, -0.2, 0.4);
  }
};

void BM_AssembleSerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_rigid_residual(f.problem, f.x, *f.retr, Exec::Serial));
  }
}

void BM_AssembleParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_rigid_residual(f.problem, f.x, *f.retr, Exec::Parallel));
  }
}

void BM_JacobianSerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  const VectorFn F = [&](const Vec& x) {
    return assemble_rigid_residual(f.problem, x, *f.retr, Exec::Serial);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_jacobian_serial(F, f.x, 1e-6));
  }
}

void BM_JacobianParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  const VectorFn F = [&](const Vec& x) {
    return assemble_rigid_residual(f.problem, x, *f.retr, Exec::Serial);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_jacobian(F, f.x, 1e-6, Exec::Parallel));
  }
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_AssembleParallel)->Arg(64)->Arg(256);
BENCHMARK(BM_JacobianSerial)->Arg(32)->Arg(64);
BENCHMARK(BM_JacobianParallel)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
