#include <benchmark/benchmark.h>

#include <cmath>

#include "waveobs/control_loop.hpp"
#include "waveobs/damped_dynamics.hpp"
#include "waveobs/frequency_function.hpp"
#include "waveobs/spectral_basis.hpp"
#include "waveobs/wave_dynamics.hpp"

using namespace waveobs;

namespace {

SpectralState bumpy_state(const ModeSet& ms) {
  Eigen::VectorXd a(ms.size()), b(ms.size());
  for (int j = 0; j < ms.size(); ++j) {
    a[j] = std::sin(j + 1.0);
    b[j] = std::cos(2.0 * j);
  }
  return make_state(ms, a, b);
}

}  // namespace

static void BM_EnumerateModes(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ModeSet ms = enumerate_modes(count);
    benchmark::DoNotOptimize(ms.fingerprint());
  }
}
BENCHMARK(BM_EnumerateModes)->Arg(100)->Arg(1000);

static void BM_MassMatrix(benchmark::State& state) {
  ModeSet ms = enumerate_modes(static_cast<int>(state.range(0)));
  const Region region = Region::strip(0.0, 0.2);
  for (auto _ : state) {
    MassMatrix m = omega_mass_matrix(ms, region);
    benchmark::DoNotOptimize(m.entries.data());
  }
}
BENCHMARK(BM_MassMatrix)->Arg(100)->Arg(400);

static void BM_MassApplyStrip(benchmark::State& state) {
  ModeSet ms = enumerate_modes(static_cast<int>(state.range(0)));
  const MassApply mass(ms, omega_mass_matrix(ms, Region::strip(0.0, 0.2)));
  Eigen::VectorXd v = bumpy_state(ms).b, out(ms.size());
  for (auto _ : state) {
    mass.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MassApplyStrip)->Arg(100)->Arg(1000);

static void BM_DampedSolve(benchmark::State& state) {
  ModeSet ms = enumerate_modes(static_cast<int>(state.range(0)));
  DampedSystem sys = assemble(ms, Region::strip(0.0, 0.2));
  SpectralState s0 = bumpy_state(ms);
  for (auto _ : state) {
    DampedTrajectory traj = solve(sys, s0, 4.0, 9, 1e-9);
    benchmark::DoNotOptimize(traj.states.back().a.data());
  }
}
BENCHMARK(BM_DampedSolve)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ControlIteration(benchmark::State& state) {
  ModeSet ms = enumerate_modes(25);
  ControlProblem p;
  p.horizon = 4.0;
  p.iterations = static_cast<int>(state.range(0));
  p.initial = zero_state(ms);
  Eigen::VectorXd ta = Eigen::VectorXd::Zero(ms.size());
  Eigen::VectorXd tb = Eigen::VectorXd::Zero(ms.size());
  ta[0] = 1.0;
  ta[1] = 1.0;
  tb[0] = 1.0;
  p.target = make_state(ms, ta, tb);
  for (auto _ : state) {
    ControlRun run = iterate(ms, p);
    benchmark::DoNotOptimize(run.predicted_error);
  }
}
BENCHMARK(BM_ControlIteration)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ForcedEvolution(benchmark::State& state) {
  ModeSet ms = enumerate_modes(25);
  ControlProblem p;
  p.horizon = 4.0;
  p.iterations = 2;
  p.initial = zero_state(ms);
  Eigen::VectorXd ta = Eigen::VectorXd::Zero(ms.size());
  ta[0] = 1.0;
  p.target = make_state(ms, ta, Eigen::VectorXd::Zero(ms.size()));
  ControlRun run = iterate(ms, p);
  ForcingRecord rec = assemble_control(run);
  MassMatrix m = omega_mass_matrix(ms, p.region);
  Eigen::VectorXd t_out(1);
  t_out[0] = p.horizon;
  for (auto _ : state) {
    auto states = evolve_forced(ms, p.initial, rec, m, t_out);
    benchmark::DoNotOptimize(states.back().a.data());
  }
}
BENCHMARK(BM_ForcedEvolution)->Unit(benchmark::kMillisecond);

static void BM_FrequencyProfile(benchmark::State& state) {
  HarmonicTerm t1{1, 0.7, {0.0, 0.0}, false};
  HarmonicTerm t2{3, -0.2, {0.1, -0.05}, false};
  HarmonicSample h = HarmonicSample::interior(harmonic_value({t1, t2}),
                                              harmonic_gradient({t1, t2}), {0.0, 0.0}, 1.0);
  Eigen::VectorXd radii = Eigen::VectorXd::LinSpaced(33, 0.1, 0.9);
  const int quad = static_cast<int>(state.range(0));
  for (auto _ : state) {
    RadialProfile p = profile(h, radii, quad);
    benchmark::DoNotOptimize(p.phi.data());
  }
}
BENCHMARK(BM_FrequencyProfile)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();