#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/exciton_model.hpp"
#include "echo2d/lineshape.hpp"
#include "echo2d/oracle.hpp"
#include "echo2d/population.hpp"
#include "echo2d/response.hpp"
#include "echo2d/spectrum.hpp"

namespace {

echo2d::ExcitonModel dimer() {
  echo2d::ExcitonModel m;
  m.ground_energy = -12000.0;
  m.site_energies = Eigen::Vector2d(-50.0, 50.0);
  m.couplings = Eigen::Matrix2d{{0.0, 100.0}, {100.0, 0.0}};
  m.site_dipoles = echo2d::site_dipoles_from_stationary(m, Eigen::Vector2d(1.0, -1.0));
  return m;
}

echo2d::BathSpec ohmic() {
  echo2d::BathSpec b;
  b.cutoff = 53.0;
  b.reorganization = 63.6;
  b.temperature = 77.0;
  return b;
}

struct Setup {
  echo2d::StationaryBasis basis{dimer()};
  echo2d::Bath bath{ohmic()};
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_Diagonalize(benchmark::State& state) {
  const auto m = dimer();
  for (auto _ : state) benchmark::DoNotOptimize(echo2d::StationaryBasis(m));
}
BENCHMARK(BM_Diagonalize);

void BM_BathNodes(benchmark::State& state) {
  auto spec = ohmic();
  spec.quadrature.n_points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(echo2d::Bath(spec));
}
BENCHMARK(BM_BathNodes)->Arg(500)->Arg(2000)->Arg(8000);

void BM_LineshapeYGrid(benchmark::State& state) {
  const echo2d::Lineshape ls(setup().bath);
  const Eigen::VectorXd t = echo2d::uniform_axis(static_cast<int>(state.range(0)), 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(ls.y(t, t));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_LineshapeYGrid)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RelaxationL(benchmark::State& state) {
  const echo2d::RelaxationTerms terms(setup().basis, setup().bath);
  const Eigen::VectorXd t = echo2d::uniform_axis(256, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(terms.L(0, 0, t));
}
BENCHMARK(BM_RelaxationL)->Unit(benchmark::kMicrosecond);

void BM_ResponseGrid(benchmark::State& state) {
  const auto pathway = static_cast<echo2d::Pathway>(state.range(1));
  const echo2d::ResponseEngine engine(setup().basis, setup().bath);
  const Eigen::VectorXd t = echo2d::uniform_axis(static_cast<int>(state.range(0)), 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(engine.grid(pathway, t, 300.0, t));
  state.SetLabel(echo2d::to_string(pathway));
}
BENCHMARK(BM_ResponseGrid)
    ->ArgsProduct({{64, 256}, {static_cast<int>(echo2d::Pathway::SE), static_cast<int>(echo2d::Pathway::GSB),
                               static_cast<int>(echo2d::Pathway::ESA)}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_Transform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  echo2d::ResponseGrid grid;
  grid.t1_axis = echo2d::uniform_axis(n, 4.0);
  grid.t3_axis = grid.t1_axis;
  grid.values = Eigen::MatrixXcd::Random(n, n);
  echo2d::SpectrumOptions opts;
  opts.zero_pad = static_cast<int>(state.range(1));
  opts.origin1 = opts.origin3 = 12000.0;
  for (auto _ : state) benchmark::DoNotOptimize(echo2d::transform(grid, opts));
}
BENCHMARK(BM_Transform)->Args({256, 1})->Args({256, 4})->Unit(benchmark::kMillisecond);

void BM_OracleSE(benchmark::State& state) {
  auto modes = echo2d::discretize(ohmic(), 2, 4);
  for (auto& m : modes.modes) m.coupling *= 0.4472135955;
  const echo2d::ExactOracle oracle(dimer(), modes);
  const Eigen::VectorXd t = echo2d::uniform_axis(11, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle.response(echo2d::Pathway::SE, t, 50.0, t));
}
BENCHMARK(BM_OracleSE)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
