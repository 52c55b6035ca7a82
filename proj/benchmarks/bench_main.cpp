#include <benchmark/benchmark.h>

#include <cstdint>

#include "qsb/hybrid.hpp"
#include "qsb/oracle_table.hpp"
#include "qsb/rng.hpp"
#include "qsb/search.hpp"
#include "qsb/state_vector.hpp"

namespace {

qsb::StateVector uniform_state(int n, int answer) {
  qsb::StateVector state =
      qsb::make_basis_state(qsb::make_shape(n, answer), 0);
  qsb::apply_walsh_hadamard(state);
  return state;
}

void BM_WalshHadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsb::StateVector psi = uniform_state(n, 0);
  for (auto _ : state) {
    qsb::apply_walsh_hadamard(psi);
    benchmark::DoNotOptimize(psi.amps.data());
  }
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_WalshHadamard)->Arg(8)->Arg(12)->Arg(16)->Arg(18)->Complexity();

void BM_Diffusion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsb::StateVector psi = uniform_state(n, 0);
  for (auto _ : state) {
    qsb::apply_diffusion(psi);
    benchmark::DoNotOptimize(psi.amps.data());
  }
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_Diffusion)->Arg(8)->Arg(12)->Arg(16)->Arg(18)->Complexity();

void BM_PhaseOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsb::Rng rng(1);
  const qsb::OracleTable f = qsb::sample_s_b(n, 1, rng);
  qsb::StateVector psi = uniform_state(n, 0);
  for (auto _ : state) {
    qsb::apply_phase_oracle(psi, f);
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_PhaseOracle)->Arg(8)->Arg(12)->Arg(16)->Arg(18);

void BM_BitflipOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsb::Rng rng(1);
  const qsb::OracleTable f = qsb::sample_s_b(n, 4, rng);
  qsb::StateVector psi = uniform_state(n, 1);
  for (auto _ : state) {
    qsb::apply_bitflip_oracle(psi, f);
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_BitflipOracle)->Arg(8)->Arg(12)->Arg(16)->Arg(18);

void BM_GroverIterate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qsb::Rng rng(1);
  const qsb::OracleTable f = qsb::sample_s_b(n, 1, rng);
  qsb::StateVector psi = uniform_state(n, 0);
  for (auto _ : state) {
    qsb::grover_iterate(psi, f);
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_GroverIterate)->Arg(8)->Arg(12)->Arg(16)->Arg(18);

void BM_QueryMass(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qsb::StateVector psi = uniform_state(n, 1);
  for (auto _ : state) {
    qsb::QueryMassVector mass = qsb::query_mass(psi);
    benchmark::DoNotOptimize(mass.masses.data());
  }
}
BENCHMARK(BM_QueryMass)->Arg(8)->Arg(12)->Arg(16);

void BM_Measure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qsb::StateVector psi = uniform_state(n, 0);
  qsb::Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsb::measure(psi, rng));
  }
}
BENCHMARK(BM_Measure)->Arg(8)->Arg(12)->Arg(16);

void BM_SubspaceIterate(benchmark::State& state) {
  qsb::SubspaceState s =
      qsb::make_uniform_subspace(std::uint64_t{1} << 30, 1);
  for (auto _ : state) {
    qsb::subspace_iterate(s);
    benchmark::DoNotOptimize(s.marked_amp);
  }
}
BENCHMARK(BM_SubspaceIterate);

void BM_BbhtTrial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    qsb::Rng rng(qsb::derive_stream_seed(99, "bench", n, 1, trial++));
    const qsb::OracleTable f = qsb::sample_s_b(n, 1, rng);
    benchmark::DoNotOptimize(qsb::bbht_search(n, f, rng).queries_used);
  }
}
BENCHMARK(BM_BbhtTrial)->Arg(8)->Arg(10)->Arg(12);

void BM_DenseUnitaryApply(benchmark::State& state) {
  const std::uint64_t dim = static_cast<std::uint64_t>(state.range(0));
  const qsb::DenseUnitary& u = qsb::haar_like_unitary(dim, 5);
  qsb::StateVector psi = uniform_state(static_cast<int>(state.range(1)), 0);
  for (auto _ : state) {
    qsb::apply_dense_unitary(psi, u);
    benchmark::DoNotOptimize(psi.amps.data());
  }
}
BENCHMARK(BM_DenseUnitaryApply)->Args({64, 6})->Args({256, 8});

}  // namespace

BENCHMARK_MAIN();
