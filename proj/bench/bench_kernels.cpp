#include <benchmark/benchmark.h>

#include "micropolar/diagnostics.hpp"
#include "micropolar/fields.hpp"
#include "micropolar/galerkin.hpp"
#include "micropolar/spectrum.hpp"

using namespace micropolar;

namespace {

struct Setup {
  PhysParams p;
  GalerkinConfig cfg;
  GridPtr grid;
  State z;

  explicit Setup(int n) {
    cfg.n = n;
    grid = cfg.make_grid();
    InitialSpec spec;
    spec.seed = 11;
    z = initial_data(spec, p, cfg, grid).state;
  }
};

Exec policy(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& st) {
  st.SetLabel(st.range(1) ? "parallel" : "serial");
  set_default_exec(Exec::parallel);
}

void BM_Product(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)));
  set_default_exec(policy(st));
  for (auto _ : st) benchmark::DoNotOptimize(dealiased_product(s.z.K, s.z.theta, s.cfg.n, Product::matvec));
  label(st);
}

void BM_Rhs(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)));
  const Evaluator ev = galerkin_evaluator(s.p);
  set_default_exec(policy(st));
  for (auto _ : st) benchmark::DoNotOptimize(ev.rhs(s.z));
  label(st);
}

void BM_Step(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)));
  const Integrator in(s.p, s.cfg);
  set_default_exec(policy(st));
  for (auto _ : st) benchmark::DoNotOptimize(in.step(s.z, 0.01));
  label(st);
}

void BM_EnergyReport(benchmark::State& st) {
  Setup s(static_cast<int>(st.range(0)));
  const Evaluator ev = galerkin_evaluator(s.p);
  ReportOptions o;
  o.M = 2;
  set_default_exec(policy(st));
  for (auto _ : st) benchmark::DoNotOptimize(energy_report(s.z, ev, o));
  label(st);
}

void BM_Scan(benchmark::State& st) {
  const PhysParams p;
  for (auto _ : st) benchmark::DoNotOptimize(eigen_scan(p, static_cast<int>(st.range(0)), policy(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_Product)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rhs)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyReport)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scan)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
