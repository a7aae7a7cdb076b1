#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <pneumo/analysis.hpp>
#include <pneumo/calibration.hpp>
#include <pneumo/dataset_csv.hpp>
#include <pneumo/dynamics.hpp>
#include <pneumo/least_squares.hpp>

using namespace pneumo;

namespace {

std::string reference_text() {
    std::ifstream in(PNEUMO_BENCH_DATA, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void BM_Simulate(benchmark::State& state) {
    const auto model = default_sensor_model();
    SimulationConfig cfg;
    cfg.t_end = static_cast<double>(state.range(0)) / 1000.0;
    cfg.decimation = 100;
    const auto profile = ForceProfile::step(39.24, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(profile, model, cfg));
    state.SetItemsProcessed(state.iterations() * std::llround(cfg.t_end / cfg.dt));
}
BENCHMARK(BM_Simulate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ParseDataset(benchmark::State& state) {
    const auto text = reference_text();
    for (auto _ : state) benchmark::DoNotOptimize(parse_dataset(text));
}
BENCHMARK(BM_ParseDataset);

void BM_Analyze(benchmark::State& state) {
    const auto ds = parse_dataset(reference_text());
    AnalysisConfig cfg;
    cfg.kase = state.range(0) ? CalibrationCase::A_interpolation : CalibrationCase::B_specific_forces;
    for (auto _ : state) benchmark::DoNotOptimize(analyze(ds, cfg));
}
BENCHMARK(BM_Analyze)->Arg(0)->Arg(1);

void BM_FitPolynomial(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(state.range(0))), y(x.size());
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(fit_polynomial(x, y, 3));
}
BENCHMARK(BM_FitPolynomial)->Arg(8)->Arg(256);

void BM_Synthesize(benchmark::State& state) {
    SynthesisConfig cfg;
    cfg.model.piston.f_coulomb = 0.0;
    cfg.sim.dt = 2e-5;
    cfg.settle_dp_tol = 1e-3;
    const auto schedule = build_schedule(4.0, 8);
    for (auto _ : state) benchmark::DoNotOptimize(run_synthetic_calibration(schedule, cfg));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
