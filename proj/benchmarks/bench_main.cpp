#include <benchmark/benchmark.h>

#include <random>

#include "pcg/hsmm.hpp"
#include "pcg/preprocess.hpp"
#include "pcg/sqi.hpp"
#include "pcg/synth.hpp"
#include "pcg/wavelet.hpp"

namespace {

pcg::Signal recording(double seconds, double snr_db = 10.0, std::uint64_t seed = 1) {
    pcg::SynthConfig c;
    c.duration_s = seconds;
    c.snr_db = snr_db;
    c.seed = seed;
    return pcg::generate(c).signal;
}

void BM_HilbertEnvelope(benchmark::State& state) {
    const auto sig = recording(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pcg::hilbert_envelope(sig));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sig.size()));
}
BENCHMARK(BM_HilbertEnvelope)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Dwt(benchmark::State& state) {
    const auto sig = recording(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pcg::dwt(sig, "db6", 5));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sig.size()));
}
BENCHMARK(BM_Dwt)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SampleEntropy(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (auto& v : x) v = g(rng);
    for (auto _ : state) benchmark::DoNotOptimize(pcg::sample_entropy(x));
}
BENCHMARK(BM_SampleEntropy)->Arg(500)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_HsmmDecode(benchmark::State& state) {
    static const pcg::HsmmModel model = [] {
        std::vector<pcg::Signal> sigs;
        std::vector<pcg::LabelSet> labs;
        for (std::uint64_t s = 1; s <= 2; ++s) {
            pcg::SynthConfig c;
            c.duration_s = 30.0;
            c.snr_db = 10.0;
            c.seed = s;
            const auto out = pcg::generate(c);
            sigs.push_back(out.signal);
            labs.push_back(out.labels);
        }
        return pcg::train(sigs, labs);
    }();
    const auto sig = recording(static_cast<double>(state.range(0)), 10.0, 9);
    for (auto _ : state) benchmark::DoNotOptimize(pcg::decode(model, sig));
}
BENCHMARK(BM_HsmmDecode)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
