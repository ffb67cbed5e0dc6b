#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "vpr/aggregators.hpp"
#include "vpr/mining.hpp"
#include "vpr/retrieval.hpp"
#include "vpr/rng.hpp"

namespace {

vpr::FeatureMap make_map(std::uint32_t h, std::uint32_t w, std::uint32_t k,
                         std::uint64_t seed) {
    vpr::Rng rng(seed);
    vpr::FeatureMap map(h, w, k);
    for (auto& v : map.data)
        v = static_cast<float>(rng.uniform(0.05, 2.0));
    return map;
}

void bench_spoc(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::spoc(map));
}
BENCHMARK(bench_spoc);

void bench_gem(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 2);
    const std::vector<double> p(64, 3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::gem(map, p));
}
BENCHMARK(bench_gem);

void bench_netvlad(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 3);
    const auto params = std::get<vpr::NetVladParams>(vpr::init_params(
        vpr::Variant::NetVlad, 16, 16, 64, 512, 7, 0.05, 2.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::netvlad(map, params));
}
BENCHMARK(bench_netvlad);

void bench_conv_ap(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 4);
    const auto params = std::get<vpr::ConvApParams>(
        vpr::init_params(vpr::Variant::ConvAp, 16, 16, 64, 512, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::conv_ap(map, params));
}
BENCHMARK(bench_conv_ap);

void bench_eigenplaces(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 5);
    const auto params = std::get<vpr::EigenPlacesParams>(
        vpr::init_params(vpr::Variant::EigenPlaces, 16, 16, 64, 512, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::eigenplaces(map, params));
}
BENCHMARK(bench_eigenplaces);

void bench_mixvpr(benchmark::State& state) {
    const auto map = make_map(16, 16, 64, 6);
    const auto params = std::get<vpr::MixVprParams>(
        vpr::init_params(vpr::Variant::MixVpr, 16, 16, 64, 512, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::mixvpr(map, params));
}
BENCHMARK(bench_mixvpr);

void bench_top_k(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t dim = 128;
    vpr::Rng rng(8);
    vpr::DescriptorSet gallery;
    vpr::Descriptor d(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : d) v = rng.uniform(-1.0, 1.0);
        gallery.add("g" + std::to_string(i), d);
    }
    vpr::Descriptor query(dim);
    for (auto& v : query) v = rng.uniform(-1.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::top_k(gallery, query, 10));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bench_top_k)->Arg(1000)->Arg(10000);

std::vector<vpr::SampleMeta> make_corpus(std::size_t n) {
    vpr::Rng rng(9);
    std::vector<vpr::SampleMeta> samples(n);
    const vpr::Condition wheel[4] = {
        vpr::Condition::Day, vpr::Condition::Night, vpr::Condition::DayRain,
        vpr::Condition::NightRain};
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = samples[i];
        s.sample_id = "s" + std::to_string(i);
        s.scene_id = "scene" + std::to_string(i / 4);
        s.timestamp_us = static_cast<std::int64_t>(i) * 1'500'000;
        // places on a loose grid so most pairs are cheap rejections
        s.cam_pos = {static_cast<double>((i / 8) % 16) * 30.0 +
                         rng.uniform(-2.0, 2.0),
                     static_cast<double>(i / 128) * 30.0 +
                         rng.uniform(-2.0, 2.0)};
        s.yaw = rng.uniform(-3.1, 3.1);
        s.condition = wheel[i % 4];
    }
    return samples;
}

void bench_mine_pairs(benchmark::State& state) {
    const auto samples = make_corpus(static_cast<std::size_t>(state.range(0)));
    const unsigned threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(vpr::mine_pairs(samples, {}, threads));
}
BENCHMARK(bench_mine_pairs)
    ->Args({1000, 1})
    ->Args({1000, 4});

} // namespace

BENCHMARK_MAIN();
