#include <benchmark/benchmark.h>

#include <random>

#include "rhopi/encoder.hpp"
#include "rhopi/equiv.hpp"
#include "rhopi/harness.hpp"
#include "rhopi/rho_reduce.hpp"
#include "rhopi/syntax.hpp"

using namespace rhopi;

namespace {

std::vector<rho::Proc> rho_terms(std::size_t size) {
    std::mt19937_64 rng(3);
    std::vector<rho::Proc> out;
    for (int i = 0; i < 64; ++i) out.push_back(harness::random_rho(rng, size));
    return out;
}

void BM_CanonProc(benchmark::State& state) {
    auto terms = rho_terms(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(rho::canon_proc(terms[i++ % terms.size()]));
}
BENCHMARK(BM_CanonProc)->Arg(8)->Arg(16)->Arg(32);

void BM_NameEq(benchmark::State& state) {
    std::mt19937_64 rng(4);
    std::vector<std::pair<rho::Name, rho::Name>> pairs;
    for (int i = 0; i < 64; ++i) {
        auto x = harness::random_rho_name(rng, static_cast<std::size_t>(state.range(0)));
        pairs.emplace_back(x, harness::equivalent_variant(rng, x));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(rho::name_eq(a, b));
    }
}
BENCHMARK(BM_NameEq)->Arg(8)->Arg(16);

void BM_RhoStep(benchmark::State& state) {
    auto t = rho::canon_proc(enc::encode_ns(syntax::parse_pi("x!a | x!b | x?(y).y!c | x?(y).0")).term);
    for (auto _ : state) benchmark::DoNotOptimize(rho::step(t));
}
BENCHMARK(BM_RhoStep);

void BM_PiExplore(benchmark::State& state) {
    auto t = syntax::parse_pi("!x?(y).y!a | x!b | x!c | b?(z).x!z | c?(z).0");
    for (auto _ : state) benchmark::DoNotOptimize(pi::pi_explore(t, Bounds{2000, 50}));
}
BENCHMARK(BM_PiExplore);

void BM_EncodeNs(benchmark::State& state) {
    auto corpus = harness::make_corpus({1, 50, static_cast<std::size_t>(state.range(0))});
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(enc::encode_ns(corpus.terms[i++ % corpus.terms.size()]));
}
BENCHMARK(BM_EncodeNs)->Arg(10)->Arg(20);

void BM_ExploreEncoding(benchmark::State& state) {
    auto t = enc::encode_ns(syntax::parse_pi("x!a | x?(y).y!b | a?(z).0")).term;
    for (auto _ : state) benchmark::DoNotOptimize(rho::explore(t, Bounds{5000, 100}));
}
BENCHMARK(BM_ExploreEncoding);

void BM_WeakBisim(benchmark::State& state) {
    auto p = syntax::parse_pi("x!a | x?(y).b!y");
    auto q = syntax::parse_pi("b!a");
    for (auto _ : state) benchmark::DoNotOptimize(equiv::barbed_bisim(p, q, pi::AtomSet{"b"}, equiv::Mode::Weak));
}
BENCHMARK(BM_WeakBisim);

void BM_Criteria(benchmark::State& state) {
    auto corpus = harness::make_corpus({1, 10, 10});
    for (auto _ : state) benchmark::DoNotOptimize(harness::check_criteria(corpus));
}
BENCHMARK(BM_Criteria)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
