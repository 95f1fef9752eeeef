#include <benchmark/benchmark.h>

#include <memory>

#include <rankcodes/directsum.hpp>
#include <rankcodes/subfield.hpp>

using namespace rankcodes;

namespace {

TowerPtr tower(std::uint32_t q, int n, Arithmetic mode = Arithmetic::Automatic) {
    return std::make_shared<const FieldTower>(q, n, mode);
}

SubspaceBasis power_span(const TowerPtr& t, std::size_t lo, std::size_t hi) {
    ExtVector b;
    for (std::size_t i = lo; i < hi; ++i) b.push_back(t->pow(t->generator(), i));
    return SubspaceBasis(t, b);
}

void field_mul(benchmark::State& state, std::uint32_t q, int n, Arithmetic mode) {
    auto t = tower(q, n, mode);
    Rng rng(1);
    auto xs = random_vector(*t, 1024, rng);
    for (auto _ : state) {
        Fqn acc = t->one();
        for (auto x : xs)
            if (!x.is_zero()) acc = t->mul(acc, x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1024);
}

BENCHMARK_CAPTURE(field_mul, gf2_12_table, 2, 12, Arithmetic::Tables);
BENCHMARK_CAPTURE(field_mul, gf2_12_poly, 2, 12, Arithmetic::Polynomial);
BENCHMARK_CAPTURE(field_mul, gf31_6_poly, 31, 6, Arithmetic::Polynomial);

void gabidulin_decode(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    auto t = tower(2, n);
    const auto code = GabidulinCode::canonical(t, static_cast<std::size_t>(n) - 4);
    Rng rng(2);
    const auto c = code.encode(random_vector(*t, code.dimension(), rng));
    const auto y = add(*t, c, random_error(*t, 2, {}, static_cast<std::size_t>(n), ErrorMode::ExactRank, rng));
    for (auto _ : state) benchmark::DoNotOptimize(code.decode(y));
}
BENCHMARK(gabidulin_decode)->Arg(8)->Arg(12)->Arg(16);

void subspace_decode(benchmark::State& state) {
    auto t = tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 8);
    const SubspaceSubcode sub(code, power_span(t, 0, 8));
    Rng rng(3);
    const auto c = sub.encode(random_vector(*t, sub.message_length(), rng));
    const auto y = add(*t, c, random_error(*t, 2, sub.basis().elements(), 12, ErrorMode::ExactRank, rng));
    const auto route = state.range(0) ? DecodeRoute::ViaParent : DecodeRoute::Direct;
    for (auto _ : state) benchmark::DoNotOptimize(sub.decode(y, route));
}
BENCHMARK(subspace_decode)->Arg(0)->Arg(1);

void monte_carlo(benchmark::State& state) {
    auto t = tower(2, 12);
    const DirectSumCode m(GabidulinCode::canonical(t, 8), {power_span(t, 0, 6), power_span(t, 6, 12)});
    MonteCarloOptions opts;
    opts.decode = state.range(0) != 0;
    opts.workers = 1;
    for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_success(m, 3, 10000, 4, opts));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 10000);
}
BENCHMARK(monte_carlo)->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void subfield_factorization(benchmark::State& state) {
    auto t = tower(2, 12);
    const auto code = GabidulinCode::canonical(t, 10);
    for (auto _ : state) benchmark::DoNotOptimize(compute_factorization(code, 6));
}
BENCHMARK(subfield_factorization)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
