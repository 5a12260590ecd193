#include <benchmark/benchmark.h>

#include "tmpow/approx.hpp"
#include "tmpow/lemma_lab.hpp"
#include "tmpow/number_field.hpp"
#include "tmpow/seq_stats.hpp"
#include "tmpow/thue_morse.hpp"
#include "tmpow/witness.hpp"

using namespace tmpow;

static void BM_tm_scalar_small(benchmark::State& state) {
    mpz_class n(123456789);
    for (auto _ : state) benchmark::DoNotOptimize(tmpow::tm(n));
}
BENCHMARK(BM_tm_scalar_small);

static void BM_tm_scalar_4096bit(benchmark::State& state) {
    mpz_class n = (mpz_class(1) << 4096) - 12345;
    for (auto _ : state) benchmark::DoNotOptimize(tmpow::tm(n));
}
BENCHMARK(BM_tm_scalar_4096bit);

static void BM_tm_word(benchmark::State& state) {
    uint64_t len = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        BinaryWord w = tm_word(mpz_class(1), len, 2);
        benchmark::DoNotOptimize(w.limbs().data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(len));
}
BENCHMARK(BM_tm_word)->Arg(1 << 16)->Arg(1 << 20);

static void BM_u_value_fastpath(benchmark::State& state) {
    auto w = shift_witness(2);
    mpz_class j = (mpz_class(1) << 15) + 1;
    for (auto _ : state) benchmark::DoNotOptimize(u_value(w, 15, j));
}
BENCHMARK(BM_u_value_fastpath);

static void BM_u_value_bigint(benchmark::State& state) {
    auto w = shift_witness(3);
    mpz_class j = (mpz_class(1) << 39) + 1;
    for (auto _ : state) benchmark::DoNotOptimize(u_value(w, 39, j));
}
BENCHMARK(BM_u_value_bigint);

static void BM_witness_construction(benchmark::State& state) {
    unsigned k = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto w = shift_witness_uncached(k);
        benchmark::DoNotOptimize(w.y.get_mpz_t());
    }
}
BENCHMARK(BM_witness_construction)->Arg(3)->Arg(63);

static void BM_field_norm(benchmark::State& state) {
    NumberField lehmer({mpz_class(1), mpz_class(1), mpz_class(0), mpz_class(-1), mpz_class(-1),
                        mpz_class(-1), mpz_class(-1), mpz_class(-1), mpz_class(0), mpz_class(1),
                        mpz_class(1)});
    FieldElement a(lehmer, {mpz_class(3), mpz_class(-1), mpz_class(4), mpz_class(1),
                            mpz_class(-5), mpz_class(9), mpz_class(2), mpz_class(-6),
                            mpz_class(5), mpz_class(3)});
    for (auto _ : state) benchmark::DoNotOptimize(a.norm().get_mpz_t());
}
BENCHMARK(BM_field_norm);

static void BM_residual_series_N12(benchmark::State& state) {
    NumberField golden({mpz_class(-1), mpz_class(-1), mpz_class(1)});
    auto w = shift_witness(2);
    LinearForm form = LinearForm::from_ints(golden, {mpz_class(0), mpz_class(1)});
    for (auto _ : state) {
        ResidualReport rep = residual_series(w, form, golden, 12, 48, 256, true);
        benchmark::DoNotOptimize(rep.checks.lower_ok);
    }
}
BENCHMARK(BM_residual_series_N12);

static void BM_cube_detector(benchmark::State& state) {
    BinaryWord w = power_word(1, static_cast<uint64_t>(state.range(0)));
    for (auto _ : state) {
        CubeReport rep = find_cube(w);
        benchmark::DoNotOptimize(rep.cube_free);
    }
}
BENCHMARK(BM_cube_detector)->Arg(1 << 14)->Arg(1 << 17);

BENCHMARK_MAIN();
