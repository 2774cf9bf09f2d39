#include <benchmark/benchmark.h>

#include "loopcoh/homology.hpp"
#include "loopcoh/koszul.hpp"
#include "loopcoh/resolution.hpp"

using namespace loopcoh;
using linalg::Ring;

namespace {

poly::PolynomialAlgebra algebra(const Ring& R, std::vector<poly::Generator> g)
{
    return poly::PolynomialAlgebra(R, poly::GeneratorSet(std::move(g), R));
}

void BM_BarRanksZ(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto A = algebra(Ring::integers(), {{"x2", 2}, {"x4", 4}});
    for (auto _ : state) {
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {n, n + 1});
        benchmark::DoNotOptimize(homology::homology_ranks(C).ranks);
    }
}
BENCHMARK(BM_BarRanksZ)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BarRanksQ(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto A = algebra(Ring::rationals(), {{"x2", 2}, {"x2'", 2}});
    for (auto _ : state) {
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {n, n + 1});
        benchmark::DoNotOptimize(homology::homology_ranks(C).ranks);
    }
}
BENCHMARK(BM_BarRanksQ)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MuSqRing(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Ring F2 = Ring::prime_field(2);
    const auto A = algebra(F2, {{"u2", 2}, {"u3", 3}});
    const poly::Steenrod sq(A, poly::parse_sq1_table(A, {{"u2", "u3"}}));
    const auto t = hirsch::HirschOpTable::sq_structure(sq);
    for (auto _ : state) {
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {n, n + 1});
        benchmark::DoNotOptimize(homology::homology_ring(C, B, homology::ProductKind::muE, &t).table.size());
    }
}
BENCHMARK(BM_MuSqRing)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state)
{
    const auto A = algebra(Ring::integers(), {{"x2", 2}, {"x4", 4}});
    bar::PolynomialBarAlgebra B(A);
    homology::BarComplex C(B, {10, 11});
    std::vector<linalg::SparseMatrix> ms;
    for (int n = 0; n <= 10; ++n)
        for (int m : C.internal_degrees(n)) ms.push_back(C.d(n, m));
    for (auto _ : state)
        for (const auto& d : ms) benchmark::DoNotOptimize(linalg::smith_normal_form(d).rank);
}
BENCHMARK(BM_SmithNormalForm)->Unit(benchmark::kMillisecond);

void BM_ResolutionBasisAndD2(benchmark::State& state)
{
    const int internal = static_cast<int>(state.range(0));
    const auto A = algebra(Ring::prime_field(2), {{"u2", 2}, {"u3", 3}});
    for (auto _ : state) {
        resolution::HirschResolution R(A);
        std::size_t zero = 0;
        for (const auto& [b, ws] : resolution::enumerate_rh_basis(R, -3, internal))
            for (const auto& w : ws) zero += R.d(R.d(w)).empty();
        benchmark::DoNotOptimize(zero);
    }
}
BENCHMARK(BM_ResolutionBasisAndD2)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SIteration(benchmark::State& state)
{
    const int internal = static_cast<int>(state.range(0));
    const auto A = algebra(Ring::prime_field(2), {{"x2", 2}, {"x4", 4}});
    for (auto _ : state) {
        resolution::HirschResolution R(A);
        resolution::Contraction S(R);
        int max_n = 0;
        for (const auto& [b, ws] : resolution::enumerate_rh_basis(R, -2, internal)) {
            if (b.res == 0) continue;
            for (const auto& w : ws) max_n = std::max(max_n, resolution::verify_siteration(R, S, resolution::Element{w}, 8).n);
        }
        benchmark::DoNotOptimize(max_n);
    }
}
BENCHMARK(BM_SIteration)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_KoszulOracle(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(koszul::oracle_small_resolution_check({2, 2, 4}, Ring::integers(), 10).ranks);
}
BENCHMARK(BM_KoszulOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
