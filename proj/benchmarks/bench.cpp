#include "searchlight/fixtures.hpp"
#include "searchlight/ncl.hpp"
#include "searchlight/polygon.hpp"
#include "searchlight/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace searchlight;

namespace {

void BM_ValidateStaircase(benchmark::State& state) {
    RawSolid raw = fixture_staircase(static_cast<int>(state.range(0))).input;
    for (auto _ : state) {
        OrthoPolyhedron p = validate_polyhedron(raw);
        benchmark::DoNotOptimize(p.notches.size());
    }
}
BENCHMARK(BM_ValidateStaircase)->Arg(3)->Arg(6)->Arg(10);

void BM_ErectFences(benchmark::State& state) {
    OrthoPolyhedron p = fixture_staircase(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        FencePlan plan = erect_fences(p);
        benchmark::DoNotOptimize(plan.cuboids.size());
    }
}
BENCHMARK(BM_ErectFences)->Arg(3)->Arg(6)->Arg(10);

void BM_PlanAndVerifySequential(benchmark::State& state) {
    OrthoPolyhedron p = fixture_staircase(static_cast<int>(state.range(0)));
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    for (auto _ : state) {
        MacroSchedule m = plan_sequential(p, plan, guards);
        Verdict v = verify_schedule(p, guards, m);
        benchmark::DoNotOptimize(v.outcome);
    }
}
BENCHMARK(BM_PlanAndVerifySequential)->Arg(3)->Arg(6);

void BM_OracleVerify(benchmark::State& state) {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    MacroSchedule m = plan_sequential(p, plan, guards);
    Schedule lowered = lower(p, guards, m);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Verdict v = brute_force_verify(p, guards, lowered, k);
        benchmark::DoNotOptimize(v.outcome);
    }
}
BENCHMARK(BM_OracleVerify)->Arg(1)->Arg(2);

void BM_IsExhaustive(benchmark::State& state) {
    OrthoPolyhedron p = fixture_l_solid();
    FencePlan plan = erect_fences(p);
    std::vector<Guard> guards = place_guards(p, plan);
    for (auto _ : state) {
        ExhaustiveReport r = is_exhaustive_guard(p, guards[0]);
        benchmark::DoNotOptimize(r.exhaustive);
    }
}
BENCHMARK(BM_IsExhaustive);

void BM_BisectorPartition(benchmark::State& state) {
    std::mt19937 rng(17);
    Polygon2 poly = random_rectilinear_polygon(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ConvexPartition part = bisector_partition(poly, 0);
        benchmark::DoNotOptimize(part.pieces.size());
    }
}
BENCHMARK(BM_BisectorPartition)->Arg(4)->Arg(8);

void BM_EeDecide(benchmark::State& state) {
    std::mt19937 rng(23);
    ConstraintGraph g = random_constraint_graph(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        EeDecision d = ee_decide(g);
        benchmark::DoNotOptimize(d.reachable);
    }
}
BENCHMARK(BM_EeDecide)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
