#include <benchmark/benchmark.h>

#include <random>

#include "sc/construct.hpp"
#include "sc/dehn.hpp"

namespace {

sc::FamilyPtr c2c3_family() {
  return sc::make_family({sc::cyclic_group_named("A", 2, "a"),
                          sc::cyclic_group_named("B", 3, "b")});
}

std::vector<sc::Letter> random_raw(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<sc::Letter> raw;
  raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint16_t f = rng() % 2;
    sc::elem_t e = static_cast<sc::elem_t>(rng() % (f == 0 ? 2 : 3));
    raw.push_back({f, e});
  }
  return raw;
}

void BM_normalize(benchmark::State& state) {
  auto fam = c2c3_family();
  auto raw = random_raw(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::normalize(fam, raw));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_normalize)->Range(1 << 8, 1 << 16);

std::vector<sc::FamilyMemberSpec> c2c3_members() {
  return {sc::default_member(sc::cyclic_group(2)),
          sc::default_member(sc::cyclic_group(3))};
}

void BM_build_theorem_a(benchmark::State& state) {
  auto members = c2c3_members();
  sc::ConstructionParams params;
  params.n = static_cast<int>(state.range(0));
  params.require_coprime6 = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::build_theorem_a(members, params));
  }
}
BENCHMARK(BM_build_theorem_a)->Arg(7)->Arg(23);

void BM_verify_metric(benchmark::State& state) {
  auto members = c2c3_members();
  sc::ConstructionParams params;
  params.n = static_cast<int>(state.range(0));
  params.require_coprime6 = false;
  sc::Presentation pres = sc::build_theorem_a(members, params);
  sc::VerificationParams vp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sc::verify_metric(pres.symmetrized, vp, pres.labels()));
  }
}
BENCHMARK(BM_verify_metric)->Arg(5)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);

void BM_dehn_reduce_conjugate(benchmark::State& state) {
  auto fam = c2c3_family();
  sc::Presentation pres;
  pres.family = fam;
  sc::Word ab7 = sc::parse_word_literal(fam, "(A.a B.b)^7");
  pres.seeds.push_back({sc::RelTag::generic, 0, -1, -1, ab7});
  pres.factor_gens = {{1}, {1}};
  pres.symmetrized = sc::symmetrized_closure(fam, {ab7});
  sc::DehnSolver solver(pres);
  sc::Word g = sc::parse_word_literal(fam, "B.b^2 A.a B.b");
  sc::Word w = sc::multiply(sc::multiply(g, ab7), sc::invert(g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.reduce(w));
  }
}
BENCHMARK(BM_dehn_reduce_conjugate);

}  // namespace

BENCHMARK_MAIN();
