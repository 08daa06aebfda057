#include <benchmark/benchmark.h>

#include "tfab/construction.hpp"
#include "tfab/scan.hpp"

namespace {

// A form that holds everywhere forces a full pass over the set.
tfab::AffineForm all_pass(const tfab::ResidueSet& set) {
  tfab::AffineForm form;
  form.modulus = set.modulus;
  form.coeffs.assign(set.window, 0);
  return form;
}

// A form that fails only on the last hyperplane residue.
tfab::AffineForm late_failure(const tfab::ResidueSet& set) {
  tfab::AffineForm form = all_pass(set);
  const std::uint64_t last = tfab::to_u64(set.hyper_size()) - 1;
  std::vector<std::uint64_t> r = set.hyper_element(last);
  // constant + <coeffs, r> == 0 except when r matches the last element in coordinate 1
  form.coeffs[0] = 1;
  form.constant = (set.modulus - r[0] % set.modulus) % set.modulus;
  form.constant = (form.constant + 1) % set.modulus;
  return form;
}

tfab::ResidueSet make_set(std::uint64_t p, tfab::Index w, unsigned m) {
  return tfab::residue_set(*tfab::context(p), w, m);
}

void BM_FirstViolationSerial(benchmark::State& state) {
  auto set = make_set(static_cast<std::uint64_t>(state.range(0)), state.range(1), 2);
  auto form = all_pass(set);
  for (auto _ : state) benchmark::DoNotOptimize(tfab::first_violation_serial(set, form));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(tfab::to_u64(set.hyper_size())));
}

void BM_FirstViolationParallel(benchmark::State& state) {
  auto set = make_set(static_cast<std::uint64_t>(state.range(0)), state.range(1), 2);
  auto form = all_pass(set);
  for (auto _ : state) benchmark::DoNotOptimize(tfab::first_violation_parallel(set, form));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(tfab::to_u64(set.hyper_size())));
}

void BM_CountViolationsSerial(benchmark::State& state) {
  auto set = make_set(static_cast<std::uint64_t>(state.range(0)), state.range(1), 2);
  auto form = late_failure(set);
  for (auto _ : state) benchmark::DoNotOptimize(tfab::count_violations_serial(set, form));
}

void BM_CountViolationsParallel(benchmark::State& state) {
  auto set = make_set(static_cast<std::uint64_t>(state.range(0)), state.range(1), 2);
  auto form = late_failure(set);
  for (auto _ : state) benchmark::DoNotOptimize(tfab::count_violations_parallel(set, form));
}

}  // namespace

BENCHMARK(BM_FirstViolationSerial)->Args({7, 6})->Args({11, 6})->Args({13, 6});
BENCHMARK(BM_FirstViolationParallel)->Args({7, 6})->Args({11, 6})->Args({13, 6});
BENCHMARK(BM_CountViolationsSerial)->Args({11, 6})->Args({13, 6});
BENCHMARK(BM_CountViolationsParallel)->Args({11, 6})->Args({13, 6});

BENCHMARK_MAIN();
