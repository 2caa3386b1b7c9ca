#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "goedel/compiler.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofcheck.hpp"
#include "goedel/recfun.hpp"
#include "goedel/semantics.hpp"

using namespace goedel;

namespace {

Formula nested(int depth) {
  Formula f = parse_formula("((x0 + S0) = (x1 * SS0))");
  for (int i = 0; i < depth; ++i) f = forall(i % 3, land(f, lnot(f)));
  return f;
}

std::string one_plus_one() {
  std::ifstream in(std::string(GOEDEL_SOURCE_DIR) + "/proofs/one_plus_one.paproof");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

static void BM_CompactEncode(benchmark::State& state) {
  Formula f = nested(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compact_encode(f));
  state.SetComplexityN(formula_stats(f).node_count);
}
BENCHMARK(BM_CompactEncode)->RangeMultiplier(2)->Range(2, 12)->Complexity();

static void BM_CompactDecode(benchmark::State& state) {
  Nat code = compact_encode(nested(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compact_decode(code));
}
BENCHMARK(BM_CompactDecode)->RangeMultiplier(2)->Range(2, 12);

static void BM_PrimePowerEncode(benchmark::State& state) {
  Formula f = nested(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prime_power_encode(f));
}
BENCHMARK(BM_PrimePowerEncode)->DenseRange(1, 4);

static void BM_RfEvalPow(benchmark::State& state) {
  RecDef pow = rf_library("pow");
  bool kernels = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(rf_eval(pow, {3, 7}, 100000000, EvalOptions{kernels}));
}
BENCHMARK(BM_RfEvalPow)->Arg(0)->Arg(1);

static void BM_CompileBeta(benchmark::State& state) {
  RecDef beta = rf_library("beta");
  for (auto _ : state) benchmark::DoNotOptimize(compile(beta));
}
BENCHMARK(BM_CompileBeta)->Unit(benchmark::kMillisecond);

static void BM_WitnessedMul(benchmark::State& state) {
  CompiledFormula c = compile(rf_library("mul"));
  unsigned long a = static_cast<unsigned long>(state.range(0));
  Env env{{c.inputs[0], a}, {c.inputs[1], a}, {c.output, a * a}};
  for (auto _ : state) benchmark::DoNotOptimize(eval_witnessed(c, env));
}
BENCHMARK(BM_WitnessedMul)->Arg(2)->Arg(8)->Arg(32);

static void BM_CheckProof(benchmark::State& state) {
  Proof p = parse_proof(one_plus_one());
  for (auto _ : state) benchmark::DoNotOptimize(check_proof(p));
}
BENCHMARK(BM_CheckProof);

static void BM_ProofOfProgram(benchmark::State& state) {
  Proof p = parse_proof(one_plus_one());
  Nat cert = proof_certificate(p);
  Nat goal = compact_encode(desugar(p.lines.back().formula));
  RecDef d = rf_library("proof_of_c");
  for (auto _ : state) benchmark::DoNotOptimize(rf_eval(d, {cert, goal}, 100000000));
}
BENCHMARK(BM_ProofOfProgram)->Unit(benchmark::kMillisecond);

static void BM_EvalTruth(benchmark::State& state) {
  Formula f = parse_formula("Ax0.((x0 < #200) -> Ex1.((x1 < #200) & (((x1 + x1) = x0) | ((x1 + x1) = Sx0))))");
  for (auto _ : state) benchmark::DoNotOptimize(eval_truth(f, {}, 10));
}
BENCHMARK(BM_EvalTruth);
BENCHMARK_MAIN();
