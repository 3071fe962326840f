// Serial reference kernels against their OpenMP counterparts on a synthetic
// corpus. The Arg of the parallel variants is the thread count.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "stw/eval.hpp"
#include "stw/reference.hpp"
#include "stw/selection.hpp"
#include "stw/stats.hpp"
#include "stw/weighting.hpp"
#include "test_helpers.hpp"

namespace {

using namespace stw;

const LabeledCorpus& corpus() {
  static const LabeledCorpus instance = [] {
    Rng rng(2024);
    return testing::random_corpus(rng, 4000, 20000, 200, 100);
  }();
  return instance;
}

const std::vector<std::size_t>& all_docs() {
  static const std::vector<std::size_t> indices = [] {
    std::vector<std::size_t> out(corpus().documents.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }();
  return indices;
}

const VocabStats& stats() {
  static const VocabStats instance = reference::build_vocab_stats(corpus(), all_docs());
  return instance;
}

class ThreadScope {
 public:
  explicit ThreadScope(int threads) : saved_(omp_get_max_threads()) { omp_set_num_threads(threads); }
  ~ThreadScope() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

void BM_VocabStatsReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::build_vocab_stats(corpus(), all_docs()));
}
BENCHMARK(BM_VocabStatsReference)->Unit(benchmark::kMillisecond);

void BM_VocabStatsParallel(benchmark::State& state) {
  const ThreadScope scope(static_cast<int>(state.range(0)));
  const InternedCorpus interned(corpus());
  for (auto _ : state) benchmark::DoNotOptimize(build_vocab_stats(interned, all_docs()));
}
BENCHMARK(BM_VocabStatsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Chi2Reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::chi2_scores(stats()));
}
BENCHMARK(BM_Chi2Reference)->Unit(benchmark::kMicrosecond);

void BM_Chi2Parallel(benchmark::State& state) {
  const ThreadScope scope(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chi2_scores(stats()));
}
BENCHMARK(BM_Chi2Parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

const SchemeSpec kScheme{SchemeKind::kSqrtTfIgmImp, 7.0};

void BM_WeighReference(benchmark::State& state) {
  const auto features = select_top_k(stats(), 5000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::weigh_documents(corpus().documents, stats(), kScheme, &features));
  }
}
BENCHMARK(BM_WeighReference)->Unit(benchmark::kMillisecond);

void BM_WeighParallel(benchmark::State& state) {
  const ThreadScope scope(static_cast<int>(state.range(0)));
  const auto features = select_top_k(stats(), 5000);
  const InternedCorpus interned(corpus());
  const auto map = lexicon_to_vocab(stats(), interned);
  std::vector<TermBag> bags;
  for (const auto& bag : interned.bags()) bags.push_back(to_vocab_bag(bag, map));
  for (auto _ : state) {
    const auto factors = collection_factors(kScheme, stats());
    benchmark::DoNotOptimize(weigh_bags(bags, factors, kScheme, &features));
  }
}
BENCHMARK(BM_WeighParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

ExperimentConfig grid(int threads) {
  ExperimentConfig config;
  config.schemes = {{SchemeKind::kTfIdf}, {SchemeKind::kTfRf}, {SchemeKind::kTfIgm}, {SchemeKind::kTfIdfcRf}};
  config.feature_sizes = {500, 4000};
  config.classifiers = {ClassifierKind::kNaiveBayes, ClassifierKind::kLinearSvm};
  config.threads = threads;
  return config;
}

const LabeledCorpus& small_corpus() {
  static const LabeledCorpus instance = [] {
    Rng rng(7);
    return testing::random_corpus(rng, 1000, 8000, 120, 100);
  }();
  return instance;
}

void BM_ExperimentReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::run_experiment(small_corpus(), grid(1)));
}
BENCHMARK(BM_ExperimentReference)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_ExperimentParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const ThreadScope scope(threads);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(small_corpus(), grid(threads)));
}
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
