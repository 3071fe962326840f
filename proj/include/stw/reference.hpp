#pragma once

// Straightforward single-threaded versions of the parallel kernels. They
// share no code paths with the interned/sharded implementations beyond the
// per-term formulas, and serve as the baseline in tests and benchmarks.

#include <cstddef>
#include <span>
#include <vector>

#include "stw/corpus.hpp"
#include "stw/eval.hpp"
#include "stw/selection.hpp"
#include "stw/stats.hpp"
#include "stw/weighting.hpp"

namespace stw::reference {

void preprocess_corpus(LabeledCorpus& corpus);

// Counts distinct tokens per document straight from the token strings.
VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::size_t> doc_indices);

std::vector<double> chi2_scores(const VocabStats& stats);

std::vector<double> collection_factors(const SchemeSpec& scheme, const VocabStats& stats);

// weigh_document over each document in turn.
std::vector<SparseVector> weigh_documents(std::span<const Document> docs, const VocabStats& stats,
                                          const SchemeSpec& scheme, const FeatureMap* features = nullptr,
                                          WeighOptions options = {});

// Cell-by-cell, fold-by-fold evaluation loop with no task flattening.
EvalReport run_experiment(const LabeledCorpus& corpus, const ExperimentConfig& config);

}  // namespace stw::reference
