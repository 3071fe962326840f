#include "stw/reference.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace stw::reference {

void preprocess_corpus(LabeledCorpus& corpus) {
  for (auto& doc : corpus.documents) doc.tokens = preprocess(doc.raw_text);
  corpus.tokenized = true;
}

VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::size_t> doc_indices) {
  if (!corpus.tokenized) throw std::invalid_argument("corpus is not tokenized; run preprocess_corpus first");
  if (doc_indices.empty()) throw std::invalid_argument("training subset is empty");
  const std::size_t m = corpus.num_classes();
  std::vector<std::uint32_t> class_sizes(m, 0);
  std::map<std::string, std::vector<std::uint32_t>> table;
  for (const std::size_t i : doc_indices) {
    const auto& doc = corpus.documents.at(i);
    const std::size_t cls = corpus.class_index(doc.label);
    ++class_sizes[cls];
    const std::set<std::string> distinct(doc.tokens.begin(), doc.tokens.end());
    for (const auto& token : distinct) {
      auto& row = table[token];
      row.resize(m, 0);
      ++row[cls];
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (class_sizes[k] == 0) throw std::invalid_argument("a class has no training documents");
  }
  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;
  for (const auto& [term, row] : table) {
    terms.push_back(term);
    df.insert(df.end(), row.begin(), row.end());
  }
  return VocabStats(std::move(terms), corpus.labels, std::move(class_sizes), std::move(df),
                    corpus.positive_index());
}

std::vector<double> chi2_scores(const VocabStats& stats) {
  std::vector<double> scores;
  scores.reserve(stats.size());
  for (std::size_t t = 0; t < stats.size(); ++t) scores.push_back(chi2_score(stats, t));
  return scores;
}

std::vector<double> collection_factors(const SchemeSpec& scheme, const VocabStats& stats) {
  std::vector<double> factors;
  factors.reserve(stats.size());
  for (std::size_t t = 0; t < stats.size(); ++t) factors.push_back(collection_factor(scheme, stats, t));
  return factors;
}

std::vector<SparseVector> weigh_documents(std::span<const Document> docs, const VocabStats& stats,
                                          const SchemeSpec& scheme, const FeatureMap* features,
                                          WeighOptions options) {
  std::vector<SparseVector> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) out.push_back(weigh_document(doc, stats, scheme, features, options));
  return out;
}

EvalReport run_experiment(const LabeledCorpus& corpus, const ExperimentConfig& config) {
  config.validate();
  LabeledCorpus tokenized = corpus;
  if (!tokenized.tokenized) reference::preprocess_corpus(tokenized);
  const InternedCorpus interned(tokenized);
  const FoldPlan plan = stratified_kfold(tokenized, config.k_folds, config.seed);

  EvalReport report;
  report.k_folds = config.k_folds;
  for (const auto& scheme : config.schemes) {
    for (const auto size : config.feature_sizes) {
      for (const auto classifier : config.classifiers) {
        ReportRow row{scheme, size, classifier, {}, {}};
        for (std::size_t fold = 0; fold < config.k_folds; ++fold) {
          const FoldContext context(interned, plan, fold);
          const auto split = weigh_split(context, scheme, size, config.weighing);
          const auto model = fit_classifier(classifier, context, split, config);
          row.folds.push_back(weighted_scores(score_classifier(model, context, split, config)));
        }
        for (const auto& s : row.folds) {
          row.mean.precision += s.precision;
          row.mean.recall += s.recall;
          row.mean.f1 += s.f1;
        }
        const double k = static_cast<double>(config.k_folds);
        row.mean.precision /= k;
        row.mean.recall /= k;
        row.mean.f1 /= k;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

}  // namespace stw::reference
