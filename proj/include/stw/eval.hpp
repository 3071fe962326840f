#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stw/classify.hpp"
#include "stw/corpus.hpp"
#include "stw/selection.hpp"
#include "stw/stats.hpp"
#include "stw/weighting.hpp"

namespace stw {

// Fold index of every document.
class FoldPlan {
 public:
  FoldPlan(std::size_t k, std::vector<std::uint32_t> assignments);

  std::size_t k() const { return k_; }
  std::size_t size() const { return assignments_.size(); }
  std::span<const std::uint32_t> assignments() const { return assignments_; }
  std::uint32_t fold_of(std::size_t doc) const { return assignments_[doc]; }

  // Ascending document indices.
  std::vector<std::size_t> train_indices(std::size_t fold) const;
  std::vector<std::size_t> test_indices(std::size_t fold) const;

  bool operator==(const FoldPlan&) const = default;

 private:
  std::size_t k_;
  std::vector<std::uint32_t> assignments_;
};

// Within each class (in corpus order), documents are shuffled with a seeded
// Fisher-Yates pass over std::mt19937_64 and dealt to folds round-robin.
FoldPlan stratified_kfold(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed);

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> class_order);

  void add(std::size_t truth, std::size_t predicted, std::uint64_t count = 1);

  std::size_t num_classes() const { return class_order_.size(); }
  const std::vector<std::string>& class_order() const { return class_order_; }
  std::uint64_t count(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * num_classes() + predicted];
  }
  std::uint64_t total() const { return total_; }

  std::uint64_t true_positives(std::size_t cls) const { return count(cls, cls); }
  std::uint64_t false_positives(std::size_t cls) const;
  std::uint64_t false_negatives(std::size_t cls) const;
  std::uint64_t support(std::size_t cls) const;  // true-class size

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> class_order_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// (precision, recall) of one class; a zero denominator gives 0.
std::pair<double, double> precision_recall(const ConfusionMatrix& confusion, std::size_t cls);

struct WeightedScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool operator==(const WeightedScores&) const = default;
};

// Support-weighted averages of per-class precision, recall and F1.
WeightedScores weighted_scores(const ConfusionMatrix& confusion);
double weighted_f1(const ConfusionMatrix& confusion);

struct ExperimentConfig {
  std::vector<SchemeSpec> schemes;
  std::vector<std::size_t> feature_sizes;
  std::vector<ClassifierKind> classifiers;
  std::size_t k_folds = 5;
  std::uint64_t seed = 42;
  double nb_alpha = 1.0;
  NegativeWeights nb_negative = NegativeWeights::kAbsolute;
  SvmOptions svm;
  WeighOptions weighing;
  int threads = 0;  // 0: OpenMP default

  void validate() const;
};

// Training-side state of one fold: DF table and chi-square ranking built
// from the training partition only, plus both partitions as vocabulary bags.
class FoldContext {
 public:
  FoldContext(const InternedCorpus& corpus, const FoldPlan& plan, std::size_t fold);

  std::size_t fold() const { return fold_; }
  const VocabStats& stats() const { return stats_; }
  std::span<const double> chi2() const { return chi2_; }
  std::span<const std::size_t> ranking() const { return ranking_; }
  std::span<const TermBag> train_bags() const { return train_bags_; }
  std::span<const TermBag> test_bags() const { return test_bags_; }
  std::span<const std::size_t> train_labels() const { return train_labels_; }
  std::span<const std::size_t> test_labels() const { return test_labels_; }

  FeatureMap features(std::size_t k) const { return select_from_ranking(stats_, ranking_, k); }

 private:
  std::size_t fold_;
  VocabStats stats_;
  std::vector<double> chi2_;
  std::vector<std::size_t> ranking_;
  std::vector<TermBag> train_bags_;
  std::vector<TermBag> test_bags_;
  std::vector<std::size_t> train_labels_;
  std::vector<std::size_t> test_labels_;
};

struct WeightedSplit {
  FeatureMap features;
  std::vector<SparseVector> train;
  std::vector<SparseVector> test;
};

// Both partitions weighted with training statistics, in feature space.
WeightedSplit weigh_split(const FoldContext& context, const SchemeSpec& scheme, std::size_t feature_size,
                          WeighOptions options = {});

using ClassifierModel = std::variant<NBModel, SVMModel>;

// Naive Bayes sees both partitions through config.nb_negative.

ClassifierModel fit_classifier(ClassifierKind kind, const FoldContext& context, const WeightedSplit& split,
                               const ExperimentConfig& config);
ConfusionMatrix score_classifier(const ClassifierModel& model, const FoldContext& context,
                                 const WeightedSplit& split, const ExperimentConfig& config);

struct ReportRow {
  SchemeSpec scheme;
  std::size_t feature_size = 0;
  ClassifierKind classifier = ClassifierKind::kNaiveBayes;
  std::vector<WeightedScores> folds;
  WeightedScores mean;

  bool operator==(const ReportRow&) const = default;
};

struct EvalReport {
  std::size_t k_folds = 0;
  std::vector<ReportRow> rows;  // ordered by (scheme, feature size, classifier)

  const ReportRow& row(const SchemeSpec& scheme, std::size_t feature_size, ClassifierKind classifier) const;
};

// Stratified k-fold evaluation of every (scheme, feature size, classifier)
// cell. Cells run in parallel; the report order does not depend on it.
EvalReport run_experiment(const LabeledCorpus& corpus, const ExperimentConfig& config);

// `scheme,feature_size,classifier,fold,precision_w,recall_w,f1_w`, one row
// per fold plus a `mean` row per cell; percent scale, 4 decimals.
void write_report_csv(std::ostream& out, const EvalReport& report);

// Mean weighted F1 (%) as one size-by-scheme table per classifier.
void write_f1_matrix(std::ostream& out, const EvalReport& report);

}  // namespace stw
