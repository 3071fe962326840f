#include "stw/eval.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>
#include <omp.h>

#include "stw/random.hpp"

namespace stw {

FoldPlan::FoldPlan(std::size_t k, std::vector<std::uint32_t> assignments)
    : k_(k), assignments_(std::move(assignments)) {
  if (k_ < 2) throw std::invalid_argument("k-fold cross-validation needs k >= 2");
  for (const auto fold : assignments_) {
    if (fold >= k_) throw std::invalid_argument("fold assignment out of range");
  }
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i] != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i] == fold) out.push_back(i);
  }
  return out;
}

FoldPlan stratified_kfold(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k-fold cross-validation needs k >= 2");
  std::vector<std::vector<std::size_t>> members(corpus.num_classes());
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    members[corpus.class_index(corpus.documents[i].label)].push_back(i);
  }

  std::vector<std::uint32_t> assignments(corpus.documents.size(), 0);
  Rng rng(seed);
  for (std::size_t cls = 0; cls < members.size(); ++cls) {
    auto& docs = members[cls];
    if (docs.size() < k) {
      throw std::invalid_argument(fmt::format("class '{}' has {} documents, fewer than k = {}",
                                              corpus.labels[cls], docs.size(), k));
    }
    seeded_shuffle(std::span<std::size_t>(docs), rng);
    for (std::size_t r = 0; r < docs.size(); ++r) assignments[docs[r]] = static_cast<std::uint32_t>(r % k);
  }
  return FoldPlan(k, std::move(assignments));
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> class_order)
    : class_order_(std::move(class_order)), counts_(class_order_.size() * class_order_.size(), 0) {}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t count) {
  if (truth >= num_classes() || predicted >= num_classes()) throw std::out_of_range("class index out of range");
  counts_[truth * num_classes() + predicted] += count;
  total_ += count;
}

std::uint64_t ConfusionMatrix::false_positives(std::size_t cls) const {
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < num_classes(); ++t) {
    if (t != cls) sum += count(t, cls);
  }
  return sum;
}

std::uint64_t ConfusionMatrix::false_negatives(std::size_t cls) const {
  std::uint64_t sum = 0;
  for (std::size_t p = 0; p < num_classes(); ++p) {
    if (p != cls) sum += count(cls, p);
  }
  return sum;
}

std::uint64_t ConfusionMatrix::support(std::size_t cls) const {
  return true_positives(cls) + false_negatives(cls);
}

std::pair<double, double> precision_recall(const ConfusionMatrix& confusion, std::size_t cls) {
  if (cls >= confusion.num_classes()) throw std::out_of_range("class index out of range");
  const double tp = static_cast<double>(confusion.true_positives(cls));
  const double predicted = tp + static_cast<double>(confusion.false_positives(cls));
  const double actual = tp + static_cast<double>(confusion.false_negatives(cls));
  return {predicted > 0.0 ? tp / predicted : 0.0, actual > 0.0 ? tp / actual : 0.0};
}

WeightedScores weighted_scores(const ConfusionMatrix& confusion) {
  if (confusion.total() == 0) throw std::invalid_argument("confusion matrix is empty");
  WeightedScores out;
  const double total = static_cast<double>(confusion.total());
  for (std::size_t i = 0; i < confusion.num_classes(); ++i) {
    const double w = static_cast<double>(confusion.support(i)) / total;
    const auto [p, r] = precision_recall(confusion, i);
    out.precision += w * p;
    out.recall += w * r;
    if (p + r > 0.0) out.f1 += w * 2.0 * p * r / (p + r);
  }
  return out;
}

double weighted_f1(const ConfusionMatrix& confusion) { return weighted_scores(confusion).f1; }

void ExperimentConfig::validate() const {
  if (schemes.empty()) throw std::invalid_argument("no weighting schemes given");
  if (feature_sizes.empty()) throw std::invalid_argument("no feature sizes given");
  if (classifiers.empty()) throw std::invalid_argument("no classifiers given");
  if (k_folds < 2) throw std::invalid_argument("k-fold cross-validation needs k >= 2");
  for (const auto size : feature_sizes) {
    if (size == 0) throw std::invalid_argument("feature sizes must be positive");
  }
}

FoldContext::FoldContext(const InternedCorpus& corpus, const FoldPlan& plan, std::size_t fold) : fold_(fold) {
  if (plan.size() != corpus.size()) throw std::invalid_argument("fold plan does not match the corpus");
  if (fold >= plan.k()) throw std::out_of_range("fold index out of range");
  const auto train = plan.train_indices(fold);
  const auto test = plan.test_indices(fold);

  stats_ = build_vocab_stats(corpus, train);
  chi2_ = chi2_scores(stats_);
  ranking_ = rank_terms(chi2_);

  const auto lexicon_map = lexicon_to_vocab(stats_, corpus);
  for (const auto doc : train) {
    train_bags_.push_back(to_vocab_bag(corpus.bag(doc), lexicon_map));
    train_labels_.push_back(corpus.doc_class(doc));
  }
  for (const auto doc : test) {
    test_bags_.push_back(to_vocab_bag(corpus.bag(doc), lexicon_map));
    test_labels_.push_back(corpus.doc_class(doc));
  }
}

WeightedSplit weigh_split(const FoldContext& context, const SchemeSpec& scheme, std::size_t feature_size,
                          WeighOptions options) {
  WeightedSplit split;
  split.features = context.features(feature_size);
  const auto factors = collection_factors(scheme, context.stats());
  split.train = weigh_bags(context.train_bags(), factors, scheme, &split.features, options);
  split.test = weigh_bags(context.test_bags(), factors, scheme, &split.features, options);
  return split;
}

ClassifierModel fit_classifier(ClassifierKind kind, const FoldContext& context, const WeightedSplit& split,
                               const ExperimentConfig& config) {
  const std::size_t n_features = split.features.size();
  if (kind == ClassifierKind::kNaiveBayes) {
    std::vector<SparseVector> nonnegative;
    nonnegative.reserve(split.train.size());
    for (const auto& v : split.train) nonnegative.push_back(to_nonnegative(v, config.nb_negative));
    return nb_train(nonnegative, context.train_labels(), context.stats().num_classes(), n_features,
                    config.nb_alpha);
  }
  return svm_train(split.train, context.train_labels(), context.stats().positive_class(), n_features,
                   config.svm);
}

ConfusionMatrix score_classifier(const ClassifierModel& model, const FoldContext& context,
                                 const WeightedSplit& split, const ExperimentConfig& config) {
  ConfusionMatrix confusion(context.stats().class_labels());
  const auto labels = context.test_labels();
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    const std::size_t predicted =
        std::holds_alternative<NBModel>(model)
            ? nb_predict(std::get<NBModel>(model), to_nonnegative(split.test[i], config.nb_negative))
            : svm_predict(std::get<SVMModel>(model), split.test[i]);
    confusion.add(labels[i], predicted);
  }
  return confusion;
}

const ReportRow& EvalReport::row(const SchemeSpec& scheme, std::size_t feature_size,
                                 ClassifierKind classifier) const {
  for (const auto& r : rows) {
    if (r.scheme == scheme && r.feature_size == feature_size && r.classifier == classifier) return r;
  }
  throw std::out_of_range("no such report row");
}

EvalReport run_experiment(const LabeledCorpus& corpus, const ExperimentConfig& config) {
  config.validate();
  corpus.validate();

  std::unique_ptr<LabeledCorpus> tokenized;
  const LabeledCorpus* source = &corpus;
  if (!corpus.tokenized) {
    tokenized = std::make_unique<LabeledCorpus>(corpus);
    preprocess_corpus(*tokenized);
    source = tokenized.get();
  }
  const InternedCorpus interned(*source);
  const FoldPlan plan = stratified_kfold(*source, config.k_folds, config.seed);

  std::vector<std::unique_ptr<FoldContext>> contexts;
  for (std::size_t fold = 0; fold < config.k_folds; ++fold) {
    contexts.push_back(std::make_unique<FoldContext>(interned, plan, fold));
  }

  // One task per (fold, scheme, size); every classifier reuses its weighting.
  const std::size_t n_schemes = config.schemes.size();
  const std::size_t n_sizes = config.feature_sizes.size();
  const std::size_t n_classifiers = config.classifiers.size();
  const std::size_t n_tasks = config.k_folds * n_schemes * n_sizes;
  std::vector<std::vector<ConfusionMatrix>> results(n_tasks);
  std::vector<std::string> errors(n_tasks);

  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const auto n_tasks_signed = static_cast<std::ptrdiff_t>(n_tasks);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t t = 0; t < n_tasks_signed; ++t) {
    const auto task = static_cast<std::size_t>(t);
    const std::size_t fold = task / (n_schemes * n_sizes);
    const std::size_t scheme = (task / n_sizes) % n_schemes;
    const std::size_t size = task % n_sizes;
    std::size_t classifier = 0;
    try {
      const auto& context = *contexts[fold];
      const auto split = weigh_split(context, config.schemes[scheme], config.feature_sizes[size], config.weighing);
      for (; classifier < n_classifiers; ++classifier) {
        const auto model = fit_classifier(config.classifiers[classifier], context, split, config);
        results[task].push_back(score_classifier(model, context, split, config));
      }
    } catch (const std::exception& e) {
      errors[task] = fmt::format("cell (scheme={}, feature_size={}, classifier={}, fold={}): {}",
                                 scheme_label(config.schemes[scheme]), config.feature_sizes[size],
                                 classifier < n_classifiers ? classifier_name(config.classifiers[classifier]) : "-",
                                 fold, e.what());
    }
  }
  for (const auto& error : errors) {
    if (!error.empty()) throw std::runtime_error(error);
  }

  EvalReport report;
  report.k_folds = config.k_folds;
  for (std::size_t scheme = 0; scheme < n_schemes; ++scheme) {
    for (std::size_t size = 0; size < n_sizes; ++size) {
      for (std::size_t classifier = 0; classifier < n_classifiers; ++classifier) {
        ReportRow row;
        row.scheme = config.schemes[scheme];
        row.feature_size = config.feature_sizes[size];
        row.classifier = config.classifiers[classifier];
        for (std::size_t fold = 0; fold < config.k_folds; ++fold) {
          const std::size_t task = (fold * n_schemes + scheme) * n_sizes + size;
          row.folds.push_back(weighted_scores(results[task][classifier]));
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

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "scheme,feature_size,classifier,fold,precision_w,recall_w,f1_w\n";
  auto line = [&](const ReportRow& row, const std::string& fold, const WeightedScores& s) {
    out << fmt::format("{},{},{},{},{:.4f},{:.4f},{:.4f}\n", scheme_label(row.scheme), row.feature_size,
                       classifier_name(row.classifier), fold, 100.0 * s.precision, 100.0 * s.recall,
                       100.0 * s.f1);
  };
  for (const auto& row : report.rows) {
    for (std::size_t fold = 0; fold < row.folds.size(); ++fold) line(row, std::to_string(fold), row.folds[fold]);
    line(row, "mean", row.mean);
  }
}

void write_f1_matrix(std::ostream& out, const EvalReport& report) {
  std::vector<ClassifierKind> classifiers;
  std::vector<SchemeSpec> schemes;
  std::vector<std::size_t> sizes;
  for (const auto& row : report.rows) {
    if (std::find(classifiers.begin(), classifiers.end(), row.classifier) == classifiers.end()) {
      classifiers.push_back(row.classifier);
    }
    if (std::find(schemes.begin(), schemes.end(), row.scheme) == schemes.end()) schemes.push_back(row.scheme);
    if (std::find(sizes.begin(), sizes.end(), row.feature_size) == sizes.end()) sizes.push_back(row.feature_size);
  }

  for (const auto classifier : classifiers) {
    out << fmt::format("Mean weighted F1 (%), classifier = {}\n", classifier_name(classifier));
    out << fmt::format("{:>10}", "size");
    for (const auto& scheme : schemes) out << fmt::format(" {:>14}", scheme_label(scheme));
    out << '\n';
    for (const auto size : sizes) {
      out << fmt::format("{:>10}", size);
      for (const auto& scheme : schemes) {
        out << fmt::format(" {:>14.2f}", 100.0 * report.row(scheme, size, classifier).mean.f1);
      }
      out << '\n';
    }
    out << '\n';
  }
}

}  // namespace stw
