#include "stw/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>
#include <json.hpp>

#include "stw/random.hpp"

namespace stw {
namespace {

void check_training_set(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                        std::size_t n_features) {
  if (vectors.size() != labels.size()) throw std::invalid_argument("one label per training vector expected");
  if (vectors.empty()) throw std::invalid_argument("training set is empty");
  for (const auto& vector : vectors) {
    if (!vector.empty() && vector.entries().back().index >= n_features) {
      throw std::out_of_range("feature index exceeds the feature count");
    }
  }
}

double round6(double value) { return std::round(value * 1e6) / 1e6; }

std::vector<double> rounded(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (auto& v : out) v = round6(v);
  return out;
}

}  // namespace

std::string_view classifier_name(ClassifierKind kind) {
  return kind == ClassifierKind::kNaiveBayes ? "nb" : "svm";
}

ClassifierKind parse_classifier(std::string_view text) {
  if (text == "nb") return ClassifierKind::kNaiveBayes;
  if (text == "svm") return ClassifierKind::kLinearSvm;
  throw std::invalid_argument(fmt::format("unknown classifier '{}' (expected nb or svm)", text));
}

NBModel nb_train(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                 std::size_t n_classes, std::size_t n_features, double alpha) {
  check_training_set(vectors, labels, n_features);
  if (!(alpha > 0.0)) throw std::invalid_argument("smoothing alpha must be positive");

  std::vector<std::size_t> class_counts(n_classes, 0);
  std::vector<double> sums(n_classes * n_features, 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const std::size_t cls = labels[i];
    if (cls >= n_classes) throw std::out_of_range("class label out of range");
    ++class_counts[cls];
    for (const auto& [index, weight] : vectors[i]) {
      if (weight < 0.0) throw std::invalid_argument("negative feature weight given to naive Bayes");
      sums[cls * n_features + index] += weight;
    }
  }

  NBModel model;
  model.smoothing_alpha = alpha;
  model.n_features = n_features;
  model.class_log_priors.resize(n_classes);
  model.feature_log_likelihoods.resize(n_classes * n_features);
  const double n = static_cast<double>(vectors.size());
  for (std::size_t k = 0; k < n_classes; ++k) {
    if (class_counts[k] == 0) {
      throw std::invalid_argument(fmt::format("class {} has no training vectors", k));
    }
    model.class_log_priors[k] = std::log(static_cast<double>(class_counts[k]) / n);
    const auto row = sums.begin() + static_cast<std::ptrdiff_t>(k * n_features);
    const double total = std::accumulate(row, row + static_cast<std::ptrdiff_t>(n_features), 0.0);
    const double denominator = std::log(total + alpha * static_cast<double>(n_features));
    for (std::size_t j = 0; j < n_features; ++j) {
      model.feature_log_likelihoods[k * n_features + j] = std::log(row[static_cast<std::ptrdiff_t>(j)] + alpha) - denominator;
    }
  }
  return model;
}

std::vector<double> nb_scores(const NBModel& model, const SparseVector& vector) {
  std::vector<double> scores = model.class_log_priors;
  for (const auto& [index, weight] : vector) {
    if (index >= model.n_features) throw std::out_of_range("feature index exceeds the model's features");
    for (std::size_t k = 0; k < scores.size(); ++k) scores[k] += weight * model.log_likelihood(k, index);
  }
  return scores;
}

std::size_t nb_predict(const NBModel& model, const SparseVector& vector) {
  const auto scores = nb_scores(model, vector);
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

SparseVector clip_negative(const SparseVector& vector) {
  std::vector<SparseEntry> kept;
  kept.reserve(vector.size());
  for (const auto& e : vector) {
    if (e.weight > 0.0) kept.push_back(e);
  }
  return SparseVector(std::move(kept));
}

SparseVector absolute_weights(const SparseVector& vector) {
  std::vector<SparseEntry> out(vector.begin(), vector.end());
  for (auto& e : out) e.weight = std::abs(e.weight);
  return SparseVector(std::move(out));
}

SparseVector to_nonnegative(const SparseVector& vector, NegativeWeights policy) {
  return policy == NegativeWeights::kClip ? clip_negative(vector) : absolute_weights(vector);
}

std::string_view negative_weights_name(NegativeWeights policy) {
  return policy == NegativeWeights::kClip ? "clip" : "abs";
}

NegativeWeights parse_negative_weights(std::string_view text) {
  if (text == "abs") return NegativeWeights::kAbsolute;
  if (text == "clip") return NegativeWeights::kClip;
  throw std::invalid_argument(fmt::format("unknown negative-weight policy '{}' (expected abs or clip)", text));
}

SVMModel svm_train(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                   std::size_t positive_class, std::size_t n_features, const SvmOptions& options) {
  check_training_set(vectors, labels, n_features);
  if (!(options.c > 0.0)) throw std::invalid_argument("svm regularization c must be positive");
  if (options.epochs < 1) throw std::invalid_argument("svm epochs must be >= 1");

  SVMModel model;
  model.regularization_c = options.c;
  model.positive_class = positive_class;
  bool has_positive = false;
  bool has_negative = false;
  for (const std::size_t label : labels) {
    if (label == positive_class) {
      has_positive = true;
    } else if (!has_negative) {
      has_negative = true;
      model.negative_class = label;
    } else if (label != model.negative_class) {
      throw std::invalid_argument("svm training needs exactly two classes");
    }
  }
  if (!has_positive || !has_negative) throw std::invalid_argument("svm training set has a single class");

  const std::size_t n = vectors.size();
  std::vector<double> y(n);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = labels[i] == positive_class ? 1.0 : -1.0;
    diag[i] = vectors[i].squared_norm() + 1.0;  // unit bias feature
  }

  model.weights.assign(n_features, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(options.seed);
  const double upper = options.c;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    seeded_shuffle(std::span<std::size_t>(order), rng);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (const std::size_t i : order) {
      const double gradient = y[i] * model.decision(vectors[i]) - 1.0;
      double projected = gradient;
      if (alpha[i] == 0.0) {
        projected = std::min(gradient, 0.0);
      } else if (alpha[i] == upper) {
        projected = std::max(gradient, 0.0);
      }
      pg_max = std::max(pg_max, projected);
      pg_min = std::min(pg_min, projected);
      if (projected == 0.0) continue;

      const double updated = std::clamp(alpha[i] - gradient / diag[i], 0.0, upper);
      const double step = (updated - alpha[i]) * y[i];
      alpha[i] = updated;
      for (const auto& [index, weight] : vectors[i]) model.weights[index] += step * weight;
      model.bias += step;
    }
    if (pg_max - pg_min <= options.tolerance) break;
  }
  return model;
}

std::size_t svm_predict(const SVMModel& model, const SparseVector& vector) {
  return model.decision(vector) >= 0.0 ? model.positive_class : model.negative_class;
}

double svm_objective(const SVMModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> labels) {
  if (vectors.empty() || vectors.size() != labels.size()) {
    throw std::invalid_argument("objective needs a non-empty labeled set");
  }
  const double n = static_cast<double>(vectors.size());
  const double lambda = 1.0 / (model.regularization_c * n);
  double norm = 0.0;
  for (const double w : model.weights) norm += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double y = labels[i] == model.positive_class ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * model.decision(vectors[i]));
  }
  return 0.5 * lambda * norm + hinge / n;
}

void write_model_json(std::ostream& out, const NBModel& model) {
  nlohmann::ordered_json doc;
  doc["type"] = "multinomial_nb";
  doc["smoothing_alpha"] = model.smoothing_alpha;
  doc["n_features"] = model.n_features;
  doc["class_log_priors"] = rounded(model.class_log_priors);
  doc["feature_log_likelihoods"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    doc["feature_log_likelihoods"].push_back(rounded(
        std::span(model.feature_log_likelihoods).subspan(k * model.n_features, model.n_features)));
  }
  out << doc.dump(2) << '\n';
}

void write_model_json(std::ostream& out, const SVMModel& model) {
  nlohmann::ordered_json doc;
  doc["type"] = "linear_svm";
  doc["regularization_c"] = model.regularization_c;
  doc["positive_class"] = model.positive_class;
  doc["negative_class"] = model.negative_class;
  doc["bias"] = round6(model.bias);
  doc["weights"] = rounded(model.weights);
  out << doc.dump(2) << '\n';
}

}  // namespace stw
