#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "stw/weighting.hpp"

namespace stw {

enum class ClassifierKind { kNaiveBayes, kLinearSvm };

std::string_view classifier_name(ClassifierKind kind);  // "nb" / "svm"
ClassifierKind parse_classifier(std::string_view text);

// Multinomial naive Bayes with additive smoothing.
struct NBModel {
  std::vector<double> class_log_priors;
  std::vector<double> feature_log_likelihoods;  // [class * n_features + feature]
  double smoothing_alpha = 1.0;
  std::size_t n_features = 0;

  std::size_t num_classes() const { return class_log_priors.size(); }
  double log_likelihood(std::size_t cls, std::size_t feature) const {
    return feature_log_likelihoods[cls * n_features + feature];
  }
  bool operator==(const NBModel&) const = default;
};

// `labels` are class indices in [0, n_classes). Every class needs at least
// one vector and every weight must be >= 0 (see to_nonnegative).
NBModel nb_train(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                 std::size_t n_classes, std::size_t n_features, double alpha = 1.0);

// Per-class joint log score: log prior + sum_j weight_j * log likelihood.
std::vector<double> nb_scores(const NBModel& model, const SparseVector& vector);
// Argmax of nb_scores; ties go to the lower class index.
std::size_t nb_predict(const NBModel& model, const SparseVector& vector);

// How negative weights (Delta TF-IDF produces them) reach naive Bayes.
// kAbsolute keeps each term's magnitude and is unaffected by which class is
// named positive; kClip drops them, which silences every term that leans
// towards the positive class.
enum class NegativeWeights { kAbsolute, kClip };

std::string_view negative_weights_name(NegativeWeights policy);  // "abs" / "clip"
NegativeWeights parse_negative_weights(std::string_view text);

SparseVector clip_negative(const SparseVector& vector);
SparseVector absolute_weights(const SparseVector& vector);
SparseVector to_nonnegative(const SparseVector& vector, NegativeWeights policy);

struct SvmOptions {
  double c = 1.0;
  int epochs = 20;
  std::uint64_t seed = 42;
  // Stops early once the projected-gradient spread of an epoch falls below this.
  double tolerance = 1e-3;
};

// Linear two-class SVM, decision sign(w.x + b).
struct SVMModel {
  std::vector<double> weights;
  double bias = 0.0;
  double regularization_c = 1.0;
  std::size_t positive_class = 1;
  std::size_t negative_class = 0;

  double decision(const SparseVector& vector) const { return vector.dot(weights) + bias; }
  bool operator==(const SVMModel&) const = default;
};

// Minimizes lambda/2 ||w||^2 + (1/n) sum_i max(0, 1 - y_i (w.x_i + b)),
// lambda = 1 / (c n), by dual coordinate descent on the equivalent
// c-scaled problem. The bias is carried as a constant unit feature.
// `positive_class` maps to y = +1; exactly two classes must appear.
SVMModel svm_train(std::span<const SparseVector> vectors, std::span<const std::size_t> labels,
                   std::size_t positive_class, std::size_t n_features, const SvmOptions& options = {});

// Zero decisions go to the positive class.
std::size_t svm_predict(const SVMModel& model, const SparseVector& vector);

// The primal objective above, evaluated at `model`.
double svm_objective(const SVMModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> labels);

// Diagnostic JSON with values rounded to 6 decimals.
void write_model_json(std::ostream& out, const NBModel& model);
void write_model_json(std::ostream& out, const SVMModel& model);

}  // namespace stw
