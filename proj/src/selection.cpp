#include "stw/selection.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>

namespace stw {

FeatureMap::FeatureMap(const VocabStats& stats, std::vector<std::size_t> selected_terms)
    : term_indices_(std::move(selected_terms)), feature_of_term_(stats.size(), -1) {
  selected_.reserve(term_indices_.size());
  for (std::size_t f = 0; f < term_indices_.size(); ++f) {
    const std::size_t term = term_indices_[f];
    if (term >= stats.size()) throw std::out_of_range("selected term index out of range");
    if (feature_of_term_[term] >= 0) throw std::invalid_argument("term selected twice");
    feature_of_term_[term] = static_cast<std::int32_t>(f);
    selected_.push_back(stats.term(term));
  }
}

std::optional<std::size_t> FeatureMap::index_of(std::string_view term) const {
  auto it = std::find(selected_.begin(), selected_.end(), term);
  if (it == selected_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - selected_.begin());
}

double chi2_score(const VocabStats& stats, std::size_t term) {
  const double n = static_cast<double>(stats.n_docs());
  double best = 0.0;
  for (std::size_t k = 0; k < stats.num_classes(); ++k) {
    const auto [a, b, c, d] = stats.contingency(term, k);
    const double denominator = static_cast<double>(a + c) * static_cast<double>(b + d) *
                               static_cast<double>(a + b) * static_cast<double>(c + d);
    if (denominator == 0.0) continue;
    const double cross = static_cast<double>(a * d - c * b);
    best = std::max(best, n * cross * cross / denominator);
  }
  return best;
}

double chi2_score(const VocabStats& stats, std::string_view term) {
  return chi2_score(stats, stats.index_of(term));
}

std::vector<double> chi2_scores(const VocabStats& stats) {
  std::vector<double> scores(stats.size());
  const auto n = static_cast<std::ptrdiff_t>(stats.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    scores[static_cast<std::size_t>(t)] = chi2_score(stats, static_cast<std::size_t>(t));
  }
  return scores;
}

std::vector<std::size_t> rank_terms(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Vocabulary indices follow term order, so the index breaks ties.
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (scores[x] != scores[y]) return scores[x] > scores[y];
    return x < y;
  });
  return order;
}

FeatureMap select_from_ranking(const VocabStats& stats, std::span<const std::size_t> ranking,
                               std::size_t k) {
  if (k == 0) throw std::invalid_argument("feature count must be positive");
  const std::size_t keep = std::min(k, ranking.size());
  return FeatureMap(stats, std::vector<std::size_t>(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(keep)));
}

FeatureMap select_top_k(const VocabStats& stats, std::size_t k) {
  return select_from_ranking(stats, rank_terms(chi2_scores(stats)), k);
}

void write_selection_tsv(std::ostream& out, const VocabStats& stats, const FeatureMap& features,
                         std::span<const double> scores) {
  if (scores.size() != stats.size()) throw std::invalid_argument("one score per vocabulary term expected");
  out << "rank\tterm\tchi2\n";
  const auto terms = features.term_indices();
  for (std::size_t r = 0; r < terms.size(); ++r) {
    out << fmt::format("{}\t{}\t{:.6f}\n", r + 1, stats.term(terms[r]), scores[terms[r]]);
  }
}

}  // namespace stw
