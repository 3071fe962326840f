#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stw/stats.hpp"

namespace stw {

// The top-k terms of a vocabulary and their dense feature indices.
class FeatureMap {
 public:
  FeatureMap() = default;
  // `selected_terms` are vocabulary indices of `stats`, in feature order.
  FeatureMap(const VocabStats& stats, std::vector<std::size_t> selected_terms);

  std::size_t size() const { return selected_.size(); }
  const std::vector<std::string>& selected() const { return selected_; }
  std::span<const std::size_t> term_indices() const { return term_indices_; }

  std::optional<std::size_t> index_of(std::string_view term) const;
  // Dense feature index of a vocabulary term, or -1 when not selected.
  std::int32_t feature_of_term(std::size_t vocab_index) const { return feature_of_term_[vocab_index]; }

  bool operator==(const FeatureMap&) const = default;

 private:
  std::vector<std::string> selected_;
  std::vector<std::size_t> term_indices_;
  std::vector<std::int32_t> feature_of_term_;
};

// CHI2_max: the largest per-class chi-square statistic of the term's 2x2
// table. A class with a zero marginal contributes 0.
double chi2_score(const VocabStats& stats, std::size_t term);
double chi2_score(const VocabStats& stats, std::string_view term);

// chi2_score of every vocabulary term, scored in parallel.
std::vector<double> chi2_scores(const VocabStats& stats);

// Vocabulary indices ordered by (score descending, term ascending).
std::vector<std::size_t> rank_terms(std::span<const double> scores);

FeatureMap select_top_k(const VocabStats& stats, std::size_t k);
FeatureMap select_from_ranking(const VocabStats& stats, std::span<const std::size_t> ranking,
                               std::size_t k);

// `rank<TAB>term<TAB>chi2` rows (1-based rank) for the selected terms.
void write_selection_tsv(std::ostream& out, const VocabStats& stats, const FeatureMap& features,
                         std::span<const double> scores);

}  // namespace stw
