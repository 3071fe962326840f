#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stw/corpus.hpp"

namespace stw {

// 2x2 document counts of a (term, class) pair:
//   a: in class, with term      b: in class, without term
//   c: outside class, with term d: outside class, without term
struct Contingency {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  std::int64_t total() const { return a + b + c + d; }
  bool operator==(const Contingency&) const = default;
};

// Per-term, per-class document frequencies of a training set. Terms are
// sorted lexicographically, so a term's index is its rank in that order.
class VocabStats {
 public:
  VocabStats() = default;

  // `df` is row-major: df[term * num_classes + class]. Throws
  // std::invalid_argument when an invariant does not hold.
  VocabStats(std::vector<std::string> terms, std::vector<std::string> class_labels,
             std::vector<std::uint32_t> class_sizes, std::vector<std::uint32_t> df,
             std::size_t positive_class);

  std::size_t size() const { return terms_.size(); }
  std::size_t num_classes() const { return class_labels_.size(); }
  std::uint64_t n_docs() const { return n_docs_; }
  std::size_t positive_class() const { return positive_class_; }

  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t index) const { return terms_[index]; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  std::span<const std::uint32_t> class_sizes() const { return class_sizes_; }
  std::uint32_t class_size(std::size_t cls) const { return class_sizes_[cls]; }

  std::optional<std::size_t> find(std::string_view term) const;
  // Like find(), but throws std::invalid_argument naming the unknown term.
  std::size_t index_of(std::string_view term) const;

  std::span<const std::uint32_t> df_row(std::size_t term) const {
    return {df_.data() + term * num_classes(), num_classes()};
  }
  std::uint32_t df(std::size_t term, std::size_t cls) const { return df_[term * num_classes() + cls]; }
  std::uint32_t total_df(std::size_t term) const { return total_df_[term]; }
  // Number of classes in which the term occurs at least once.
  std::size_t class_frequency(std::size_t term) const;

  Contingency contingency(std::size_t term, std::size_t cls) const;

  bool operator==(const VocabStats& other) const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::string> class_labels_;
  std::vector<std::uint32_t> class_sizes_;
  std::vector<std::uint32_t> df_;
  std::vector<std::uint32_t> total_df_;
  std::uint64_t n_docs_ = 0;
  std::size_t positive_class_ = 0;
};

Contingency contingency(const VocabStats& stats, std::string_view term, std::size_t class_index);

// One document's term counts, sorted by term id; every tf is >= 1.
struct TermCount {
  std::uint32_t term;
  std::uint32_t tf;
  bool operator==(const TermCount&) const = default;
};
using TermBag = std::vector<TermCount>;

// A tokenized corpus with every token interned into a corpus-wide lexicon.
// Lexicon ids follow lexicographic order, as VocabStats term indices do.
class InternedCorpus {
 public:
  explicit InternedCorpus(const LabeledCorpus& corpus);

  std::size_t size() const { return bags_.size(); }
  const std::vector<std::string>& lexicon() const { return lexicon_; }
  const TermBag& bag(std::size_t doc) const { return bags_[doc]; }
  std::span<const TermBag> bags() const { return bags_; }
  std::size_t doc_class(std::size_t doc) const { return doc_classes_[doc]; }
  std::span<const std::size_t> doc_classes() const { return doc_classes_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  std::size_t num_classes() const { return class_labels_.size(); }
  std::size_t positive_class() const { return positive_class_; }

 private:
  std::vector<std::string> lexicon_;
  std::vector<TermBag> bags_;
  std::vector<std::size_t> doc_classes_;
  std::vector<std::string> class_labels_;
  std::size_t positive_class_ = 0;
};

// DF table over the documents at `doc_indices`. Counts are accumulated in
// per-thread shards and summed sequentially.
VocabStats build_vocab_stats(const InternedCorpus& corpus, std::span<const std::size_t> doc_indices);
VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::size_t> doc_indices);
VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::string> doc_ids);

// Maps every lexicon id of `corpus` to its index in `stats`, or -1.
std::vector<std::int32_t> lexicon_to_vocab(const VocabStats& stats, const InternedCorpus& corpus);

// Re-expresses a lexicon-space bag in the vocabulary of `stats`, dropping
// out-of-vocabulary terms.
TermBag to_vocab_bag(const TermBag& bag, std::span<const std::int32_t> lexicon_map);

// Counts the in-vocabulary tokens of a document.
TermBag count_terms(std::span<const std::string> tokens, const VocabStats& stats);

// `term<TAB>df_class0<TAB>df_class1...`, preceded by a header line.
void write_stats_tsv(std::ostream& out, const VocabStats& stats);

}  // namespace stw
