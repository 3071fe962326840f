#include "stw/stats.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/core.h>

namespace stw {

VocabStats::VocabStats(std::vector<std::string> terms, std::vector<std::string> class_labels,
                       std::vector<std::uint32_t> class_sizes, std::vector<std::uint32_t> df,
                       std::size_t positive_class)
    : terms_(std::move(terms)),
      class_labels_(std::move(class_labels)),
      class_sizes_(std::move(class_sizes)),
      df_(std::move(df)),
      positive_class_(positive_class) {
  const std::size_t m = class_labels_.size();
  if (m < 2) throw std::invalid_argument("vocabulary statistics need at least 2 classes");
  if (class_sizes_.size() != m) throw std::invalid_argument("one class size per class label expected");
  if (positive_class_ >= m) throw std::invalid_argument("positive class index out of range");
  if (df_.size() != terms_.size() * m) throw std::invalid_argument("df table has the wrong shape");
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (!(terms_[i - 1] < terms_[i])) {
      throw std::invalid_argument("vocabulary terms must be sorted and distinct");
    }
  }
  n_docs_ = std::accumulate(class_sizes_.begin(), class_sizes_.end(), std::uint64_t{0});

  total_df_.resize(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    std::uint32_t total = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::uint32_t value = df_[t * m + k];
      if (value > class_sizes_[k]) {
        throw std::invalid_argument(fmt::format("df of '{}' exceeds the size of class '{}'",
                                                terms_[t], class_labels_[k]));
      }
      total += value;
    }
    if (total == 0) {
      throw std::invalid_argument(fmt::format("term '{}' has zero document frequency", terms_[t]));
    }
    total_df_[t] = total;
  }
}

std::optional<std::size_t> VocabStats::find(std::string_view term) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == terms_.end() || *it != term) return std::nullopt;
  return static_cast<std::size_t>(it - terms_.begin());
}

std::size_t VocabStats::index_of(std::string_view term) const {
  if (auto index = find(term)) return *index;
  throw std::invalid_argument(fmt::format("unknown term '{}'", term));
}

std::size_t VocabStats::class_frequency(std::size_t term) const {
  const auto row = df_row(term);
  return static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](auto v) { return v > 0; }));
}

Contingency VocabStats::contingency(std::size_t term, std::size_t cls) const {
  if (term >= size()) throw std::out_of_range("term index out of range");
  if (cls >= num_classes()) throw std::out_of_range("class index out of range");
  Contingency out;
  out.a = df(term, cls);
  out.b = static_cast<std::int64_t>(class_sizes_[cls]) - out.a;
  out.c = static_cast<std::int64_t>(total_df(term)) - out.a;
  out.d = static_cast<std::int64_t>(n_docs_) - out.a - out.b - out.c;
  return out;
}

bool VocabStats::operator==(const VocabStats& other) const {
  return terms_ == other.terms_ && class_labels_ == other.class_labels_ &&
         class_sizes_ == other.class_sizes_ && df_ == other.df_ &&
         positive_class_ == other.positive_class_;
}

Contingency contingency(const VocabStats& stats, std::string_view term, std::size_t class_index) {
  return stats.contingency(stats.index_of(term), class_index);
}

InternedCorpus::InternedCorpus(const LabeledCorpus& corpus)
    : class_labels_(corpus.labels), positive_class_(corpus.positive_index()) {
  if (!corpus.tokenized) throw std::invalid_argument("corpus is not tokenized; run preprocess_corpus first");
  const std::size_t n = corpus.documents.size();
  const auto n_signed = static_cast<std::ptrdiff_t>(n);

  // Distinct tokens of each document with their counts.
  std::vector<std::vector<std::pair<std::string_view, std::uint32_t>>> counted(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n_signed; ++i) {
    const auto& tokens = corpus.documents[static_cast<std::size_t>(i)].tokens;
    std::vector<std::string_view> sorted(tokens.begin(), tokens.end());
    std::sort(sorted.begin(), sorted.end());
    auto& out = counted[static_cast<std::size_t>(i)];
    for (const auto& token : sorted) {
      if (!out.empty() && out.back().first == token) {
        ++out.back().second;
      } else {
        out.emplace_back(token, 1);
      }
    }
  }

  std::vector<std::string_view> all;
  for (const auto& doc : counted) {
    for (const auto& [token, tf] : doc) all.push_back(token);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  lexicon_.assign(all.begin(), all.end());

  bags_.resize(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n_signed; ++i) {
    const auto& doc = counted[static_cast<std::size_t>(i)];
    auto& bag = bags_[static_cast<std::size_t>(i)];
    bag.reserve(doc.size());
    for (const auto& [token, tf] : doc) {
      const auto id = std::lower_bound(all.begin(), all.end(), token) - all.begin();
      bag.push_back({static_cast<std::uint32_t>(id), tf});
    }
  }

  doc_classes_.reserve(n);
  for (const auto& doc : corpus.documents) doc_classes_.push_back(corpus.class_index(doc.label));
}

VocabStats build_vocab_stats(const InternedCorpus& corpus, std::span<const std::size_t> doc_indices) {
  if (doc_indices.empty()) throw std::invalid_argument("training subset is empty");
  const std::size_t m = corpus.num_classes();
  const std::size_t lexicon_size = corpus.lexicon().size();

  std::vector<std::uint32_t> class_sizes(m, 0);
  for (const std::size_t doc : doc_indices) {
    if (doc >= corpus.size()) throw std::out_of_range("document index out of range");
    ++class_sizes[corpus.doc_class(doc)];
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (class_sizes[k] == 0) {
      throw std::invalid_argument(
          fmt::format("class '{}' has no training documents", corpus.class_labels()[k]));
    }
  }

  std::vector<std::uint32_t> counts(lexicon_size * m, 0);
  const auto n_signed = static_cast<std::ptrdiff_t>(doc_indices.size());
#pragma omp parallel
  {
    std::vector<std::uint32_t> shard(lexicon_size * m, 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n_signed; ++i) {
      const std::size_t doc = doc_indices[static_cast<std::size_t>(i)];
      const std::size_t cls = corpus.doc_class(doc);
      for (const auto& entry : corpus.bag(doc)) ++shard[entry.term * m + cls];
    }
    // Shards are combined one at a time.
#pragma omp critical(stw_df_combine)
    for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += shard[j];
  }

  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;
  for (std::size_t id = 0; id < lexicon_size; ++id) {
    const auto begin = counts.begin() + static_cast<std::ptrdiff_t>(id * m);
    if (std::any_of(begin, begin + static_cast<std::ptrdiff_t>(m), [](auto v) { return v > 0; })) {
      terms.push_back(corpus.lexicon()[id]);
      df.insert(df.end(), begin, begin + static_cast<std::ptrdiff_t>(m));
    }
  }
  return VocabStats(std::move(terms), corpus.class_labels(), std::move(class_sizes), std::move(df),
                    corpus.positive_class());
}

VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::size_t> doc_indices) {
  return build_vocab_stats(InternedCorpus(corpus), doc_indices);
}

VocabStats build_vocab_stats(const LabeledCorpus& corpus, std::span<const std::string> doc_ids) {
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) position.emplace(corpus.documents[i].id, i);
  std::vector<std::size_t> indices;
  indices.reserve(doc_ids.size());
  for (const auto& id : doc_ids) {
    auto it = position.find(id);
    if (it == position.end()) throw std::invalid_argument(fmt::format("unknown document id '{}'", id));
    indices.push_back(it->second);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return build_vocab_stats(corpus, indices);
}

std::vector<std::int32_t> lexicon_to_vocab(const VocabStats& stats, const InternedCorpus& corpus) {
  const auto& lexicon = corpus.lexicon();
  std::vector<std::int32_t> map(lexicon.size(), -1);
  std::size_t t = 0;
  for (std::size_t id = 0; id < lexicon.size() && t < stats.size(); ++id) {
    if (lexicon[id] == stats.term(t)) map[id] = static_cast<std::int32_t>(t++);
  }
  if (t != stats.size()) throw std::invalid_argument("vocabulary is not a subset of the corpus lexicon");
  return map;
}

TermBag to_vocab_bag(const TermBag& bag, std::span<const std::int32_t> lexicon_map) {
  TermBag out;
  out.reserve(bag.size());
  for (const auto& entry : bag) {
    const std::int32_t index = lexicon_map[entry.term];
    if (index >= 0) out.push_back({static_cast<std::uint32_t>(index), entry.tf});
  }
  return out;
}

TermBag count_terms(std::span<const std::string> tokens, const VocabStats& stats) {
  std::vector<std::uint32_t> indices;
  indices.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (auto index = stats.find(token)) indices.push_back(static_cast<std::uint32_t>(*index));
  }
  std::sort(indices.begin(), indices.end());
  TermBag bag;
  for (const auto index : indices) {
    if (!bag.empty() && bag.back().term == index) {
      ++bag.back().tf;
    } else {
      bag.push_back({index, 1});
    }
  }
  return bag;
}

void write_stats_tsv(std::ostream& out, const VocabStats& stats) {
  out << "term";
  for (const auto& label : stats.class_labels()) out << "\tdf_" << label;
  out << '\n';
  for (std::size_t t = 0; t < stats.size(); ++t) {
    out << stats.term(t);
    for (const auto value : stats.df_row(t)) out << '\t' << value;
    out << '\n';
  }
}

}  // namespace stw
