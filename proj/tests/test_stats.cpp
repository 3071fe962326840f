#include "stw/stats.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "stw/random.hpp"
#include "test_helpers.hpp"

namespace stw {
namespace {

std::vector<std::size_t> all_indices(const LabeledCorpus& corpus) {
  std::vector<std::size_t> out(corpus.documents.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

LabeledCorpus two_doc_corpus() {
  LabeledCorpus corpus;
  corpus.labels = {"n", "p"};
  corpus.positive_label = "p";
  corpus.documents = {{"d1", "", {"good", "good", "film"}, "p"}, {"d2", "", {"bad"}, "n"}};
  corpus.tokenized = true;
  return corpus;
}

TEST(BuildVocabStats, TwoDocumentExample) {
  const auto corpus = two_doc_corpus();
  const auto stats = build_vocab_stats(corpus, all_indices(corpus));
  EXPECT_EQ(stats.terms(), (std::vector<std::string>{"bad", "film", "good"}));
  const std::size_t n = corpus.class_index("n");
  const std::size_t p = corpus.class_index("p");
  EXPECT_EQ(stats.df(stats.index_of("good"), p), 1u);
  EXPECT_EQ(stats.df(stats.index_of("good"), n), 0u);
  EXPECT_EQ(stats.df(stats.index_of("bad"), p), 0u);
  EXPECT_EQ(stats.df(stats.index_of("bad"), n), 1u);
  EXPECT_EQ(stats.n_docs(), 2u);
  EXPECT_EQ(stats.positive_class(), p);
}

TEST(BuildVocabStats, SubsetMissingAClassIsAnError) {
  const auto corpus = two_doc_corpus();
  const std::vector<std::size_t> only_first{0};
  EXPECT_THROW(build_vocab_stats(corpus, only_first), std::invalid_argument);
  EXPECT_THROW(build_vocab_stats(corpus, std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(BuildVocabStats, ById) {
  const auto corpus = two_doc_corpus();
  const std::vector<std::string> ids{"d2", "d1"};
  EXPECT_EQ(build_vocab_stats(corpus, ids), build_vocab_stats(corpus, all_indices(corpus)));
  EXPECT_THROW(build_vocab_stats(corpus, std::vector<std::string>{"d1", "zzz"}), std::invalid_argument);
}

TEST(BuildVocabStats, UntokenizedCorpusIsAnError) {
  auto corpus = two_doc_corpus();
  corpus.tokenized = false;
  EXPECT_THROW(build_vocab_stats(corpus, all_indices(corpus)), std::invalid_argument);
}

TEST(Contingency, Table2) {
  const auto corpus = testing::table2_corpus();
  const auto stats = build_vocab_stats(corpus, all_indices(corpus));
  const std::size_t pos = corpus.class_index("pos");
  const std::size_t neg = corpus.class_index("neg");
  EXPECT_EQ(contingency(stats, "t1", pos), (Contingency{27, 3, 5, 65}));
  EXPECT_EQ(contingency(stats, "t2", pos), (Contingency{10, 20, 25, 45}));
  EXPECT_EQ(contingency(stats, "t1", neg), (Contingency{5, 65, 27, 3}));
  // The "doc" filler occurs in every document.
  const VocabStats expected({"doc", "t1", "t2"}, {"neg", "pos"}, {70, 30}, {70, 30, 5, 27, 25, 10}, 1);
  EXPECT_EQ(stats, expected);
}

TEST(Contingency, Errors) {
  const auto stats = testing::table2_stats();
  EXPECT_THROW(contingency(stats, "t3", 0), std::invalid_argument);
  EXPECT_THROW(stats.contingency(0, 2), std::out_of_range);
  EXPECT_THROW(stats.index_of("nope"), std::invalid_argument);
  EXPECT_FALSE(stats.find("nope").has_value());
}

TEST(VocabStats, RejectsBrokenInvariants) {
  EXPECT_THROW(VocabStats({"b", "a"}, {"n", "p"}, {1, 1}, {1, 0, 0, 1}, 1), std::invalid_argument);
  EXPECT_THROW(VocabStats({"a", "a"}, {"n", "p"}, {1, 1}, {1, 0, 0, 1}, 1), std::invalid_argument);
  EXPECT_THROW(VocabStats({"a"}, {"n", "p"}, {1, 1}, {2, 0}, 1), std::invalid_argument);
  EXPECT_THROW(VocabStats({"a"}, {"n"}, {1}, {1}, 0), std::invalid_argument);
  EXPECT_THROW(VocabStats({"a"}, {"n", "p"}, {1, 1}, {1, 0, 1}, 1), std::invalid_argument);
  EXPECT_THROW(VocabStats({"a"}, {"n", "p"}, {1, 1}, {1, 0}, 2), std::invalid_argument);
}

TEST(VocabStats, ClassFrequency) {
  const VocabStats stats({"a", "b"}, {"n", "p"}, {3, 3}, {2, 0, 1, 1}, 1);
  EXPECT_EQ(stats.class_frequency(0), 1u);
  EXPECT_EQ(stats.class_frequency(1), 2u);
  EXPECT_EQ(stats.total_df(0), 2u);
}

TEST(Contingency, CellsSumToNAndRolesSwap) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto corpus = testing::random_corpus(rng, 2 + uniform_below(rng, 60), 1 + uniform_below(rng, 30), 10);
    const auto stats = build_vocab_stats(corpus, all_indices(corpus));
    for (std::size_t t = 0; t < stats.size(); ++t) {
      const auto pos = stats.contingency(t, 1);
      const auto neg = stats.contingency(t, 0);
      EXPECT_EQ(pos.total(), static_cast<std::int64_t>(stats.n_docs()));
      EXPECT_EQ(pos.a, neg.c);
      EXPECT_EQ(pos.b, neg.d);
      EXPECT_EQ(pos.c, neg.a);
      EXPECT_EQ(pos.d, neg.b);
      EXPECT_GE(pos.a + pos.c, 1);
    }
  }
}

TEST(BuildVocabStats, DocumentFrequenciesAddOverDisjointSubsets) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto corpus = testing::random_corpus(rng, 40, 25, 12, 4);
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    // Keep both classes on both sides: the first 2 * 4 documents alternate.
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      (i < 8 ? (i % 4 < 2 ? left : right) : (uniform_below(rng, 2) ? left : right)).push_back(i);
    }
    const auto whole = build_vocab_stats(corpus, all_indices(corpus));
    const auto a = build_vocab_stats(corpus, left);
    const auto b = build_vocab_stats(corpus, right);
    for (std::size_t t = 0; t < whole.size(); ++t) {
      for (std::size_t c = 0; c < whole.num_classes(); ++c) {
        std::uint32_t sum = 0;
        if (auto i = a.find(whole.term(t))) sum += a.df(*i, c);
        if (auto i = b.find(whole.term(t))) sum += b.df(*i, c);
        EXPECT_EQ(whole.df(t, c), sum);
      }
    }
  }
}

TEST(BuildVocabStats, InternedPathMatchesStringCounting) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = testing::random_corpus(rng, 80, 50, 20, 5);
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < corpus.documents.size(); i += 1 + uniform_below(rng, 2)) subset.push_back(i);
    subset.push_back(0);
    subset.push_back(1);
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

    // Independent count: a set of distinct tokens per document.
    std::map<std::string, std::vector<std::uint32_t>> expected;
    std::vector<std::uint32_t> sizes(2, 0);
    for (const auto i : subset) {
      const auto& doc = corpus.documents[i];
      const std::size_t cls = corpus.class_index(doc.label);
      ++sizes[cls];
      for (const auto& term : std::set<std::string>(doc.tokens.begin(), doc.tokens.end())) {
        auto& row = expected[term];
        row.resize(2, 0);
        ++row[cls];
      }
    }
    const InternedCorpus interned(corpus);
    const auto stats = build_vocab_stats(interned, subset);
    ASSERT_EQ(stats.size(), expected.size());
    std::size_t t = 0;
    for (const auto& [term, row] : expected) {
      EXPECT_EQ(stats.term(t), term);
      EXPECT_EQ(stats.df(t, 0), row[0]);
      EXPECT_EQ(stats.df(t, 1), row[1]);
      ++t;
    }
    EXPECT_EQ(stats.class_size(0), sizes[0]);
    EXPECT_EQ(stats.class_size(1), sizes[1]);
    EXPECT_EQ(stats, build_vocab_stats(corpus, subset));
  }
}

TEST(InternedCorpus, BagsCountTermsInLexiconOrder) {
  const InternedCorpus interned(two_doc_corpus());
  EXPECT_EQ(interned.lexicon(), (std::vector<std::string>{"bad", "film", "good"}));
  EXPECT_EQ(interned.bag(0), (TermBag{{1, 1}, {2, 2}}));
  EXPECT_EQ(interned.bag(1), (TermBag{{0, 1}}));
  EXPECT_EQ(interned.doc_class(0), 1u);
  EXPECT_EQ(interned.positive_class(), 1u);
}

TEST(LexiconToVocab, DropsUnseenTerms) {
  const auto corpus = two_doc_corpus();
  const InternedCorpus interned(corpus);
  // Stats over a vocabulary that lacks "film".
  const VocabStats stats({"bad", "good"}, {"n", "p"}, {1, 1}, {1, 0, 0, 1}, 1);
  const auto map = lexicon_to_vocab(stats, interned);
  EXPECT_EQ(map, (std::vector<std::int32_t>{0, -1, 1}));
  EXPECT_EQ(to_vocab_bag(interned.bag(0), map), (TermBag{{1, 2}}));
}

TEST(CountTerms, InVocabularyOnly) {
  const auto stats = testing::table2_stats();
  const std::vector<std::string> tokens{"t2", "x", "t1", "t2", "t2"};
  EXPECT_EQ(count_terms(tokens, stats), (TermBag{{0, 1}, {1, 3}}));
}

TEST(WriteStatsTsv, HeaderAndRows) {
  std::ostringstream out;
  write_stats_tsv(out, testing::table2_stats());
  EXPECT_EQ(out.str(), "term\tdf_neg\tdf_pos\nt1\t5\t27\nt2\t25\t10\n");
}

}  // namespace
}  // namespace stw
