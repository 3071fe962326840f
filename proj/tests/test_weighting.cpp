#include "stw/weighting.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "stw/random.hpp"
#include "test_helpers.hpp"

namespace stw {
namespace {

// Published values are printed with 4 decimals.
constexpr double kPrinted = 1e-4;
// Values computed here by hand or in an independent script.
constexpr double kOracle = 1e-6;

class Table2 : public ::testing::Test {
 protected:
  VocabStats stats = testing::table2_stats();
};

TEST_F(Table2, Idf) {
  EXPECT_NEAR(idf_factor(stats, "t2"), 1.0498, kPrinted);
  // The published t1 cell (0.4949) is the base-10 value; ln(100/32) is used.
  EXPECT_NEAR(idf_factor(stats, "t1"), std::log(100.0 / 32.0), 1e-12);
  EXPECT_NEAR(idf_factor(stats, "t1"), 1.139434, kOracle);
}

TEST_F(Table2, DeltaIdf) {
  EXPECT_NEAR(delta_idf_factor(stats, "t1"), -3.6510, kPrinted);
  EXPECT_NEAR(delta_idf_factor(stats, "t1"), -3.650932, kOracle);
  EXPECT_NEAR(delta_idf_factor(stats, "t2"), 0.0995, kPrinted);
}

TEST_F(Table2, IdfIcf) {
  EXPECT_NEAR(idf_icf_factor(stats, "t2"), 1.0498, kPrinted);
  // Both terms occur in both classes, so the ICF multiplier is exactly 1.
  EXPECT_EQ(idf_icf_factor(stats, "t1"), idf_factor(stats, "t1"));
}

TEST_F(Table2, Rf) {
  EXPECT_NEAR(rf_factor(stats, "t1"), 2.8875, kPrinted);
  EXPECT_NEAR(rf_factor(stats, "t2"), 1.2630, kPrinted);
}

TEST_F(Table2, Igm) {
  EXPECT_NEAR(igm_factor(stats, "t1"), 0.7297, kPrinted);
  EXPECT_DOUBLE_EQ(igm_factor(stats, "t1"), 27.0 / 37.0);
  EXPECT_NEAR(igm_factor(stats, "t2"), 0.5556, kPrinted);
  EXPECT_DOUBLE_EQ(igm_factor(stats, "t2"), 25.0 / 45.0);
}

TEST_F(Table2, IgmImp) {
  EXPECT_NEAR(igm_imp_factor(stats, "t1"), 0.7288, kPrinted);
  EXPECT_NEAR(igm_imp_factor(stats, "t2"), 0.5501, kPrinted);
  EXPECT_NEAR(igm_imp_factor(stats, "t2"), 25.0 / (45.0 + std::log10(70.0 / 25.0)), 1e-12);
}

TEST_F(Table2, IdfcRf) {
  EXPECT_NEAR(idfc_rf_factor(stats, "t1"), 20.9128, kPrinted);
  // The published t2 cell (21.7681) does not satisfy the formula.
  EXPECT_NEAR(idfc_rf_factor(stats, "t2"), 11.552888, kOracle);
}

TEST_F(Table2, UnknownTerm) {
  EXPECT_THROW(idf_factor(stats, "t3"), std::invalid_argument);
  EXPECT_THROW(idf_factor(stats, std::size_t{5}), std::out_of_range);
}

TEST(Factors, EdgeCases) {
  // Term in every document, 50/50 classes.
  const VocabStats everywhere({"all"}, {"n", "p"}, {50, 50}, {50, 50}, 1);
  EXPECT_EQ(idf_factor(everywhere, "all"), 0.0);
  EXPECT_EQ(idfc_rf_factor(everywhere, "all"), 0.0);
  EXPECT_EQ(delta_idf_factor(everywhere, "all"), 0.0);

  // Balanced null case: A = C with equal class sizes.
  const VocabStats balanced({"x"}, {"n", "p"}, {40, 40}, {7, 7}, 1);
  EXPECT_EQ(delta_idf_factor(balanced, "x"), 0.0);

  // Only the negative class has the term.
  const VocabStats negative_only({"x"}, {"n", "p"}, {50, 50}, {10, 0}, 1);
  EXPECT_EQ(rf_factor(negative_only, "x"), 1.0);
  EXPECT_EQ(igm_factor(negative_only, "x"), 1.0);
  EXPECT_NEAR(idf_icf_factor(negative_only, "x"), std::log(10.0) * (1.0 + std::log(2.0)), 1e-12);
  EXPECT_NEAR(idf_icf_factor(negative_only, "x"), 3.898615, kOracle);

  // f_1 equals the size of its class: the correction vanishes.
  const VocabStats saturated({"x"}, {"n", "p"}, {20, 30}, {4, 30}, 1);
  EXPECT_EQ(igm_imp_factor(saturated, "x"), igm_factor(saturated, "x"));
}

TEST(Factors, IgmTiesUseLowerClassIndex) {
  // Equal DFs in classes of size 10 and 40: D_total comes from class 0.
  const VocabStats tie({"x"}, {"a", "b"}, {10, 40}, {5, 5}, 1);
  EXPECT_DOUBLE_EQ(igm_factor(tie, "x"), 5.0 / 15.0);
  EXPECT_DOUBLE_EQ(igm_imp_factor(tie, "x"), 5.0 / (15.0 + std::log10(10.0 / 5.0)));
}

TEST(Factors, ThreeClassIgmAndIcf) {
  const VocabStats stats({"x"}, {"a", "b", "c"}, {10, 10, 10}, {2, 8, 0}, 1);
  EXPECT_DOUBLE_EQ(igm_factor(stats, "x"), 8.0 / (8.0 + 2.0 * 2.0 + 0.0 * 3.0));
  EXPECT_NEAR(idf_icf_factor(stats, "x"), std::log(3.0) * (1.0 + std::log(1.5)), 1e-12);
}

TEST(LocalFactor, Examples) {
  EXPECT_EQ(local_factor({SchemeKind::kTfIgm}, 9), 9.0);
  EXPECT_EQ(local_factor({SchemeKind::kSqrtTfIgm}, 9), 3.0);
  EXPECT_NEAR(local_factor({SchemeKind::kTfIdfcRf}, 2), 1.41421, 1e-5);
  EXPECT_EQ(local_factor({SchemeKind::kSqrtTfIgmImp}, 16), 4.0);
  EXPECT_EQ(local_factor({SchemeKind::kTfRf}, 3), 3.0);
}

TEST_F(Table2, CollectionFactor) {
  EXPECT_NEAR(collection_factor({SchemeKind::kTfIgm, 7.0}, stats, "t1"), 6.1081, kPrinted);
  EXPECT_NEAR(collection_factor({SchemeKind::kTfIgm, 7.0}, stats, "t1"), 6.108108, kOracle);
  EXPECT_EQ(collection_factor({SchemeKind::kTfIgm, 0.0}, stats, "t1"), 1.0);
  EXPECT_EQ(collection_factor({SchemeKind::kSqrtTfIgmImp, 0.0}, stats, "t2"), 1.0);
  EXPECT_EQ(collection_factor({SchemeKind::kTf}, stats, "t1"), 1.0);
  EXPECT_EQ(collection_factor({SchemeKind::kTfIdf}, stats, "t1"), idf_factor(stats, "t1"));
  EXPECT_EQ(collection_factor({SchemeKind::kDeltaTfIdf}, stats, "t2"), delta_idf_factor(stats, "t2"));
  EXPECT_EQ(collection_factor({SchemeKind::kTfIdfIcf}, stats, "t2"), idf_icf_factor(stats, "t2"));
  EXPECT_EQ(collection_factor({SchemeKind::kTfRf}, stats, "t1"), rf_factor(stats, "t1"));
  EXPECT_EQ(collection_factor({SchemeKind::kTfIgmImp, 2.0}, stats, "t1"), 1.0 + 2.0 * igm_imp_factor(stats, "t1"));
  EXPECT_EQ(collection_factor({SchemeKind::kTfIdfcRf}, stats, "t1"), idfc_rf_factor(stats, "t1"));
}

TEST_F(Table2, CollectionFactorsMatchPerTermCalls) {
  for (const auto kind : all_scheme_kinds()) {
    const SchemeSpec scheme{kind, 3.5};
    const auto factors = collection_factors(scheme, stats);
    ASSERT_EQ(factors.size(), 2u);
    for (std::size_t t = 0; t < 2; ++t) EXPECT_EQ(factors[t], collection_factor(scheme, stats, t));
  }
}

TEST(WeighDocument, TfCounts) {
  const VocabStats stats({"bad", "film", "good"}, {"n", "p"}, {1, 1}, {1, 0, 0, 1, 0, 1}, 1);
  const Document doc{"d", "", {"good", "good", "film"}, "p"};
  const auto vector = weigh_document(doc, stats, {SchemeKind::kTf});
  EXPECT_EQ(vector.size(), 2u);
  EXPECT_EQ(vector.weight(2), 2.0);
  EXPECT_EQ(vector.weight(1), 1.0);
  EXPECT_EQ(vector.weight(0), 0.0);
}

TEST_F(Table2, WeighDocumentExamples) {
  const Document three{"d", "", {"t1", "t1", "t1", "unseen"}, "pos"};
  EXPECT_NEAR(weigh_document(three, stats, {SchemeKind::kTfIgm, 7.0}).weight(0), 18.3243, kPrinted);
  EXPECT_NEAR(weigh_document(three, stats, {SchemeKind::kTfIgm, 7.0}).weight(0), 18.324324, kOracle);

  const Document four{"d", "", {"t1", "t1", "t1", "t1"}, "pos"};
  EXPECT_NEAR(weigh_document(four, stats, {SchemeKind::kTfIdfcRf}).weight(0), 41.8256, 2 * kPrinted);
  EXPECT_NEAR(weigh_document(four, stats, {SchemeKind::kTfIdfcRf}).weight(0), 41.825656, kOracle);
}

TEST_F(Table2, FeatureMapRestrictsAndReindexes) {
  const FeatureMap only_t2(stats, {1});
  const Document doc{"d", "", {"t1", "t2", "t2"}, "pos"};
  const auto vector = weigh_document(doc, stats, {SchemeKind::kTf}, &only_t2);
  ASSERT_EQ(vector.size(), 1u);
  EXPECT_EQ(vector.entries()[0], (SparseEntry{0, 2.0}));
}

TEST_F(Table2, L2Normalization) {
  const Document doc{"d", "", {"t1", "t2", "t2"}, "pos"};
  const auto vector = weigh_document(doc, stats, {SchemeKind::kTfRf}, nullptr, WeighOptions{true});
  EXPECT_NEAR(vector.squared_norm(), 1.0, 1e-12);
  const auto raw = weigh_document(doc, stats, {SchemeKind::kTfRf});
  EXPECT_NEAR(vector.weight(0) / vector.weight(1), raw.weight(0) / raw.weight(1), 1e-12);
}

// Random two-class DF tables, sizes up to 200 per class.
VocabStats random_stats(Rng& rng, std::size_t n_terms, std::size_t positive = 1) {
  const std::uint32_t sizes[2] = {static_cast<std::uint32_t>(1 + uniform_below(rng, 200)),
                                  static_cast<std::uint32_t>(1 + uniform_below(rng, 200))};
  std::vector<std::string> terms;
  std::vector<std::uint32_t> df;
  for (std::size_t t = 0; t < n_terms; ++t) {
    terms.push_back(fmt::format("w{:04d}", t));
    std::uint32_t a = static_cast<std::uint32_t>(uniform_below(rng, sizes[0] + 1));
    const std::uint32_t b = static_cast<std::uint32_t>(uniform_below(rng, sizes[1] + 1));
    if (a + b == 0) a = 1;
    df.push_back(a);
    df.push_back(b);
  }
  return VocabStats(terms, {"n", "p"}, {sizes[0], sizes[1]}, df, positive);
}

VocabStats with_positive(const VocabStats& stats, std::size_t positive) {
  std::vector<std::uint32_t> df;
  for (std::size_t t = 0; t < stats.size(); ++t) {
    for (const auto v : stats.df_row(t)) df.push_back(v);
  }
  return VocabStats(stats.terms(), stats.class_labels(),
                    {stats.class_sizes().begin(), stats.class_sizes().end()}, df, positive);
}

TEST(FactorProperties, Ranges) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto stats = random_stats(rng, 40);
    for (std::size_t t = 0; t < stats.size(); ++t) {
      const double igm = igm_factor(stats, t);
      EXPECT_GT(igm, 0.0);
      EXPECT_LE(igm, 1.0);
      EXPECT_LE(igm_imp_factor(stats, t), igm + 1e-15);
      EXPECT_GE(rf_factor(stats, t), 1.0);
      EXPECT_GE(idf_factor(stats, t), 0.0);
      EXPECT_GE(idfc_rf_factor(stats, t), 0.0);
      EXPECT_GE(idf_icf_factor(stats, t), idf_factor(stats, t));
    }
  }
}

TEST(FactorProperties, IdfcRfIsSymmetricInTheClasses) {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto stats = random_stats(rng, 30);
    const auto swapped = with_positive(stats, 0);
    for (std::size_t t = 0; t < stats.size(); ++t) {
      EXPECT_EQ(idfc_rf_factor(stats, t), idfc_rf_factor(swapped, t));
    }
  }
}

TEST(FactorProperties, DeltaIdfIsAntisymmetricInTheClasses) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto stats = random_stats(rng, 30);
    const auto swapped = with_positive(stats, 0);
    for (std::size_t t = 0; t < stats.size(); ++t) {
      EXPECT_NEAR(delta_idf_factor(stats, t), -delta_idf_factor(swapped, t), 1e-12);
    }
  }
}

TEST(FactorProperties, IgmIsScaleInvariant) {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const auto stats = random_stats(rng, 20);
    const std::uint32_t scale = 2 + static_cast<std::uint32_t>(uniform_below(rng, 5));
    std::vector<std::uint32_t> df;
    for (std::size_t t = 0; t < stats.size(); ++t) {
      for (const auto v : stats.df_row(t)) df.push_back(v * scale);
    }
    const VocabStats scaled(stats.terms(), stats.class_labels(),
                            {stats.class_size(0) * scale, stats.class_size(1) * scale}, df, 1);
    for (std::size_t t = 0; t < stats.size(); ++t) {
      EXPECT_NEAR(igm_factor(stats, t), igm_factor(scaled, t), 1e-12);
    }
  }
}

TEST(FactorProperties, LambdaZeroGivesUnitFactors) {
  Rng rng(25);
  const auto stats = random_stats(rng, 50);
  for (const auto kind : {SchemeKind::kTfIgm, SchemeKind::kSqrtTfIgm, SchemeKind::kTfIgmImp,
                          SchemeKind::kSqrtTfIgmImp}) {
    for (const double f : collection_factors({kind, 0.0}, stats)) EXPECT_EQ(f, 1.0);
  }
}

TEST(Schemes, NamesRoundTrip) {
  for (const auto kind : all_scheme_kinds()) {
    EXPECT_EQ(parse_scheme(scheme_name(kind)).kind, kind);
    const SchemeSpec spec{kind, 2.5};
    EXPECT_EQ(parse_scheme(scheme_label(spec)), uses_lambda(kind) ? spec : SchemeSpec{kind});
  }
  EXPECT_EQ(all_scheme_kinds().size(), 10u);
}

TEST(Schemes, ParseVariants) {
  EXPECT_EQ(parse_scheme("TF_IDFC_RF").kind, SchemeKind::kTfIdfcRf);
  EXPECT_EQ(parse_scheme("delta-tf-idf").kind, SchemeKind::kDeltaTfIdf);
  EXPECT_EQ(parse_scheme("sqrt-tf-igm").kind, SchemeKind::kSqrtTfIgm);
  EXPECT_EQ(parse_scheme("tf-igm:0"), (SchemeSpec{SchemeKind::kTfIgm, 0.0}));
  EXPECT_EQ(parse_scheme("tf-igm", 4.0).lambda, 4.0);
  EXPECT_EQ(parse_scheme("stf-igm-imp:6.5").lambda, 6.5);
  EXPECT_EQ(scheme_label({SchemeKind::kTfIgm, 7.0}), "tf-igm:7");
  EXPECT_EQ(scheme_label({SchemeKind::kTfRf}), "tf-rf");
}

TEST(Schemes, ParseErrors) {
  EXPECT_THROW(parse_scheme("bm25"), std::invalid_argument);
  EXPECT_THROW(parse_scheme("tf-rf:3"), std::invalid_argument);
  EXPECT_THROW(parse_scheme("tf-igm:-1"), std::invalid_argument);
  EXPECT_THROW(parse_scheme("tf-igm:abc"), std::invalid_argument);
  EXPECT_THROW(parse_scheme("tf-igm:inf"), std::invalid_argument);
  EXPECT_THROW(parse_scheme(""), std::invalid_argument);
}

TEST(SparseVector, DropsZerosAndSorts) {
  const SparseVector v({{5, 1.5}, {2, 0.0}, {1, -2.0}});
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.entries()[0], (SparseEntry{1, -2.0}));
  EXPECT_EQ(v.entries()[1], (SparseEntry{5, 1.5}));
  EXPECT_EQ(v.weight(2), 0.0);
  EXPECT_EQ(v.squared_norm(), 6.25);
  const std::vector<double> dense{0, 1, 0, 0, 0, 2};
  EXPECT_EQ(v.dot(dense), 1.0);
  EXPECT_THROW(SparseVector({{1, 1.0}, {1, 2.0}}), std::invalid_argument);
}

TEST(VectorDump, Format) {
  std::ostringstream out;
  const std::vector<std::string> ids{"a", "b"};
  const std::vector<SparseVector> vectors{SparseVector({{0, 2.0}, {3, 0.1234567}}), SparseVector()};
  write_vector_dump(out, ids, vectors);
  EXPECT_EQ(out.str(), "a\t0:2.000000,3:0.123457\nb\t\n");
}

}  // namespace
}  // namespace stw
