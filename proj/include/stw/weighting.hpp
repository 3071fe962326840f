#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stw/corpus.hpp"
#include "stw/selection.hpp"
#include "stw/stats.hpp"

namespace stw {

enum class SchemeKind {
  kTf,
  kTfIdf,
  kDeltaTfIdf,
  kTfIdfIcf,
  kTfRf,
  kTfIgm,
  kSqrtTfIgm,
  kTfIgmImp,
  kSqrtTfIgmImp,
  kTfIdfcRf,
};

inline constexpr double kDefaultLambda = 7.0;

struct SchemeSpec {
  SchemeKind kind = SchemeKind::kTf;
  double lambda = kDefaultLambda;  // read only by the IGM family

  bool operator==(const SchemeSpec&) const = default;
};

// All ten kinds in the canonical report order.
std::span<const SchemeKind> all_scheme_kinds();

// Canonical CLI/report name, e.g. "tf-idfc-rf".
std::string_view scheme_name(SchemeKind kind);
// Canonical name, with ":<lambda>" appended for the IGM family.
std::string scheme_label(const SchemeSpec& scheme);

// Accepts "<name>" or "<name>:<lambda>" (canonical names and a few aliases
// such as "delta-tf-idf" or "sqrt-tf-igm"). Throws std::invalid_argument.
SchemeSpec parse_scheme(std::string_view text, double default_lambda = kDefaultLambda);

bool uses_sqrt_tf(SchemeKind kind);
bool uses_lambda(SchemeKind kind);

struct SparseEntry {
  std::uint32_t index;
  double weight;
  bool operator==(const SparseEntry&) const = default;
};

// Index-sorted sparse vector. Zero weights are never stored.
class SparseVector {
 public:
  SparseVector() = default;
  // Entries may arrive in any order; zeros are dropped, indices must be distinct.
  explicit SparseVector(std::vector<SparseEntry> entries);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  std::span<const SparseEntry> entries() const { return entries_; }

  // 0 when the index is not stored.
  double weight(std::uint32_t index) const;
  double dot(std::span<const double> dense) const;
  double squared_norm() const;

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<SparseEntry> entries_;
};

// Collection factors. Two-class anchored factors (Delta IDF, RF, IDFC-RF)
// take the positive class as c_k; A and C are its in-class and out-of-class DFs.

// ln(N / DF)
double idf_factor(const VocabStats& stats, std::size_t term);
// log2((N_p * C + 0.5) / (A * N_n + 0.5))
double delta_idf_factor(const VocabStats& stats, std::size_t term);
// IDF * (1 + ln(M / CF)), CF = number of classes containing the term
double idf_icf_factor(const VocabStats& stats, std::size_t term);
// log2(2 + A / max(1, C))
double rf_factor(const VocabStats& stats, std::size_t term);
// f_1 / sum_r(f_r * r) over per-class DFs sorted descending
double igm_factor(const VocabStats& stats, std::size_t term);
// f_1 / (sum_r(f_r * r) + log10(D_total / f_1)), D_total = size of the top class
double igm_imp_factor(const VocabStats& stats, std::size_t term);
// log2((2 + max(A, C)) / max(2, min(A, C))) * sqrt(B + D)
double idfc_rf_factor(const VocabStats& stats, std::size_t term);

double idf_factor(const VocabStats& stats, std::string_view term);
double delta_idf_factor(const VocabStats& stats, std::string_view term);
double idf_icf_factor(const VocabStats& stats, std::string_view term);
double rf_factor(const VocabStats& stats, std::string_view term);
double igm_factor(const VocabStats& stats, std::string_view term);
double igm_imp_factor(const VocabStats& stats, std::string_view term);
double idfc_rf_factor(const VocabStats& stats, std::string_view term);

// sqrt(tf) for the square-root kinds and TF-IDFC-RF, tf otherwise.
double local_factor(const SchemeSpec& scheme, std::uint32_t tf);

double collection_factor(const SchemeSpec& scheme, const VocabStats& stats, std::size_t term);
double collection_factor(const SchemeSpec& scheme, const VocabStats& stats, std::string_view term);

// collection_factor for every vocabulary term, computed in parallel.
std::vector<double> collection_factors(const SchemeSpec& scheme, const VocabStats& stats);

struct WeighOptions {
  bool l2_normalize = false;
};

// Weighs a vocabulary-space bag with precomputed collection factors. With a
// feature map, unselected terms are dropped and indices are feature indices.
SparseVector weigh_bag(const TermBag& bag, std::span<const double> factors, const SchemeSpec& scheme,
                       const FeatureMap* features = nullptr, WeighOptions options = {});

// Weighs many bags in parallel; output order matches input order.
std::vector<SparseVector> weigh_bags(std::span<const TermBag> bags, std::span<const double> factors,
                                     const SchemeSpec& scheme, const FeatureMap* features = nullptr,
                                     WeighOptions options = {});

SparseVector weigh_document(const Document& doc, const VocabStats& stats, const SchemeSpec& scheme,
                            const FeatureMap* features = nullptr, WeighOptions options = {});

// One line per document: `docid<TAB>index:weight,...`, weights with 6 decimals.
void write_vector_dump(std::ostream& out, std::span<const std::string> doc_ids,
                       std::span<const SparseVector> vectors);

}  // namespace stw
