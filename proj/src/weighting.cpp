#include "stw/weighting.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/core.h>

namespace stw {
namespace {

constexpr std::array kAllKinds = {
    SchemeKind::kTf,        SchemeKind::kTfIdf,     SchemeKind::kDeltaTfIdf, SchemeKind::kTfIdfIcf,
    SchemeKind::kTfRf,      SchemeKind::kTfIgm,     SchemeKind::kSqrtTfIgm,  SchemeKind::kTfIgmImp,
    SchemeKind::kSqrtTfIgmImp, SchemeKind::kTfIdfcRf,
};

struct Alias {
  std::string_view name;
  SchemeKind kind;
};

constexpr std::array kAliases = {
    Alias{"delta-tf-idf", SchemeKind::kDeltaTfIdf},   Alias{"delta-idf", SchemeKind::kDeltaTfIdf},
    Alias{"sqrt-tf-igm", SchemeKind::kSqrtTfIgm},     Alias{"sqrt-tf-igm-imp", SchemeKind::kSqrtTfIgmImp},
    Alias{"tf-igmimp", SchemeKind::kTfIgmImp},        Alias{"stf-igmimp", SchemeKind::kSqrtTfIgmImp},
};

// Positive-class quantities A and C of a term.
struct Anchored {
  double a;
  double c;
};

Anchored anchored(const VocabStats& stats, std::size_t term) {
  const double a = stats.df(term, stats.positive_class());
  return {a, static_cast<double>(stats.total_df(term)) - a};
}

struct TopClass {
  std::uint32_t f1;
  std::size_t cls;
  double gravity;  // sum_r f_r * r
};

TopClass rank_classes(const VocabStats& stats, std::size_t term) {
  const auto row = stats.df_row(term);
  std::vector<std::size_t> order(row.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return row[x] > row[y]; });
  double gravity = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    gravity += static_cast<double>(row[order[r]]) * static_cast<double>(r + 1);
  }
  return {row[order.front()], order.front(), gravity};
}

void check_term(const VocabStats& stats, std::size_t term) {
  if (term >= stats.size()) throw std::out_of_range("term index out of range");
}

}  // namespace

std::span<const SchemeKind> all_scheme_kinds() { return kAllKinds; }

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kTf: return "tf";
    case SchemeKind::kTfIdf: return "tf-idf";
    case SchemeKind::kDeltaTfIdf: return "dtf-idf";
    case SchemeKind::kTfIdfIcf: return "tf-idf-icf";
    case SchemeKind::kTfRf: return "tf-rf";
    case SchemeKind::kTfIgm: return "tf-igm";
    case SchemeKind::kSqrtTfIgm: return "stf-igm";
    case SchemeKind::kTfIgmImp: return "tf-igm-imp";
    case SchemeKind::kSqrtTfIgmImp: return "stf-igm-imp";
    case SchemeKind::kTfIdfcRf: return "tf-idfc-rf";
  }
  return "?";
}

std::string scheme_label(const SchemeSpec& scheme) {
  if (!uses_lambda(scheme.kind)) return std::string(scheme_name(scheme.kind));
  return fmt::format("{}:{:g}", scheme_name(scheme.kind), scheme.lambda);
}

SchemeSpec parse_scheme(std::string_view text, double default_lambda) {
  std::string name;
  std::string_view lambda_text;
  const auto colon = text.find(':');
  for (const char ch : text.substr(0, colon)) {
    name.push_back(ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (colon != std::string_view::npos) lambda_text = text.substr(colon + 1);

  SchemeSpec spec;
  spec.lambda = default_lambda;
  bool found = false;
  for (const auto kind : kAllKinds) {
    if (scheme_name(kind) == name) {
      spec.kind = kind;
      found = true;
    }
  }
  for (const auto& alias : kAliases) {
    if (!found && alias.name == name) {
      spec.kind = alias.kind;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument(fmt::format("unknown weighting scheme '{}'", text));

  if (!lambda_text.empty()) {
    if (!uses_lambda(spec.kind)) {
      throw std::invalid_argument(fmt::format("scheme '{}' takes no lambda", scheme_name(spec.kind)));
    }
    double value = 0.0;
    const auto* end = lambda_text.data() + lambda_text.size();
    const auto [ptr, ec] = std::from_chars(lambda_text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument(fmt::format("bad lambda in '{}'", text));
    }
    spec.lambda = value;
  }
  if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda)) {
    throw std::invalid_argument(fmt::format("lambda must be a finite value >= 0, got {}", spec.lambda));
  }
  return spec;
}

bool uses_sqrt_tf(SchemeKind kind) {
  return kind == SchemeKind::kSqrtTfIgm || kind == SchemeKind::kSqrtTfIgmImp ||
         kind == SchemeKind::kTfIdfcRf;
}

bool uses_lambda(SchemeKind kind) {
  return kind == SchemeKind::kTfIgm || kind == SchemeKind::kSqrtTfIgm ||
         kind == SchemeKind::kTfIgmImp || kind == SchemeKind::kSqrtTfIgmImp;
}

SparseVector::SparseVector(std::vector<SparseEntry> entries) : entries_(std::move(entries)) {
  std::erase_if(entries_, [](const SparseEntry& e) { return e.weight == 0.0; });
  std::sort(entries_.begin(), entries_.end(),
            [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
  const auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                      [](const SparseEntry& x, const SparseEntry& y) { return x.index == y.index; });
  if (dup != entries_.end()) throw std::invalid_argument("duplicate index in sparse vector");
}

double SparseVector::weight(std::uint32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->weight : 0.0;
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * dense[e.index];
  return sum;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * e.weight;
  return sum;
}

double idf_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  return std::log(static_cast<double>(stats.n_docs()) / static_cast<double>(stats.total_df(term)));
}

double delta_idf_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const auto [a, c] = anchored(stats, term);
  const double n_pos = stats.class_size(stats.positive_class());
  const double n_neg = static_cast<double>(stats.n_docs()) - n_pos;
  return std::log2((n_pos * c + 0.5) / (a * n_neg + 0.5));
}

double idf_icf_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const double m = static_cast<double>(stats.num_classes());
  const double cf = static_cast<double>(stats.class_frequency(term));
  return idf_factor(stats, term) * (1.0 + std::log(m / cf));
}

double rf_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const auto [a, c] = anchored(stats, term);
  return std::log2(2.0 + a / std::max(1.0, c));
}

double igm_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const auto top = rank_classes(stats, term);
  return static_cast<double>(top.f1) / top.gravity;
}

double igm_imp_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const auto top = rank_classes(stats, term);
  const double f1 = top.f1;
  const double d_total = stats.class_size(top.cls);
  return f1 / (top.gravity + std::log10(d_total / f1));
}

double idfc_rf_factor(const VocabStats& stats, std::size_t term) {
  check_term(stats, term);
  const auto [a, c] = anchored(stats, term);
  const double absent = static_cast<double>(stats.n_docs() - stats.total_df(term));  // B + D
  return std::log2((2.0 + std::max(a, c)) / std::max(2.0, std::min(a, c))) * std::sqrt(absent);
}

double idf_factor(const VocabStats& stats, std::string_view term) {
  return idf_factor(stats, stats.index_of(term));
}
double delta_idf_factor(const VocabStats& stats, std::string_view term) {
  return delta_idf_factor(stats, stats.index_of(term));
}
double idf_icf_factor(const VocabStats& stats, std::string_view term) {
  return idf_icf_factor(stats, stats.index_of(term));
}
double rf_factor(const VocabStats& stats, std::string_view term) {
  return rf_factor(stats, stats.index_of(term));
}
double igm_factor(const VocabStats& stats, std::string_view term) {
  return igm_factor(stats, stats.index_of(term));
}
double igm_imp_factor(const VocabStats& stats, std::string_view term) {
  return igm_imp_factor(stats, stats.index_of(term));
}
double idfc_rf_factor(const VocabStats& stats, std::string_view term) {
  return idfc_rf_factor(stats, stats.index_of(term));
}

double local_factor(const SchemeSpec& scheme, std::uint32_t tf) {
  const double value = static_cast<double>(tf);
  return uses_sqrt_tf(scheme.kind) ? std::sqrt(value) : value;
}

double collection_factor(const SchemeSpec& scheme, const VocabStats& stats, std::size_t term) {
  switch (scheme.kind) {
    case SchemeKind::kTf:
      check_term(stats, term);
      return 1.0;
    case SchemeKind::kTfIdf: return idf_factor(stats, term);
    case SchemeKind::kDeltaTfIdf: return delta_idf_factor(stats, term);
    case SchemeKind::kTfIdfIcf: return idf_icf_factor(stats, term);
    case SchemeKind::kTfRf: return rf_factor(stats, term);
    case SchemeKind::kTfIgm:
    case SchemeKind::kSqrtTfIgm: return 1.0 + scheme.lambda * igm_factor(stats, term);
    case SchemeKind::kTfIgmImp:
    case SchemeKind::kSqrtTfIgmImp: return 1.0 + scheme.lambda * igm_imp_factor(stats, term);
    case SchemeKind::kTfIdfcRf: return idfc_rf_factor(stats, term);
  }
  throw std::logic_error("unhandled scheme kind");
}

double collection_factor(const SchemeSpec& scheme, const VocabStats& stats, std::string_view term) {
  return collection_factor(scheme, stats, stats.index_of(term));
}

std::vector<double> collection_factors(const SchemeSpec& scheme, const VocabStats& stats) {
  std::vector<double> factors(stats.size());
  const auto n = static_cast<std::ptrdiff_t>(stats.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    factors[static_cast<std::size_t>(t)] = collection_factor(scheme, stats, static_cast<std::size_t>(t));
  }
  return factors;
}

SparseVector weigh_bag(const TermBag& bag, std::span<const double> factors, const SchemeSpec& scheme,
                       const FeatureMap* features, WeighOptions options) {
  std::vector<SparseEntry> entries;
  entries.reserve(bag.size());
  for (const auto& [term, tf] : bag) {
    std::uint32_t index = term;
    if (features != nullptr) {
      const std::int32_t feature = features->feature_of_term(term);
      if (feature < 0) continue;
      index = static_cast<std::uint32_t>(feature);
    }
    const double weight = local_factor(scheme, tf) * factors[term];
    if (weight != 0.0) entries.push_back({index, weight});
  }
  if (options.l2_normalize) {
    double norm = 0.0;
    for (const auto& e : entries) norm += e.weight * e.weight;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& e : entries) e.weight /= norm;
    }
  }
  return SparseVector(std::move(entries));
}

std::vector<SparseVector> weigh_bags(std::span<const TermBag> bags, std::span<const double> factors,
                                     const SchemeSpec& scheme, const FeatureMap* features,
                                     WeighOptions options) {
  std::vector<SparseVector> out(bags.size());
  const auto n = static_cast<std::ptrdiff_t>(bags.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto doc = static_cast<std::size_t>(i);
    out[doc] = weigh_bag(bags[doc], factors, scheme, features, options);
  }
  return out;
}

SparseVector weigh_document(const Document& doc, const VocabStats& stats, const SchemeSpec& scheme,
                            const FeatureMap* features, WeighOptions options) {
  const TermBag bag = count_terms(doc.tokens, stats);
  // Factors only for the terms present; the rest of the table stays unread.
  std::vector<double> factors(stats.size(), 0.0);
  for (const auto& entry : bag) factors[entry.term] = collection_factor(scheme, stats, entry.term);
  return weigh_bag(bag, factors, scheme, features, options);
}

void write_vector_dump(std::ostream& out, std::span<const std::string> doc_ids,
                       std::span<const SparseVector> vectors) {
  if (doc_ids.size() != vectors.size()) throw std::invalid_argument("one id per vector expected");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::string line = doc_ids[i];
    line.push_back('\t');
    bool first = true;
    for (const auto& e : vectors[i]) {
      if (!first) line.push_back(',');
      line += fmt::format("{}:{:.6f}", e.index, e.weight);
      first = false;
    }
    line.push_back('\n');
    out << line;
  }
}

}  // namespace stw
