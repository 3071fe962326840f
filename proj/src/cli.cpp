#include "stw/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <omp.h>

#include "stw/selection.hpp"
#include "stw/stats.hpp"
#include "stw/weighting.hpp"

namespace stw::cli {
namespace {

void write_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot open output file '{}'", path));
  body(file);
  if (!file) throw std::runtime_error(fmt::format("error writing output file '{}'", path));
}

std::vector<SchemeSpec> parse_schemes(const RunConfig& config) {
  std::vector<SchemeSpec> out;
  try {
    for (const auto& name : config.schemes) out.push_back(parse_scheme(name, config.lambda));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return out;
}

void add_corpus_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--corpus", config.corpus_paths,
                  "Corpus root directory (dir) or positive and negative files (lines)")
      ->required()
      ->expected(1, 2);
  sub->add_option("--format", config.corpus_format, "Corpus layout")
      ->check(CLI::IsMember({"dir", "lines"}))
      ->capture_default_str();
  sub->add_option("--positive-label", config.positive_label, "Class anchoring the two-class schemes");
  sub->add_option("--out", config.out, "Output file (run: report.csv, others: stdout when omitted)");
  sub->add_option("--threads", config.threads, "Cap on OpenMP threads (0: runtime default)")
      ->check(CLI::NonNegativeNumber);
}

void add_scheme_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--scheme,--schemes", config.schemes, "Weighting scheme(s), name or name:lambda")
      ->delimiter(',');
  sub->add_option("--lambda", config.lambda, "Lambda for the IGM schemes")->capture_default_str();
  sub->add_flag("--l2-normalize", config.l2_normalize, "L2-normalize document vectors");
}

}  // namespace

const std::vector<std::size_t>& default_feature_sizes() {
  static const std::vector<std::size_t> sizes{500, 1000, 2000, 4000, 6000, 8000, 10000, 12000, 14000};
  return sizes;
}

LabeledCorpus load_corpus(const RunConfig& config) {
  LabeledCorpus corpus;
  if (config.corpus_format == "dir") {
    if (config.corpus_paths.size() != 1) throw UsageError("--format dir takes exactly one --corpus path");
    corpus = load_directory_corpus(config.corpus_paths[0], config.positive_label);
  } else if (config.corpus_format == "lines") {
    if (config.corpus_paths.size() != 2) {
      throw UsageError("--format lines takes two --corpus paths (positive file, negative file)");
    }
    corpus = load_line_corpus(config.corpus_paths[0], config.corpus_paths[1]);
    if (!config.positive_label.empty()) {
      corpus.positive_label = config.positive_label;
      corpus.validate();
    }
  } else {
    throw UsageError(fmt::format("unknown corpus format '{}'", config.corpus_format));
  }
  preprocess_corpus(corpus);
  return corpus;
}

ExperimentConfig experiment_config(const RunConfig& config) {
  ExperimentConfig out;
  out.schemes = parse_schemes(config);
  if (out.schemes.empty()) {
    for (const auto kind : all_scheme_kinds()) out.schemes.push_back(SchemeSpec{kind, config.lambda});
  }
  out.feature_sizes = config.feature_sizes.empty() ? default_feature_sizes() : config.feature_sizes;
  try {
    for (const auto& name : config.classifiers) out.classifiers.push_back(parse_classifier(name));
    out.k_folds = config.k_folds;
    out.seed = config.seed;
    out.nb_alpha = config.nb_alpha;
    out.nb_negative = parse_negative_weights(config.nb_negative);
    out.svm.c = config.svm_c;
    out.svm.epochs = config.svm_epochs;
    out.svm.seed = config.seed;
    out.weighing.l2_normalize = config.l2_normalize;
    out.threads = config.threads;
    out.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(out.nb_alpha > 0.0) || !(out.svm.c > 0.0) || out.svm.epochs < 1) {
    throw UsageError("--alpha and --svm-c must be positive and --svm-epochs >= 1");
  }
  return out;
}

void cmd_weigh(const RunConfig& config, std::ostream& out) {
  const auto schemes = parse_schemes(config);
  if (schemes.size() != 1) throw UsageError("weigh needs exactly one --scheme");
  if (config.feature_sizes.size() > 1) throw UsageError("weigh takes at most one --features value");
  if (!config.feature_sizes.empty() && config.feature_sizes[0] == 0) throw UsageError("--features must be positive");

  const LabeledCorpus corpus = load_corpus(config);
  const InternedCorpus interned(corpus);
  std::vector<std::size_t> all(corpus.documents.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const VocabStats stats = build_vocab_stats(interned, all);

  std::optional<FeatureMap> features;
  if (!config.feature_sizes.empty()) features = select_top_k(stats, config.feature_sizes[0]);

  const auto lexicon_map = lexicon_to_vocab(stats, interned);
  std::vector<TermBag> bags;
  bags.reserve(interned.size());
  for (const auto& bag : interned.bags()) bags.push_back(to_vocab_bag(bag, lexicon_map));

  const auto factors = collection_factors(schemes[0], stats);
  const auto vectors = weigh_bags(bags, factors, schemes[0], features ? &*features : nullptr,
                                  WeighOptions{config.l2_normalize});
  std::vector<std::string> ids;
  ids.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) ids.push_back(doc.id);
  write_output(config.out, out, [&](std::ostream& os) { write_vector_dump(os, ids, vectors); });
}

void cmd_run(const RunConfig& config, std::ostream& out) {
  const ExperimentConfig experiment = experiment_config(config);
  const LabeledCorpus corpus = load_corpus(config);
  const EvalReport report = run_experiment(corpus, experiment);
  const std::string path = config.out.empty() ? "report.csv" : config.out;
  write_output(path, out, [&](std::ostream& os) { write_report_csv(os, report); });
  write_f1_matrix(out, report);
}

void cmd_factors(const RunConfig& config, std::ostream& out) {
  const LabeledCorpus corpus = load_corpus(config);
  std::vector<std::size_t> all(corpus.documents.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const VocabStats stats = build_vocab_stats(corpus, all);

  std::vector<std::size_t> terms;
  if (config.terms.empty()) {
    for (std::size_t t = 0; t < stats.size(); ++t) terms.push_back(t);
  } else {
    for (const auto& term : config.terms) terms.push_back(stats.index_of(term));
  }

  write_output(config.out, out, [&](std::ostream& os) {
    os << "term\tidf\tdelta_idf\tidf_icf\trf\tigm\tigm_imp\tidfc_rf\tchi2\n";
    for (const auto t : terms) {
      os << fmt::format("{}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\t{:.4f}\n", stats.term(t),
                        idf_factor(stats, t), delta_idf_factor(stats, t), idf_icf_factor(stats, t),
                        rf_factor(stats, t), igm_factor(stats, t), igm_imp_factor(stats, t),
                        idfc_rf_factor(stats, t), chi2_score(stats, t));
    }
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supervised term weighting for two-class text classification", "stw"};
  app.set_config("--config", "", "Read flags from a TOML/INI file; command-line flags take precedence");
  app.require_subcommand(1);

  RunConfig config;

  auto* weigh = app.add_subcommand("weigh", "Write weighted vectors for the whole corpus under one scheme");
  add_corpus_options(weigh, config);
  add_scheme_options(weigh, config);
  weigh->add_option("--features", config.feature_sizes, "Keep only the top-k chi-square terms");

  auto* run_cmd = app.add_subcommand("run", "Cross-validate a grid of schemes, feature sizes and classifiers");
  add_corpus_options(run_cmd, config);
  add_scheme_options(run_cmd, config);
  run_cmd->add_option("--features", config.feature_sizes, "Feature sizes (top-k chi-square terms)")
      ->delimiter(',');
  run_cmd->add_option("--classifier,--classifiers", config.classifiers, "nb and/or svm")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--folds", config.k_folds, "Number of stratified folds")->capture_default_str();
  run_cmd->add_option("--seed", config.seed, "Seed for fold shuffling and SVM training")->capture_default_str();
  run_cmd->add_option("--alpha", config.nb_alpha, "Naive Bayes smoothing")->capture_default_str();
  run_cmd->add_option("--nb-negative", config.nb_negative, "Negative weights under naive Bayes")
      ->check(CLI::IsMember({"abs", "clip"}))
      ->capture_default_str();
  run_cmd->add_option("--svm-c", config.svm_c, "SVM regularization constant")->capture_default_str();
  run_cmd->add_option("--svm-epochs", config.svm_epochs, "SVM passes over the data")->capture_default_str();

  auto* factors = app.add_subcommand("factors", "Print every collection factor of the given terms");
  add_corpus_options(factors, config);
  factors->add_option("--terms", config.terms, "Terms to report (all when omitted)")->delimiter(',');

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (config.threads > 0) omp_set_num_threads(config.threads);
    if (weigh->parsed()) cmd_weigh(config, out);
    if (run_cmd->parsed()) cmd_run(config, out);
    if (factors->parsed()) cmd_factors(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace stw::cli
