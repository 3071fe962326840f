#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stw/corpus.hpp"
#include "stw/eval.hpp"

namespace stw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Invalid flags or flag combinations; reported with exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Flag values as given on the command line or in a --config file.
struct RunConfig {
  std::vector<std::string> corpus_paths;
  std::string corpus_format = "dir";  // dir | lines
  std::string positive_label;
  std::vector<std::string> schemes;
  double lambda = 7.0;
  std::vector<std::size_t> feature_sizes;
  std::vector<std::string> classifiers{"nb", "svm"};
  std::size_t k_folds = 5;
  std::uint64_t seed = 42;
  std::string out;
  int threads = 0;
  double nb_alpha = 1.0;
  std::string nb_negative = "abs";  // abs | clip
  double svm_c = 1.0;
  int svm_epochs = 20;
  bool l2_normalize = false;
  std::vector<std::string> terms;
};

// The feature-size grid used when --features is not given.
const std::vector<std::size_t>& default_feature_sizes();

// Loads and tokenizes the corpus named by the config.
LabeledCorpus load_corpus(const RunConfig& config);

// Translates the flag values into an experiment grid; throws UsageError.
ExperimentConfig experiment_config(const RunConfig& config);

// Vector dump of the whole corpus under the first scheme (no CV).
void cmd_weigh(const RunConfig& config, std::ostream& out);
// Runs the grid, writes the CSV report to config.out and the F1 matrix to `out`.
void cmd_run(const RunConfig& config, std::ostream& out);
// Collection factors of the requested terms (all terms when none given).
void cmd_factors(const RunConfig& config, std::ostream& out);

// Parses argv and dispatches to a command. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stw::cli
