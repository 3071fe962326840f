#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stw {

struct Document {
  std::string id;
  std::string raw_text;
  std::vector<std::string> tokens;  // empty until preprocessed
  std::string label;
};

// A set of labeled documents. `labels` is kept sorted so class indices are
// stable; `positive_label` anchors the two-class schemes (RF, Delta IDF).
struct LabeledCorpus {
  std::vector<Document> documents;
  std::vector<std::string> labels;
  std::string positive_label;
  bool tokenized = false;

  std::size_t num_classes() const { return labels.size(); }

  // Index of `label` in `labels`; throws std::invalid_argument if unknown.
  std::size_t class_index(std::string_view label) const;
  std::size_t positive_index() const { return class_index(positive_label); }

  // Checks the corpus invariants (unique ids, >= 2 classes, known labels).
  void validate() const;
};

// Reads `<root>/<label>/<docid>.txt`. One class per subdirectory; documents
// are ordered lexicographically by path. When `positive_label` is empty,
// "pos" is used if present, else the first label.
LabeledCorpus load_directory_corpus(const std::filesystem::path& root,
                                    std::string_view positive_label = {});

// Reads one document per non-empty line; labels "pos" and "neg".
LabeledCorpus load_line_corpus(const std::filesystem::path& pos_path,
                               const std::filesystem::path& neg_path);

// Lowercases, replaces punctuation (ASCII and Unicode P* categories) with
// spaces, and splits on whitespace. Invalid UTF-8 bytes become U+FFFD.
std::vector<std::string> preprocess(std::string_view raw_text);

// Fills `tokens` for every document. Documents are processed in parallel.
void preprocess_corpus(LabeledCorpus& corpus);

// Replaces every invalid UTF-8 sequence with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

}  // namespace stw
