#include "stw/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <fmt/core.h>

#include "unicode.hpp"

namespace fs = std::filesystem;

namespace stw {
namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read file '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error(fmt::format("error reading file '{}'", path.string()));
  return buffer.str();
}

bool is_hidden(const fs::path& path) {
  const auto name = path.filename().string();
  return !name.empty() && name.front() == '.';
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (is_hidden(entry.path())) continue;
    if (want_directories ? entry.is_directory() : entry.is_regular_file()) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Appends one document per non-empty line of `path`.
std::size_t append_lines(const fs::path& path, const std::string& label,
                         std::vector<Document>& out) {
  const std::string text = sanitize_utf8(read_file(path));
  std::size_t added = 0;
  std::size_t line_number = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;
    if (!line.empty()) {
      out.push_back(Document{fmt::format("{}/{}", label, line_number), std::string(line), {}, label});
      ++added;
    }
    begin = end + 1;
  }
  return added;
}

}  // namespace

std::size_t LabeledCorpus::class_index(std::string_view label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::invalid_argument(fmt::format("unknown class label '{}'", label));
  return static_cast<std::size_t>(it - labels.begin());
}

void LabeledCorpus::validate() const {
  if (labels.size() < 2) throw std::invalid_argument("corpus has fewer than 2 classes");
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw std::invalid_argument("corpus labels must be sorted and distinct");
  }
  class_index(positive_label);
  std::unordered_set<std::string_view> ids;
  for (const auto& doc : documents) {
    if (!ids.insert(doc.id).second) {
      throw std::invalid_argument(fmt::format("duplicate document id '{}'", doc.id));
    }
    class_index(doc.label);
  }
}

LabeledCorpus load_directory_corpus(const fs::path& root, std::string_view positive_label) {
  if (!fs::is_directory(root)) {
    throw std::runtime_error(fmt::format("corpus directory '{}' does not exist", root.string()));
  }
  const auto class_dirs = sorted_entries(root, true);
  if (class_dirs.size() < 2) {
    throw std::invalid_argument(
        fmt::format("corpus directory '{}' has fewer than 2 classes", root.string()));
  }

  LabeledCorpus corpus;
  for (const auto& dir : class_dirs) {
    const std::string label = dir.filename().string();
    corpus.labels.push_back(label);
    for (const auto& file : sorted_entries(dir, false)) {
      corpus.documents.push_back(Document{label + "/" + file.filename().string(),
                                          sanitize_utf8(read_file(file)), {}, label});
    }
  }

  if (!positive_label.empty()) {
    corpus.positive_label = std::string(positive_label);
  } else if (std::find(corpus.labels.begin(), corpus.labels.end(), "pos") != corpus.labels.end()) {
    corpus.positive_label = "pos";
  } else {
    corpus.positive_label = corpus.labels.front();
  }
  corpus.validate();
  return corpus;
}

LabeledCorpus load_line_corpus(const fs::path& pos_path, const fs::path& neg_path) {
  for (const auto& path : {pos_path, neg_path}) {
    if (!fs::is_regular_file(path)) {
      throw std::runtime_error(fmt::format("corpus file '{}' does not exist", path.string()));
    }
  }
  LabeledCorpus corpus;
  corpus.labels = {"neg", "pos"};
  corpus.positive_label = "pos";
  const std::size_t n_pos = append_lines(pos_path, "pos", corpus.documents);
  const std::size_t n_neg = append_lines(neg_path, "neg", corpus.documents);
  if (n_pos + n_neg == 0) throw std::invalid_argument("both corpus files are empty");
  corpus.validate();
  return corpus;
}

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t start = pos;
    const char32_t cp = unicode::decode_next(bytes, pos);
    if (cp == unicode::kReplacement && pos - start == 1) {
      unicode::append_utf8(out, cp);
    } else {
      out.append(bytes.substr(start, pos - start));
    }
  }
  return out;
}

std::vector<std::string> preprocess(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const char32_t cp = unicode::to_lower(unicode::decode_next(raw_text, pos));
    if (unicode::is_space(cp) || unicode::is_punctuation(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      unicode::append_utf8(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

void preprocess_corpus(LabeledCorpus& corpus) {
  auto& docs = corpus.documents;
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    docs[static_cast<std::size_t>(i)].tokens = preprocess(docs[static_cast<std::size_t>(i)].raw_text);
  }
  corpus.tokenized = true;
}

}  // namespace stw
