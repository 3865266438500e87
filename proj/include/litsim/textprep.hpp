#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace litsim {

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::vector<std::string> words);

  // The fixed English list compiled into the library (318 entries,
  // hash-pinned by the test suite).
  static const StopwordList& bundled();

  // Override file: one lowercase token per line, '#' starts a comment.
  static StopwordList from_file(const std::string& path);

  bool contains(const std::string& token) const { return set_.count(token) != 0; }
  size_t size() const { return sorted_.size(); }
  const std::vector<std::string>& words() const { return sorted_; }

 private:
  std::vector<std::string> sorted_;
  std::unordered_set<std::string> set_;
};

// Lowercased word tokens with stopwords removed. sentence_breaks[i] = t means
// a sentence boundary precedes tokens[t]; indices are strictly increasing and
// in (0, tokens.size()).
struct TokenizedDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
  std::vector<size_t> sentence_breaks;
};

// Ordered pair of adjacent tokens. ("prostate","cancer") != ("cancer","prostate").
struct Bigram {
  std::string first;
  std::string second;

  auto operator<=>(const Bigram&) const = default;
  std::string text() const { return first + " " + second; }
};

// Lowercases (ASCII plus the Latin-1 letter block; curly quotes and dashes are
// folded to their ASCII forms), splits sentences at '.', '!' or '?' followed
// by whitespace, extracts maximal runs of letters/digits with internal hyphens
// and apostrophes, and drops stopwords (boundary indices re-based onto the
// kept tokens).
TokenizedDoc tokenize(const std::string& text, const StopwordList& stopwords,
                      std::string doc_id = {});

// Adjacent in-sentence token pairs in document order, multiplicity preserved.
// Pairs never span a sentence boundary.
std::vector<Bigram> extract_bigrams(const TokenizedDoc& doc);

struct Corpus;

// Tokenizes every record's abstract body, keeping record order. Titles are
// metadata and stay out of the analyses.
std::vector<TokenizedDoc> tokenize_corpus(const Corpus& corpus,
                                          const StopwordList& stopwords);

// FNV-1a 64 over the newline-joined sorted word list; identifies the exact
// stopword list behind a run.
uint64_t stopwords_fingerprint(const StopwordList& stopwords);

}  // namespace litsim
