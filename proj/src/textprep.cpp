#include "litsim/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "litsim/corpus.hpp"
#include "litsim/error.hpp"

namespace litsim {

namespace {

std::string normalize_word(std::string word) {
  auto begin = word.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  auto end = word.find_last_not_of(" \t\r\n");
  word = word.substr(begin, end - begin + 1);
  std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) {
    return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
  });
  return word;
}

}  // namespace

StopwordList::StopwordList(std::vector<std::string> words) {
  for (auto& word : words) {
    auto normalized = normalize_word(std::move(word));
    if (!normalized.empty()) set_.insert(std::move(normalized));
  }
  sorted_.assign(set_.begin(), set_.end());
  std::sort(sorted_.begin(), sorted_.end());
}

StopwordList StopwordList::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open stopword file '" + path + "'");
  }
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    words.push_back(line);
  }
  return StopwordList(std::move(words));
}

namespace {

// Folds curly quotes/dashes to ASCII and lowercases ASCII plus the Latin-1
// letter block. Other multi-byte sequences pass through untouched.
std::string fold_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x80) {
      unsigned char third = static_cast<unsigned char>(text[i + 2]);
      if (third == 0x98 || third == 0x99) {  // curly single quotes
        out.push_back('\'');
        i += 2;
        continue;
      }
      if (third == 0x93 || third == 0x94) {  // en/em dash
        out.push_back('-');
        i += 2;
        continue;
      }
    }
    if (c == 0xC3 && i + 1 < text.size()) {
      unsigned char second = static_cast<unsigned char>(text[i + 1]);
      // Latin-1 uppercase letters (except the multiplication sign slot).
      if (second >= 0x80 && second <= 0x9E && second != 0x97) {
        out.push_back(static_cast<char>(c));
        out.push_back(static_cast<char>(second + 0x20));
        ++i;
        continue;
      }
    }
    if (c < 0x80) {
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

bool is_token_char(unsigned char c) {
  return (c < 0x80 && std::isalnum(c)) || c >= 0x80;
}

bool is_space(unsigned char c) { return c < 0x80 && std::isspace(c); }

}  // namespace

TokenizedDoc tokenize(const std::string& text, const StopwordList& stopwords,
                      std::string doc_id) {
  const std::string folded = fold_text(text);

  std::vector<std::string> raw_tokens;
  std::vector<char> break_before;  // parallel to raw_tokens
  std::string current;
  bool pending_break = false;

  auto flush = [&] {
    if (current.empty()) return;
    raw_tokens.push_back(current);
    break_before.push_back(pending_break ? 1 : 0);
    pending_break = false;
    current.clear();
  };

  for (size_t i = 0; i < folded.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(folded[i]);
    if (is_token_char(c)) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    if ((c == '-' || c == '\'') && !current.empty() && i + 1 < folded.size() &&
        is_token_char(static_cast<unsigned char>(folded[i + 1]))) {
      current.push_back(static_cast<char>(c));
      continue;
    }
    flush();
    if ((c == '.' || c == '!' || c == '?') && i + 1 < folded.size() &&
        is_space(static_cast<unsigned char>(folded[i + 1]))) {
      pending_break = true;
    }
  }
  flush();

  TokenizedDoc doc;
  doc.doc_id = std::move(doc_id);
  bool carry = false;
  for (size_t i = 0; i < raw_tokens.size(); ++i) {
    carry = carry || break_before[i] != 0;
    if (stopwords.contains(raw_tokens[i])) continue;
    if (carry && !doc.tokens.empty()) {
      doc.sentence_breaks.push_back(doc.tokens.size());
    }
    carry = false;
    doc.tokens.push_back(std::move(raw_tokens[i]));
  }
  return doc;
}

std::vector<Bigram> extract_bigrams(const TokenizedDoc& doc) {
  std::vector<Bigram> bigrams;
  if (doc.tokens.size() < 2) return bigrams;
  bigrams.reserve(doc.tokens.size() - 1);
  size_t next_break = 0;
  for (size_t i = 1; i < doc.tokens.size(); ++i) {
    while (next_break < doc.sentence_breaks.size() &&
           doc.sentence_breaks[next_break] < i) {
      ++next_break;
    }
    bool boundary = next_break < doc.sentence_breaks.size() &&
                    doc.sentence_breaks[next_break] == i;
    if (!boundary) {
      bigrams.push_back({doc.tokens[i - 1], doc.tokens[i]});
    }
  }
  return bigrams;
}

std::vector<TokenizedDoc> tokenize_corpus(const Corpus& corpus,
                                          const StopwordList& stopwords) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(corpus.records.size());
  for (const auto& record : corpus.records) {
    docs.push_back(tokenize(record.abstract_text, stopwords, record.id));
  }
  return docs;
}

uint64_t stopwords_fingerprint(const StopwordList& stopwords) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](const char* data, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 0x100000001b3ULL;
    }
  };
  const auto& words = stopwords.words();
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) mix("\n", 1);
    mix(words[i].data(), words[i].size());
  }
  return hash;
}

}  // namespace litsim
