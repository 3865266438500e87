#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "litsim/corpus.hpp"
#include "litsim/docsim.hpp"
#include "litsim/textprep.hpp"

namespace litsim {

// Document-frequency model over a fitted vocabulary. Bigram terms are stored
// as "first second" strings; the vocabulary is kept sorted so column order is
// deterministic.
struct TfidfModel {
  std::vector<std::string> vocabulary;
  std::map<std::string, size_t> doc_freq;
  size_t n_docs = 0;

  // Smoothed idf with a +1 floor: ln((1 + n_docs) / (1 + df)) + 1.
  double idf(const std::string& term) const;
  bool contains(const std::string& term) const { return doc_freq.count(term) != 0; }
};

// Fits document frequencies over the bigrams of `docs`.
TfidfModel fit_tfidf(const std::vector<TokenizedDoc>& docs);

// Same model shape fitted over unigrams; backs the optional tf-idf weighting
// of the document cosine experiment.
TfidfModel fit_tfidf_unigram(const std::vector<TokenizedDoc>& docs);

// tf(term, doc) * idf(term), L2-normalized. Terms outside the vocabulary are
// ignored; a document with no in-vocabulary terms yields the zero vector.
TermVector tfidf_vector(const TfidfModel& model, const TokenizedDoc& doc);
TermVector tfidf_vector_unigram(const TfidfModel& model, const TokenizedDoc& doc);

enum class BigramComparator {
  cosine,         // cosine over tf-idf bigram vectors (default)
  top_k_overlap,  // Jaccard overlap of the top-k weighted bigram sets
};

struct BigramSimilarityOptions {
  std::vector<size_t> sizes{10, 25, 50, 75, 100};
  uint64_t seed = 42;
  Aggregation aggregation = Aggregation::best_match;
  BigramComparator comparator = BigramComparator::cosine;
  size_t overlap_k = 50;  // only used by top_k_overlap
};

// Fitted vocabulary of one (source, size) run, for the optional dump.
struct VocabularyDump {
  std::string source;
  size_t sample_size = 0;
  std::vector<std::pair<std::string, size_t>> entries;  // bigram, doc_freq
};

// For each size: samples the generated corpus, fits one model on the union of
// the reference documents and the sample, and aggregates per-document scores
// against the reference. Deterministic under a fixed seed. When
// `vocabulary_dumps` is given, each per-size fitted vocabulary is appended.
std::vector<SimilaritySample> bigram_similarity_experiment(
    const Corpus& generated, const Corpus& reference,
    const BigramSimilarityOptions& options, const StopwordList& stopwords,
    std::vector<VocabularyDump>* vocabulary_dumps = nullptr);

}  // namespace litsim
