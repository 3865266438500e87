#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "litsim/corpus.hpp"
#include "litsim/textprep.hpp"

namespace litsim {

// Sparse nonnegative term -> weight map. Zero weights are never stored; the
// ordered map keeps every downstream traversal deterministic.
using TermVector = std::map<std::string, double>;

// Raw unigram term frequencies of a tokenized document.
TermVector tf_vector(const TokenizedDoc& doc);

// dot(u,v) / (|u| |v|); 0 when either vector is empty or has zero norm.
double cosine_similarity(const TermVector& u, const TermVector& v);

// |set(a) & set(b)| / |set(a) | set(b)| over the token sets. Both sets empty
// -> 1.0; exactly one empty -> 0.0.
double jaccard_similarity(const TokenizedDoc& a, const TokenizedDoc& b);

enum class SimilarityMetric { cosine, jaccard, tfidf_bigram };

const char* similarity_metric_name(SimilarityMetric metric);

enum class Aggregation { best_match, all_pairs };

enum class CosineWeighting { term_frequency, tfidf };

// Per generated document: the reference document scoring highest against it
// (ties broken by lowest reference id) and the document's aggregate score
// (max under best_match, mean over all references under all_pairs).
struct DocumentMatch {
  std::string generated_id;
  std::string reference_id;
  double score = 0.0;
};

struct SimilaritySample {
  SimilarityMetric metric = SimilarityMetric::cosine;
  size_t sample_size = 0;
  uint64_t seed = 0;   // base experiment seed, not the derived per-size seed
  std::string source;  // generated corpus label
  std::vector<DocumentMatch> per_doc_best;
  double mean_score = 0.0;
};

struct DocsimOptions {
  std::vector<size_t> sizes{10, 25, 50, 75, 100};
  uint64_t seed = 42;
  std::vector<SimilarityMetric> metrics{SimilarityMetric::cosine,
                                        SimilarityMetric::jaccard};
  Aggregation aggregation = Aggregation::best_match;
  CosineWeighting weighting = CosineWeighting::term_frequency;
};

// For each size, draws a seeded sample of generated documents and scores each
// one against every reference document. Deterministic for fixed inputs and
// seed. Requires max(sizes) <= |generated| and a non-empty reference.
std::vector<SimilaritySample> best_match_experiment(const Corpus& generated,
                                                    const Corpus& reference,
                                                    const DocsimOptions& options,
                                                    const StopwordList& stopwords);

}  // namespace litsim
