#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "litsim/corpus.hpp"
#include "litsim/docsim.hpp"
#include "litsim/network.hpp"
#include "litsim/tfidf.hpp"

namespace litsim {

// Options shared by the experiment drivers, deserializable from the flat
// options document that crosses the C API ("seed", "sizes", "stopwords",
// "metrics", "aggregation", "weighting", "comparator", "top_k", "scope",
// "dump_vocabulary"). Unknown keys are ignored.
struct PipelineOptions {
  uint64_t seed = 42;
  std::vector<size_t> sizes{10, 25, 50, 75, 100};
  std::string stopwords_path;  // empty: bundled list
  std::vector<SimilarityMetric> metrics{SimilarityMetric::cosine,
                                        SimilarityMetric::jaccard};
  Aggregation aggregation = Aggregation::best_match;
  CosineWeighting weighting = CosineWeighting::term_frequency;
  BigramComparator comparator = BigramComparator::cosine;
  size_t top_k = 50;
  NetworkScope scope = NetworkScope::per_sample;
  bool dump_vocabulary = false;

  static PipelineOptions from_json(const nlohmann::json& doc);
  StopwordList load_stopwords() const;
};

// Each builder returns a self-contained results document ({"<family>": {...},
// "meta": {...}}). The documents merge key-wise into the combined document
// that `emit_reports` consumes.

nlohmann::json docsim_results(const Corpus& reference,
                              const std::vector<const Corpus*>& generated,
                              const PipelineOptions& options);

nlohmann::json bigram_results(const Corpus& reference,
                              const std::vector<const Corpus*>& generated,
                              const PipelineOptions& options);

nlohmann::json network_results(const Corpus& reference,
                               const std::vector<const Corpus*>& generated,
                               const PipelineOptions& options);

// Runs all three families and merges the documents.
nlohmann::json run_pipeline(const Corpus& reference,
                            const std::vector<const Corpus*>& generated,
                            const PipelineOptions& options);

// Serializes a results document: sorted keys, two-space indent, trailing
// newline. The canonical bytes of results.json.
std::string results_to_string(const nlohmann::json& results);

// Writes every report file derivable from `results` into `out_dir` (see
// README for the file list) plus results.json itself. Returns warnings for
// empty tables. Deterministic: identical documents produce byte-identical
// trees.
std::vector<std::string> emit_reports(const nlohmann::json& results,
                                      const std::string& out_dir);

}  // namespace litsim
