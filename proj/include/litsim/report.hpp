#pragma once

#include <string>
#include <vector>

#include "litsim/docsim.hpp"
#include "litsim/network.hpp"

namespace litsim {

// All emitters are pure functions of their inputs: fixed column orders, fixed
// 4-decimal float formatting, RFC-4180 quoting, LF endings. Identical inputs
// produce byte-identical files.

// "0.3612"-style fixed 4-decimal rendering used by every table.
std::string format_score(double value);

enum class RankTableFormat { csv, markdown };

// metric,sample_size,seed,source,mean_score sorted by (metric, size, source).
std::string similarity_table_csv(const std::vector<SimilaritySample>& samples);

// metric,sample_size,seed,source,generated_id,reference_id,score; one row per
// per-document match, sorted by (metric, size, source, generated_id).
std::string similarity_detail_csv(const std::vector<SimilaritySample>& samples);

// sample_size,seed,source,mean_tfidf_score sorted by (size, source).
std::string bigram_table_csv(const std::vector<SimilaritySample>& samples);

// dataset_size,source,degree,closeness sorted by (size, source).
std::string centrality_table_csv(const std::vector<CentralityRow>& rows);

// JSON array of {"bigram","count"} in rank order.
std::string wordcloud_json(const RankedBigrams& ranked);

// Reference ranks with one column per other source; absences rendered "--".
std::string rank_table(const RankComparisonTable& table, RankTableFormat format);

// One column per source, one row per sample size: the plot-ready series for a
// single metric. `values[source][size]` must be fully populated.
struct SeriesColumn {
  std::string source;
  std::vector<double> values;  // parallel to `sizes`
};

std::string series_csv(const std::vector<size_t>& sizes,
                       const std::vector<SeriesColumn>& columns);

// node_a,node_b,weight sorted by endpoint pair.
std::string edge_list_csv(const BigramNetwork& net);
std::string edge_list_csv(
    const std::vector<std::pair<BigramNetwork::Edge, uint64_t>>& edges);

// {"closeness","degree","edges","nodes"} document for one network.
std::string network_json(const BigramNetwork& net);

// bigram,doc_freq rows in vocabulary order.
std::string vocabulary_csv(const std::vector<std::pair<std::string, size_t>>& entries);

// Writes `content` to `path` as-is (parent directories are created). Throws
// Error(io) on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace litsim
