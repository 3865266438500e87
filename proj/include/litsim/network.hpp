#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "litsim/corpus.hpp"
#include "litsim/textprep.hpp"

namespace litsim {

// Bigrams ranked by corpus-wide count, descending, ties broken
// lexicographically; at most k entries.
struct RankedBigrams {
  std::vector<std::pair<Bigram, uint64_t>> entries;
  size_t k = 0;
};

RankedBigrams top_k_bigrams(const std::vector<TokenizedDoc>& docs, size_t k);
RankedBigrams top_k_bigrams(const Corpus& corpus, size_t k,
                            const StopwordList& stopwords);

// Undirected simple graph over unigrams. Each bigram (a,b) contributes nodes
// a and b and the edge {a,b}; repeated bigrams accumulate edge weight. A
// bigram with first == second yields a self-loop.
class BigramNetwork {
 public:
  using Edge = std::pair<std::string, std::string>;  // normalized: first <= second

  void add_bigram(const Bigram& bigram, uint64_t count = 1);

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::map<Edge, uint64_t>& edges() const { return edges_; }
  size_t node_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }

  bool has_edge(const std::string& a, const std::string& b) const;
  bool has_self_loop(const std::string& node) const;
  // Adjacent distinct nodes, sorted; the node itself is never listed.
  std::vector<std::string> neighbors(const std::string& node) const;

 private:
  std::set<std::string> nodes_;
  std::map<Edge, uint64_t> edges_;
};

BigramNetwork build_network(const RankedBigrams& ranked);

// deg(v) / (|nodes|-1) with self-loops counting once. Values can exceed 1
// only for a node that carries a self-loop and touches every other node.
// Singleton and empty networks come back all-zero.
std::map<std::string, double> degree_centrality(const BigramNetwork& net);

// Component-scaled closeness: for v in a component of size n_v inside a graph
// of N nodes, ((n_v-1)/(N-1)) * ((n_v-1)/sum of BFS distances from v); nodes
// without neighbors get 0. Edge weights are ignored for distances.
std::map<std::string, double> closeness_centrality(const BigramNetwork& net);

struct CentralitySummary {
  std::map<std::string, double> degree;
  std::map<std::string, double> closeness;
  double mean_degree = 0.0;
  double mean_closeness = 0.0;
};

CentralitySummary centrality_summary(const BigramNetwork& net);

// Undirected components, each listed as a sorted node set, ordered by their
// smallest member.
std::vector<std::set<std::string>> connected_components(const BigramNetwork& net);

// Edges present in `generated` but absent from `reference`, with the weight
// they carry in `generated`; sorted by endpoint pair.
std::vector<std::pair<BigramNetwork::Edge, uint64_t>> novel_links(
    const BigramNetwork& generated, const BigramNetwork& reference);

// One row per reference bigram, in reference rank order, with each other
// source's 1-based rank of that bigram (nullopt = absent).
struct RankComparisonRow {
  size_t rank = 0;
  Bigram bigram;
  std::vector<std::optional<size_t>> source_ranks;  // parallel to table sources
};

struct RankComparisonTable {
  std::string reference_source;
  std::vector<std::string> sources;
  std::vector<RankComparisonRow> rows;
};

RankComparisonTable rank_comparison(
    const std::string& reference_label, const RankedBigrams& reference,
    const std::vector<std::pair<std::string, RankedBigrams>>& others);

enum class NetworkScope {
  per_sample,   // one network per seeded subset per size (default)
  full_corpus,  // one network per source over the whole corpus
};

struct NetworkOptions {
  std::vector<size_t> sizes{10, 25, 50, 75, 100};
  uint64_t seed = 42;
  size_t top_k = 50;
  NetworkScope scope = NetworkScope::per_sample;
};

struct CentralityRow {
  size_t dataset_size = 0;
  std::string source;
  double mean_degree = 0.0;
  double mean_closeness = 0.0;
};

// Centrality table rows for the reference corpus and every generated corpus.
// Under per_sample scope each size gets its own seeded subset per source (the
// reference subset is drawn size-matched on a parallel seed stream), reduced
// to its top-k bigrams. Under full_corpus scope each source contributes one
// row at its full size.
std::vector<CentralityRow> centrality_experiment(
    const Corpus& reference, const std::vector<const Corpus*>& generated,
    const NetworkOptions& options, const StopwordList& stopwords,
    std::vector<std::string>* warnings = nullptr);

}  // namespace litsim
