#include "litsim/network.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "litsim/error.hpp"
#include "litsim/seeding.hpp"

namespace litsim {

RankedBigrams top_k_bigrams(const std::vector<TokenizedDoc>& docs, size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::argument, "k must be positive");
  }
  std::map<Bigram, uint64_t> counts;
  for (const auto& doc : docs) {
    for (const auto& bigram : extract_bigrams(doc)) {
      counts[bigram] += 1;
    }
  }
  std::vector<std::pair<Bigram, uint64_t>> entries(counts.begin(), counts.end());
  // Count descending; the map already delivers lexicographic order, so a
  // stable sort leaves ties lexicographically ranked.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (entries.size() > k) entries.resize(k);

  RankedBigrams ranked;
  ranked.entries = std::move(entries);
  ranked.k = k;
  return ranked;
}

RankedBigrams top_k_bigrams(const Corpus& corpus, size_t k,
                            const StopwordList& stopwords) {
  return top_k_bigrams(tokenize_corpus(corpus, stopwords), k);
}

void BigramNetwork::add_bigram(const Bigram& bigram, uint64_t count) {
  nodes_.insert(bigram.first);
  nodes_.insert(bigram.second);
  Edge edge = bigram.first <= bigram.second
                  ? Edge{bigram.first, bigram.second}
                  : Edge{bigram.second, bigram.first};
  edges_[edge] += count;
}

bool BigramNetwork::has_edge(const std::string& a, const std::string& b) const {
  Edge edge = a <= b ? Edge{a, b} : Edge{b, a};
  return edges_.count(edge) != 0;
}

bool BigramNetwork::has_self_loop(const std::string& node) const {
  return edges_.count({node, node}) != 0;
}

std::vector<std::string> BigramNetwork::neighbors(const std::string& node) const {
  std::vector<std::string> result;
  for (const auto& [edge, weight] : edges_) {
    if (edge.first == node && edge.second != node) result.push_back(edge.second);
    else if (edge.second == node && edge.first != node) result.push_back(edge.first);
  }
  std::sort(result.begin(), result.end());
  return result;
}

BigramNetwork build_network(const RankedBigrams& ranked) {
  BigramNetwork net;
  for (const auto& [bigram, count] : ranked.entries) {
    net.add_bigram(bigram, count);
  }
  return net;
}

namespace {

// Node list plus sorted adjacency (self-loops excluded); the shared scaffold
// for the traversal-based measures.
struct Adjacency {
  std::vector<std::string> nodes;
  std::map<std::string, std::vector<std::string>> neighbors;
};

Adjacency adjacency_of(const BigramNetwork& net) {
  Adjacency adj;
  adj.nodes.assign(net.nodes().begin(), net.nodes().end());
  for (const auto& node : adj.nodes) adj.neighbors[node] = {};
  for (const auto& [edge, weight] : net.edges()) {
    if (edge.first == edge.second) continue;
    adj.neighbors[edge.first].push_back(edge.second);
    adj.neighbors[edge.second].push_back(edge.first);
  }
  for (auto& [node, list] : adj.neighbors) std::sort(list.begin(), list.end());
  return adj;
}

// BFS distances from `start`; unreached nodes are absent.
std::map<std::string, size_t> bfs_distances(const Adjacency& adj,
                                            const std::string& start) {
  std::map<std::string, size_t> dist;
  dist[start] = 0;
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    std::string node = std::move(queue.front());
    queue.pop_front();
    size_t d = dist[node];
    for (const auto& next : adj.neighbors.at(node)) {
      if (dist.emplace(next, d + 1).second) queue.push_back(next);
    }
  }
  return dist;
}

}  // namespace

std::map<std::string, double> degree_centrality(const BigramNetwork& net) {
  std::map<std::string, double> result;
  size_t n = net.node_count();
  if (n < 2) {
    for (const auto& node : net.nodes()) result[node] = 0.0;
    return result;
  }
  Adjacency adj = adjacency_of(net);
  for (const auto& node : adj.nodes) {
    double degree = static_cast<double>(adj.neighbors.at(node).size());
    if (net.has_self_loop(node)) degree += 1.0;
    result[node] = degree / static_cast<double>(n - 1);
  }
  return result;
}

std::map<std::string, double> closeness_centrality(const BigramNetwork& net) {
  std::map<std::string, double> result;
  size_t n = net.node_count();
  if (n < 2) {
    for (const auto& node : net.nodes()) result[node] = 0.0;
    return result;
  }
  Adjacency adj = adjacency_of(net);
  for (const auto& node : adj.nodes) {
    auto dist = bfs_distances(adj, node);
    size_t component_size = dist.size();
    if (component_size < 2) {
      result[node] = 0.0;
      continue;
    }
    size_t total = 0;
    for (const auto& [other, d] : dist) total += d;
    double reachable = static_cast<double>(component_size - 1);
    result[node] = (reachable / static_cast<double>(n - 1)) *
                   (reachable / static_cast<double>(total));
  }
  return result;
}

namespace {

double mean_of(const std::map<std::string, double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [node, value] : values) sum += value;
  return sum / static_cast<double>(values.size());
}

}  // namespace

CentralitySummary centrality_summary(const BigramNetwork& net) {
  CentralitySummary summary;
  summary.degree = degree_centrality(net);
  summary.closeness = closeness_centrality(net);
  summary.mean_degree = mean_of(summary.degree);
  summary.mean_closeness = mean_of(summary.closeness);
  return summary;
}

std::vector<std::set<std::string>> connected_components(const BigramNetwork& net) {
  std::vector<std::set<std::string>> components;
  if (net.node_count() == 0) return components;
  Adjacency adj = adjacency_of(net);
  std::set<std::string> unvisited(adj.nodes.begin(), adj.nodes.end());
  // adj.nodes is sorted, so components come out ordered by smallest member.
  for (const auto& start : adj.nodes) {
    if (unvisited.count(start) == 0) continue;
    auto dist = bfs_distances(adj, start);
    std::set<std::string> component;
    for (const auto& [node, d] : dist) {
      component.insert(node);
      unvisited.erase(node);
    }
    components.push_back(std::move(component));
  }
  return components;
}

std::vector<std::pair<BigramNetwork::Edge, uint64_t>> novel_links(
    const BigramNetwork& generated, const BigramNetwork& reference) {
  std::vector<std::pair<BigramNetwork::Edge, uint64_t>> result;
  for (const auto& [edge, weight] : generated.edges()) {
    if (reference.edges().count(edge) == 0) {
      result.push_back({edge, weight});
    }
  }
  return result;  // map iteration is already sorted by endpoint pair
}

RankComparisonTable rank_comparison(
    const std::string& reference_label, const RankedBigrams& reference,
    const std::vector<std::pair<std::string, RankedBigrams>>& others) {
  RankComparisonTable table;
  table.reference_source = reference_label;

  std::vector<std::map<Bigram, size_t>> rank_maps;
  for (const auto& [source, ranked] : others) {
    table.sources.push_back(source);
    std::map<Bigram, size_t> ranks;
    for (size_t i = 0; i < ranked.entries.size(); ++i) {
      ranks.emplace(ranked.entries[i].first, i + 1);
    }
    rank_maps.push_back(std::move(ranks));
  }

  for (size_t i = 0; i < reference.entries.size(); ++i) {
    RankComparisonRow row;
    row.rank = i + 1;
    row.bigram = reference.entries[i].first;
    for (const auto& ranks : rank_maps) {
      auto it = ranks.find(row.bigram);
      row.source_ranks.push_back(it == ranks.end()
                                     ? std::nullopt
                                     : std::optional<size_t>(it->second));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<CentralityRow> centrality_experiment(
    const Corpus& reference, const std::vector<const Corpus*>& generated,
    const NetworkOptions& options, const StopwordList& stopwords,
    std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& message) {
    if (warnings) warnings->push_back(message);
  };

  auto summarize = [&](const Corpus& corpus, size_t dataset_size) {
    auto ranked = top_k_bigrams(corpus, options.top_k, stopwords);
    auto net = build_network(ranked);
    if (ranked.entries.empty()) {
      warn("corpus '" + corpus.label + "' (size " +
           std::to_string(dataset_size) + ") has no bigrams");
    } else if (net.node_count() < 2) {
      warn("network for '" + corpus.label + "' (size " +
           std::to_string(dataset_size) +
           ") has fewer than two nodes; centralities are zero");
    }
    auto summary = centrality_summary(net);
    return CentralityRow{dataset_size, corpus.label, summary.mean_degree,
                         summary.mean_closeness};
  };

  std::vector<CentralityRow> rows;
  if (options.scope == NetworkScope::full_corpus) {
    rows.push_back(summarize(reference, reference.size()));
    for (const Corpus* corpus : generated) {
      rows.push_back(summarize(*corpus, corpus->size()));
    }
    return rows;
  }

  for (size_t size : options.sizes) {
    if (size > reference.size()) {
      throw Error(ErrorCode::argument,
                  "sample size " + std::to_string(size) +
                      " exceeds reference corpus size " +
                      std::to_string(reference.size()));
    }
    // Size-matched reference subset on a parallel seed stream.
    Corpus reference_sample = sample_corpus(
        reference, size, derive_seed(options.seed, size, SeedRole::reference_sample));
    rows.push_back(summarize(reference_sample, size));

    for (const Corpus* corpus : generated) {
      Corpus sample = sample_corpus(
          *corpus, size, derive_seed(options.seed, size, SeedRole::generated_sample));
      rows.push_back(summarize(sample, size));
    }
  }
  return rows;
}

}  // namespace litsim
