#include "litsim/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "litsim/error.hpp"
#include "litsim/report.hpp"
#include "litsim/version.hpp"

namespace litsim {

using nlohmann::json;

namespace {

template <typename T>
T require_key(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::argument, std::string("invalid value for option \"") + key + "\"");
  }
}

SimilarityMetric metric_from_name(const std::string& name) {
  if (name == "cosine") return SimilarityMetric::cosine;
  if (name == "jaccard") return SimilarityMetric::jaccard;
  if (name == "tfidf_bigram") return SimilarityMetric::tfidf_bigram;
  throw Error(ErrorCode::argument, "unknown metric '" + name + "'");
}

}  // namespace

PipelineOptions PipelineOptions::from_json(const json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::argument, "options must be a JSON object");
  }
  PipelineOptions options;
  options.seed = require_key<uint64_t>(doc, "seed", options.seed);
  options.sizes = require_key<std::vector<size_t>>(doc, "sizes", options.sizes);
  options.stopwords_path = require_key<std::string>(doc, "stopwords", "");
  options.top_k = require_key<size_t>(doc, "top_k", options.top_k);
  options.dump_vocabulary =
      require_key<bool>(doc, "dump_vocabulary", options.dump_vocabulary);

  if (doc.contains("metrics")) {
    options.metrics.clear();
    for (const auto& name : require_key<std::vector<std::string>>(doc, "metrics", {})) {
      SimilarityMetric metric = metric_from_name(name);
      if (metric == SimilarityMetric::tfidf_bigram) {
        throw Error(ErrorCode::argument,
                    "tfidf_bigram is the bigram experiment's metric, not a "
                    "document metric");
      }
      options.metrics.push_back(metric);
    }
    if (options.metrics.empty()) {
      throw Error(ErrorCode::argument, "metrics must not be empty");
    }
  }

  std::string aggregation = require_key<std::string>(doc, "aggregation", "best-match");
  if (aggregation == "best-match") options.aggregation = Aggregation::best_match;
  else if (aggregation == "all-pairs") options.aggregation = Aggregation::all_pairs;
  else throw Error(ErrorCode::argument, "unknown aggregation '" + aggregation + "'");

  std::string weighting = require_key<std::string>(doc, "weighting", "tf");
  if (weighting == "tf") options.weighting = CosineWeighting::term_frequency;
  else if (weighting == "tfidf") options.weighting = CosineWeighting::tfidf;
  else throw Error(ErrorCode::argument, "unknown weighting '" + weighting + "'");

  std::string comparator = require_key<std::string>(doc, "comparator", "cosine");
  if (comparator == "cosine") options.comparator = BigramComparator::cosine;
  else if (comparator == "top-k-overlap") options.comparator = BigramComparator::top_k_overlap;
  else throw Error(ErrorCode::argument, "unknown comparator '" + comparator + "'");

  std::string scope = require_key<std::string>(doc, "scope", "per-sample");
  if (scope == "per-sample") options.scope = NetworkScope::per_sample;
  else if (scope == "full-corpus") options.scope = NetworkScope::full_corpus;
  else throw Error(ErrorCode::argument, "unknown scope '" + scope + "'");

  if (options.sizes.empty()) {
    throw Error(ErrorCode::argument, "sizes must not be empty");
  }
  return options;
}

StopwordList PipelineOptions::load_stopwords() const {
  if (stopwords_path.empty()) return StopwordList::bundled();
  return StopwordList::from_file(stopwords_path);
}

namespace {

std::vector<const Corpus*> sorted_by_label(std::vector<const Corpus*> corpora) {
  std::sort(corpora.begin(), corpora.end(),
            [](const Corpus* a, const Corpus* b) { return a->label < b->label; });
  std::set<std::string> labels;
  for (const Corpus* corpus : corpora) {
    if (!labels.insert(corpus->label).second) {
      throw Error(ErrorCode::argument,
                  "duplicate generated corpus label '" + corpus->label + "'");
    }
  }
  return corpora;
}

char hex_digit(uint64_t v) { return "0123456789abcdef"[v & 0xF]; }

std::string hex64(uint64_t value) {
  std::string out = "0x";
  for (int shift = 60; shift >= 0; shift -= 4) {
    out.push_back(hex_digit(value >> shift));
  }
  return out;
}

json meta_block(const Corpus& reference, const std::vector<const Corpus*>& generated,
                const PipelineOptions& options, const StopwordList& stopwords) {
  json labels = json::array();
  for (const Corpus* corpus : generated) labels.push_back(corpus->label);
  return json{{"generated", labels},
              {"reference", reference.label},
              {"seed", options.seed},
              {"sizes", options.sizes},
              {"stopwords",
               {{"count", stopwords.size()},
                {"fnv1a64", hex64(stopwords_fingerprint(stopwords))}}},
              {"tool", "litsim"},
              {"version", kVersion}};
}

json sample_to_json(const SimilaritySample& sample) {
  json matches = json::array();
  for (const auto& match : sample.per_doc_best) {
    matches.push_back({{"generated_id", match.generated_id},
                       {"reference_id", match.reference_id},
                       {"score", match.score}});
  }
  return json{{"mean_score", sample.mean_score},
              {"metric", similarity_metric_name(sample.metric)},
              {"per_doc_best", std::move(matches)},
              {"sample_size", sample.sample_size},
              {"seed", sample.seed},
              {"source", sample.source}};
}

SimilaritySample sample_from_json(const json& doc) {
  SimilaritySample sample;
  sample.metric = metric_from_name(doc.at("metric").get<std::string>());
  sample.sample_size = doc.at("sample_size").get<size_t>();
  sample.seed = doc.at("seed").get<uint64_t>();
  sample.source = doc.at("source").get<std::string>();
  sample.mean_score = doc.at("mean_score").get<double>();
  for (const auto& entry : doc.at("per_doc_best")) {
    sample.per_doc_best.push_back({entry.at("generated_id").get<std::string>(),
                                   entry.at("reference_id").get<std::string>(),
                                   entry.at("score").get<double>()});
  }
  return sample;
}

json ranking_to_json(const RankedBigrams& ranked) {
  json doc = json::array();
  for (const auto& [bigram, count] : ranked.entries) {
    doc.push_back({{"bigram", bigram.text()}, {"count", count}});
  }
  return doc;
}

json network_to_json(const BigramNetwork& net) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : net.nodes()) doc["nodes"].push_back(node);
  doc["edges"] = json::array();
  for (const auto& [edge, weight] : net.edges()) {
    doc["edges"].push_back({{"a", edge.first}, {"b", edge.second}, {"weight", weight}});
  }
  doc["degree"] = degree_centrality(net);
  doc["closeness"] = closeness_centrality(net);
  return doc;
}

}  // namespace

json docsim_results(const Corpus& reference,
                    const std::vector<const Corpus*>& generated,
                    const PipelineOptions& options) {
  auto corpora = sorted_by_label(generated);
  StopwordList stopwords = options.load_stopwords();

  DocsimOptions experiment;
  experiment.sizes = options.sizes;
  experiment.seed = options.seed;
  experiment.metrics = options.metrics;
  experiment.aggregation = options.aggregation;
  experiment.weighting = options.weighting;

  json samples = json::array();
  for (const Corpus* corpus : corpora) {
    for (const auto& sample :
         best_match_experiment(*corpus, reference, experiment, stopwords)) {
      samples.push_back(sample_to_json(sample));
    }
  }
  return json{{"docsim", {{"samples", std::move(samples)}, {"warnings", json::array()}}},
              {"meta", meta_block(reference, corpora, options, stopwords)}};
}

json bigram_results(const Corpus& reference,
                    const std::vector<const Corpus*>& generated,
                    const PipelineOptions& options) {
  auto corpora = sorted_by_label(generated);
  StopwordList stopwords = options.load_stopwords();

  BigramSimilarityOptions experiment;
  experiment.sizes = options.sizes;
  experiment.seed = options.seed;
  experiment.aggregation = options.aggregation;
  experiment.comparator = options.comparator;
  experiment.overlap_k = options.top_k;

  json samples = json::array();
  json vocabularies = json::array();
  for (const Corpus* corpus : corpora) {
    std::vector<VocabularyDump> dumps;
    auto result = bigram_similarity_experiment(
        *corpus, reference, experiment, stopwords,
        options.dump_vocabulary ? &dumps : nullptr);
    for (const auto& sample : result) samples.push_back(sample_to_json(sample));
    for (const auto& dump : dumps) {
      json entries = json::array();
      for (const auto& [bigram, df] : dump.entries) {
        entries.push_back({{"bigram", bigram}, {"doc_freq", df}});
      }
      vocabularies.push_back({{"entries", std::move(entries)},
                              {"sample_size", dump.sample_size},
                              {"source", dump.source}});
    }
  }

  json family{{"samples", std::move(samples)}, {"warnings", json::array()}};
  if (options.dump_vocabulary) family["vocabularies"] = std::move(vocabularies);
  return json{{"bigrams", std::move(family)},
              {"meta", meta_block(reference, corpora, options, stopwords)}};
}

json network_results(const Corpus& reference,
                     const std::vector<const Corpus*>& generated,
                     const PipelineOptions& options) {
  auto corpora = sorted_by_label(generated);
  StopwordList stopwords = options.load_stopwords();

  NetworkOptions experiment;
  experiment.sizes = options.sizes;
  experiment.seed = options.seed;
  experiment.top_k = options.top_k;
  experiment.scope = options.scope;

  std::vector<std::string> warnings;
  auto rows = centrality_experiment(reference, corpora, experiment, stopwords, &warnings);

  json summaries = json::array();
  for (const auto& row : rows) {
    summaries.push_back({{"closeness", row.mean_closeness},
                         {"dataset_size", row.dataset_size},
                         {"degree", row.mean_degree},
                         {"source", row.source}});
  }

  // Whole-corpus rankings back the word clouds, the rank-comparison table,
  // the exported networks and the novel-link sets.
  RankedBigrams reference_ranked = top_k_bigrams(reference, experiment.top_k, stopwords);
  BigramNetwork reference_net = build_network(reference_ranked);

  json rankings;
  json networks;
  json novel;
  rankings[reference.label] = ranking_to_json(reference_ranked);
  networks[reference.label] = network_to_json(reference_net);

  std::vector<std::pair<std::string, RankedBigrams>> others;
  for (const Corpus* corpus : corpora) {
    RankedBigrams ranked = top_k_bigrams(*corpus, experiment.top_k, stopwords);
    BigramNetwork net = build_network(ranked);
    rankings[corpus->label] = ranking_to_json(ranked);
    networks[corpus->label] = network_to_json(net);
    json links = json::array();
    for (const auto& [edge, weight] : novel_links(net, reference_net)) {
      links.push_back({{"a", edge.first}, {"b", edge.second}, {"weight", weight}});
    }
    novel[corpus->label] = std::move(links);
    others.emplace_back(corpus->label, std::move(ranked));
  }

  RankComparisonTable table = rank_comparison(reference.label, reference_ranked, others);
  json table_rows = json::array();
  for (const auto& row : table.rows) {
    json ranks;
    for (size_t i = 0; i < table.sources.size(); ++i) {
      if (row.source_ranks[i]) ranks[table.sources[i]] = *row.source_ranks[i];
      else ranks[table.sources[i]] = nullptr;
    }
    table_rows.push_back({{"bigram", row.bigram.text()},
                          {"rank", row.rank},
                          {"source_ranks", std::move(ranks)}});
  }
  json rank_table_doc{{"reference_source", table.reference_source},
                      {"rows", std::move(table_rows)},
                      {"sources", table.sources}};

  return json{{"meta", meta_block(reference, corpora, options, stopwords)},
              {"network",
               {{"networks", std::move(networks)},
                {"novel_links", std::move(novel)},
                {"rank_table", std::move(rank_table_doc)},
                {"rankings", std::move(rankings)},
                {"summaries", std::move(summaries)},
                {"warnings", warnings}}}};
}

json run_pipeline(const Corpus& reference,
                  const std::vector<const Corpus*>& generated,
                  const PipelineOptions& options) {
  json merged = docsim_results(reference, generated, options);
  merged["bigrams"] = bigram_results(reference, generated, options)["bigrams"];
  merged["network"] = network_results(reference, generated, options)["network"];
  return merged;
}

std::string results_to_string(const json& results) {
  return results.dump(2) + "\n";
}

namespace {

std::string safe_name(const std::string& label) {
  std::string out;
  for (char c : label) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out;
}

// Plot series for one metric: one column per source, one row per size.
std::pair<std::vector<size_t>, std::vector<SeriesColumn>> series_of(
    const std::vector<SimilaritySample>& samples, SimilarityMetric metric) {
  std::set<size_t> sizes;
  std::set<std::string> sources;
  std::map<std::pair<std::string, size_t>, double> values;
  for (const auto& sample : samples) {
    if (sample.metric != metric) continue;
    sizes.insert(sample.sample_size);
    sources.insert(sample.source);
    values[{sample.source, sample.sample_size}] = sample.mean_score;
  }
  std::vector<size_t> size_list(sizes.begin(), sizes.end());
  std::vector<SeriesColumn> columns;
  for (const auto& source : sources) {
    SeriesColumn column{source, {}};
    for (size_t size : size_list) {
      column.values.push_back(values[{source, size}]);
    }
    columns.push_back(std::move(column));
  }
  return {std::move(size_list), std::move(columns)};
}

}  // namespace

std::vector<std::string> emit_reports(const json& results, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> warnings;
  fs::path dir(out_dir);

  auto emit = [&](const std::string& name, const std::string& content) {
    write_file((dir / name).string(), content);
  };

  emit("results.json", results_to_string(results));

  if (results.contains("docsim")) {
    std::vector<SimilaritySample> samples;
    for (const auto& doc : results.at("docsim").at("samples")) {
      samples.push_back(sample_from_json(doc));
    }
    if (samples.empty()) warnings.push_back("document similarity table is empty");
    emit("document_similarity.csv", similarity_table_csv(samples));
    emit("document_similarity_detail.csv", similarity_detail_csv(samples));
    std::set<SimilarityMetric> metrics;
    for (const auto& sample : samples) metrics.insert(sample.metric);
    for (SimilarityMetric metric : metrics) {
      auto [sizes, columns] = series_of(samples, metric);
      emit(std::string("series_") + similarity_metric_name(metric) + ".csv",
           series_csv(sizes, columns));
    }
  }

  if (results.contains("bigrams")) {
    std::vector<SimilaritySample> samples;
    for (const auto& doc : results.at("bigrams").at("samples")) {
      samples.push_back(sample_from_json(doc));
    }
    if (samples.empty()) warnings.push_back("bigram similarity table is empty");
    emit("bigram_similarity.csv", bigram_table_csv(samples));
    auto [sizes, columns] = series_of(samples, SimilarityMetric::tfidf_bigram);
    emit("series_tfidf_bigram.csv", series_csv(sizes, columns));
    if (results.at("bigrams").contains("vocabularies")) {
      for (const auto& dump : results.at("bigrams").at("vocabularies")) {
        std::vector<std::pair<std::string, size_t>> entries;
        for (const auto& entry : dump.at("entries")) {
          entries.push_back({entry.at("bigram").get<std::string>(),
                             entry.at("doc_freq").get<size_t>()});
        }
        emit("vocabulary_" + safe_name(dump.at("source").get<std::string>()) + "_" +
                 std::to_string(dump.at("sample_size").get<size_t>()) + ".csv",
             vocabulary_csv(entries));
      }
    }
  }

  if (results.contains("network")) {
    const json& network = results.at("network");

    std::vector<CentralityRow> rows;
    for (const auto& doc : network.at("summaries")) {
      rows.push_back({doc.at("dataset_size").get<size_t>(),
                      doc.at("source").get<std::string>(),
                      doc.at("degree").get<double>(),
                      doc.at("closeness").get<double>()});
    }
    if (rows.empty()) warnings.push_back("centrality table is empty");
    emit("centrality.csv", centrality_table_csv(rows));

    // Degree/closeness series across dataset sizes.
    std::set<size_t> sizes;
    std::set<std::string> sources;
    std::map<std::pair<std::string, size_t>, std::pair<double, double>> values;
    for (const auto& row : rows) {
      sizes.insert(row.dataset_size);
      sources.insert(row.source);
      values[{row.source, row.dataset_size}] = {row.mean_degree, row.mean_closeness};
    }
    std::vector<size_t> size_list(sizes.begin(), sizes.end());
    std::vector<SeriesColumn> degree_columns;
    std::vector<SeriesColumn> closeness_columns;
    for (const auto& source : sources) {
      SeriesColumn degree{source, {}};
      SeriesColumn closeness{source, {}};
      for (size_t size : size_list) {
        auto it = values.find({source, size});
        degree.values.push_back(it == values.end() ? 0.0 : it->second.first);
        closeness.values.push_back(it == values.end() ? 0.0 : it->second.second);
      }
      degree_columns.push_back(std::move(degree));
      closeness_columns.push_back(std::move(closeness));
    }
    emit("series_degree.csv", series_csv(size_list, degree_columns));
    emit("series_closeness.csv", series_csv(size_list, closeness_columns));

    if (network.contains("rank_table")) {
      const json& doc = network.at("rank_table");
      RankComparisonTable table;
      table.reference_source = doc.at("reference_source").get<std::string>();
      table.sources = doc.at("sources").get<std::vector<std::string>>();
      for (const auto& row_doc : doc.at("rows")) {
        RankComparisonRow row;
        row.rank = row_doc.at("rank").get<size_t>();
        std::string text = row_doc.at("bigram").get<std::string>();
        auto space = text.find(' ');
        row.bigram = {text.substr(0, space),
                      space == std::string::npos ? "" : text.substr(space + 1)};
        for (const auto& source : table.sources) {
          const json& rank = row_doc.at("source_ranks").at(source);
          row.source_ranks.push_back(rank.is_null()
                                         ? std::nullopt
                                         : std::optional<size_t>(rank.get<size_t>()));
        }
        table.rows.push_back(std::move(row));
      }
      emit("bigram_ranks.csv", rank_table(table, RankTableFormat::csv));
      emit("bigram_ranks.md", rank_table(table, RankTableFormat::markdown));
    }

    if (network.contains("rankings")) {
      for (const auto& [source, ranking] : network.at("rankings").items()) {
        emit("wordcloud_" + safe_name(source) + ".json", ranking.dump(2) + "\n");
      }
    }

    if (network.contains("networks")) {
      for (const auto& [source, net_doc] : network.at("networks").items()) {
        emit("network_" + safe_name(source) + ".json", net_doc.dump(2) + "\n");
        std::vector<std::pair<BigramNetwork::Edge, uint64_t>> edges;
        for (const auto& edge : net_doc.at("edges")) {
          edges.push_back({{edge.at("a").get<std::string>(),
                            edge.at("b").get<std::string>()},
                           edge.at("weight").get<uint64_t>()});
        }
        emit("network_" + safe_name(source) + "_edges.csv", edge_list_csv(edges));
      }
    }

    if (network.contains("novel_links")) {
      for (const auto& [source, links] : network.at("novel_links").items()) {
        std::vector<std::pair<BigramNetwork::Edge, uint64_t>> edges;
        for (const auto& edge : links) {
          edges.push_back({{edge.at("a").get<std::string>(),
                            edge.at("b").get<std::string>()},
                           edge.at("weight").get<uint64_t>()});
        }
        emit("novel_links_" + safe_name(source) + ".csv", edge_list_csv(edges));
      }
    }
  }

  return warnings;
}

}  // namespace litsim
