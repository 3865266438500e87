#include "litsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "litsim/error.hpp"

namespace litsim {

using nlohmann::json;

std::string format_score(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

namespace {

// RFC-4180: quote fields containing comma, quote or newline; double quotes.
std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) row.push_back(',');
    row += csv_field(fields[i]);
  }
  row.push_back('\n');
  return row;
}

std::vector<SimilaritySample> sorted_samples(std::vector<SimilaritySample> samples) {
  std::sort(samples.begin(), samples.end(),
            [](const SimilaritySample& a, const SimilaritySample& b) {
              auto key = [](const SimilaritySample& s) {
                return std::tuple(std::string(similarity_metric_name(s.metric)),
                                  s.sample_size, s.source);
              };
              return key(a) < key(b);
            });
  return samples;
}

}  // namespace

std::string similarity_table_csv(const std::vector<SimilaritySample>& samples) {
  std::string out = csv_row({"metric", "sample_size", "seed", "source", "mean_score"});
  for (const auto& sample : sorted_samples(samples)) {
    out += csv_row({similarity_metric_name(sample.metric),
                    std::to_string(sample.sample_size), std::to_string(sample.seed),
                    sample.source, format_score(sample.mean_score)});
  }
  return out;
}

std::string similarity_detail_csv(const std::vector<SimilaritySample>& samples) {
  std::string out = csv_row({"metric", "sample_size", "seed", "source",
                             "generated_id", "reference_id", "score"});
  for (const auto& sample : sorted_samples(samples)) {
    std::vector<DocumentMatch> matches = sample.per_doc_best;
    std::sort(matches.begin(), matches.end(),
              [](const DocumentMatch& a, const DocumentMatch& b) {
                return a.generated_id < b.generated_id;
              });
    for (const auto& match : matches) {
      out += csv_row({similarity_metric_name(sample.metric),
                      std::to_string(sample.sample_size),
                      std::to_string(sample.seed), sample.source,
                      match.generated_id, match.reference_id,
                      format_score(match.score)});
    }
  }
  return out;
}

std::string bigram_table_csv(const std::vector<SimilaritySample>& samples) {
  std::string out = csv_row({"sample_size", "seed", "source", "mean_tfidf_score"});
  for (const auto& sample : sorted_samples(samples)) {
    out += csv_row({std::to_string(sample.sample_size), std::to_string(sample.seed),
                    sample.source, format_score(sample.mean_score)});
  }
  return out;
}

std::string centrality_table_csv(const std::vector<CentralityRow>& rows) {
  std::vector<CentralityRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const CentralityRow& a, const CentralityRow& b) {
              return std::tie(a.dataset_size, a.source) <
                     std::tie(b.dataset_size, b.source);
            });
  std::string out = csv_row({"dataset_size", "source", "degree", "closeness"});
  for (const auto& row : sorted) {
    out += csv_row({std::to_string(row.dataset_size), row.source,
                    format_score(row.mean_degree), format_score(row.mean_closeness)});
  }
  return out;
}

std::string wordcloud_json(const RankedBigrams& ranked) {
  json doc = json::array();
  for (const auto& [bigram, count] : ranked.entries) {
    doc.push_back({{"bigram", bigram.text()}, {"count", count}});
  }
  return doc.dump(2) + "\n";
}

std::string rank_table(const RankComparisonTable& table, RankTableFormat format) {
  auto cell = [](const std::optional<size_t>& rank) {
    return rank ? std::to_string(*rank) : std::string("--");
  };

  if (format == RankTableFormat::csv) {
    std::vector<std::string> header{"rank", table.reference_source + "_bigram"};
    for (const auto& source : table.sources) header.push_back(source);
    std::string out = csv_row(header);
    for (const auto& row : table.rows) {
      std::vector<std::string> fields{std::to_string(row.rank), row.bigram.text()};
      for (const auto& rank : row.source_ranks) fields.push_back(cell(rank));
      out += csv_row(fields);
    }
    return out;
  }

  std::string out = "| rank | " + table.reference_source + " bigram |";
  std::string rule = "|---:|---|";
  for (const auto& source : table.sources) {
    out += " " + source + " |";
    rule += "---:|";
  }
  out += "\n" + rule + "\n";
  for (const auto& row : table.rows) {
    out += "| " + std::to_string(row.rank) + " | " + row.bigram.text() + " |";
    for (const auto& rank : row.source_ranks) out += " " + cell(rank) + " |";
    out += "\n";
  }
  return out;
}

std::string series_csv(const std::vector<size_t>& sizes,
                       const std::vector<SeriesColumn>& columns) {
  std::vector<std::string> header{"sample_size"};
  for (const auto& column : columns) header.push_back(column.source);
  std::string out = csv_row(header);
  for (size_t i = 0; i < sizes.size(); ++i) {
    std::vector<std::string> fields{std::to_string(sizes[i])};
    for (const auto& column : columns) {
      fields.push_back(i < column.values.size() ? format_score(column.values[i])
                                                : std::string("--"));
    }
    out += csv_row(fields);
  }
  return out;
}

std::string edge_list_csv(
    const std::vector<std::pair<BigramNetwork::Edge, uint64_t>>& edges) {
  std::string out = csv_row({"node_a", "node_b", "weight"});
  for (const auto& [edge, weight] : edges) {
    out += csv_row({edge.first, edge.second, std::to_string(weight)});
  }
  return out;
}

std::string edge_list_csv(const BigramNetwork& net) {
  std::vector<std::pair<BigramNetwork::Edge, uint64_t>> edges(net.edges().begin(),
                                                              net.edges().end());
  return edge_list_csv(edges);
}

std::string network_json(const BigramNetwork& net) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& node : net.nodes()) doc["nodes"].push_back(node);
  doc["edges"] = json::array();
  for (const auto& [edge, weight] : net.edges()) {
    doc["edges"].push_back({{"a", edge.first}, {"b", edge.second}, {"weight", weight}});
  }
  doc["degree"] = degree_centrality(net);
  doc["closeness"] = closeness_centrality(net);
  return doc.dump(2) + "\n";
}

std::string vocabulary_csv(const std::vector<std::pair<std::string, size_t>>& entries) {
  std::string out = csv_row({"bigram", "doc_freq"});
  for (const auto& [bigram, df] : entries) {
    out += csv_row({bigram, std::to_string(df)});
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

}  // namespace litsim
