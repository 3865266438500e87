// Acceptance suite. Runs every criterion end to end and prints one PASS/FAIL
// line per criterion; exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "litsim/acquire.hpp"
#include "litsim/corpus.hpp"
#include "litsim/docsim.hpp"
#include "litsim/network.hpp"
#include "litsim/textprep.hpp"
#include "litsim/tfidf.hpp"
#include "support/oracles.hpp"

using namespace litsim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::vector<std::string> g_details;

void detail(const std::string& message) { g_details.push_back(message); }

void criterion(int id, const std::string& label, const std::function<bool()>& body) {
  g_details.clear();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    detail(std::string("exception: ") + e.what());
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << label
            << "\n";
  if (!ok) {
    ++g_failures;
    for (const auto& line : g_details) std::cout << "       " << line << "\n";
  }
}

std::string fixture(const std::string& name) {
  return std::string(LITSIM_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Corpus load_fixture(const std::string& name, const std::string& source,
                    const std::string& label) {
  LoadOptions options;
  options.source = Source::parse(source);
  options.label = label;
  auto result = load_corpus(fixture(name), options);
  if (!result.corpus) throw std::runtime_error("fixture load failed: " + name);
  return std::move(*result.corpus);
}

int run_cli(const std::string& args) {
  std::string command = std::string(LITSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> tree_files(const fs::path& root) {
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) {
      files.push_back(fs::relative(entry.path(), root).string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool trees_identical(const fs::path& a, const fs::path& b) {
  auto fa = tree_files(a);
  auto fb = tree_files(b);
  if (fa != fb) {
    detail("file lists differ between " + a.string() + " and " + b.string());
    return false;
  }
  for (const auto& name : fa) {
    if (slurp(a / name) != slurp(b / name)) {
      detail("file differs: " + name);
      return false;
    }
  }
  return true;
}

// mean scores keyed by (metric, source, size), pulled out of a results doc.
using MeanTable = std::map<std::tuple<std::string, std::string, size_t>, double>;

MeanTable mean_table(const json& results) {
  MeanTable table;
  for (const char* family : {"docsim", "bigrams"}) {
    if (!results.contains(family)) continue;
    for (const auto& sample : results.at(family).at("samples")) {
      table[{sample.at("metric").get<std::string>(),
             sample.at("source").get<std::string>(),
             sample.at("sample_size").get<size_t>()}] =
          sample.at("mean_score").get<double>();
    }
  }
  return table;
}

const std::vector<size_t> kSizes{10, 25, 50, 75, 100};

bool check_orderings(const MeanTable& table) {
  bool ok = true;
  for (const char* metric : {"cosine", "jaccard", "tfidf_bigram"}) {
    for (size_t size : kSizes) {
      double alpha = table.at({metric, "alpha", size});
      double beta = table.at({metric, "beta", size});
      if (!(alpha > beta)) {
        detail(std::string(metric) + " size " + std::to_string(size) +
               ": alpha " + std::to_string(alpha) + " !> beta " +
               std::to_string(beta));
        ok = false;
      }
    }
  }
  return ok;
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, size_t max_len) {
  static const std::vector<std::string> pool{
      "prostate", "cancer", "treatment", "therapy",  "radiation", "risk",
      "patients", "survival", "dose",    "outcome",  "trial",     "antigen",
      "quality",  "life",     "biopsy",  "hormone",  "screening", "tumor",
      "response", "margin",   "stage",   "grade",    "cohort",    "marker"};
  std::vector<std::string> tokens(rng() % (max_len + 1));
  for (auto& token : tokens) token = pool[rng() % pool.size()];
  return tokens;
}

TokenizedDoc doc_of(std::vector<std::string> tokens) {
  TokenizedDoc doc;
  doc.tokens = std::move(tokens);
  return doc;
}

std::string node_name(size_t i) {
  return "n" + std::string(i < 10 ? "0" : "") + std::to_string(i);
}

struct GraphPair {
  BigramNetwork net;
  oracle::Graph graph;
};

GraphPair from_edges(size_t n, const std::vector<std::pair<size_t, size_t>>& edges) {
  GraphPair pair{BigramNetwork{}, oracle::Graph{n}};
  for (const auto& [a, b] : edges) {
    pair.net.add_bigram({node_name(a), node_name(b)});
    pair.graph.add_edge(a, b);
  }
  for (size_t i = 0; i < n; ++i) {
    if (pair.net.nodes().count(node_name(i)) == 0) {
      pair.net.add_bigram({node_name(i), node_name(i)});
      pair.graph.add_edge(i, i);
    }
  }
  return pair;
}

bool centralities_match(const GraphPair& pair) {
  auto degree = degree_centrality(pair.net);
  auto closeness = closeness_centrality(pair.net);
  auto oracle_degree = oracle::degree_centrality(pair.graph);
  auto oracle_closeness = oracle::closeness_centrality(pair.graph);
  for (size_t i = 0; i < pair.graph.n; ++i) {
    if (degree.at(node_name(i)) != oracle_degree[i]) {
      detail("degree mismatch at node " + std::to_string(i));
      return false;
    }
    if (closeness.at(node_name(i)) != oracle_closeness[i]) {
      detail("closeness mismatch at node " + std::to_string(i));
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  fs::path work = fs::temp_directory_path() / "litsim_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::string corpora_args =
      " --reference " + fixture("reference_500.json") +
      " --reference-label pubmed"
      " --generated alpha=" + fixture("alpha_100.json") +
      " --generated beta=" + fixture("beta_100.json");

  // The desk-scale pipeline runs shared by criteria 5, 6, 7 and 9.
  auto started = std::chrono::steady_clock::now();
  int rc_one = run_cli("all --seed 7" + corpora_args + " --out " +
                       (work / "seed7_a").string());
  auto first_run_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  int rc_two = run_cli("all --seed 7" + corpora_args + " --out " +
                       (work / "seed7_b").string());
  int rc_three = run_cli("all --seed 8" + corpora_args + " --out " +
                         (work / "seed8").string());
  bool runs_ok = rc_one == 0 && rc_two == 0 && rc_three == 0;

  criterion(1, "cosine/jaccard match the brute-force oracle on 200 random docs", [] {
    auto started = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::vector<TokenizedDoc> docs;
    for (int i = 0; i < 200; ++i) docs.push_back(doc_of(random_tokens(rng, 30)));

    std::vector<TermVector> vectors;
    for (const auto& doc : docs) vectors.push_back(tf_vector(doc));

    bool ok = true;
    for (size_t i = 0; i < docs.size() && ok; ++i) {
      for (size_t j = i; j < docs.size() && ok; ++j) {
        double cos = cosine_similarity(vectors[i], vectors[j]);
        double cos_oracle = oracle::cosine(vectors[i], vectors[j]);
        if (std::fabs(cos - cos_oracle) > 1e-9) {
          detail("cosine mismatch at pair " + std::to_string(i) + "," +
                 std::to_string(j));
          ok = false;
        }
        double jac = jaccard_similarity(docs[i], docs[j]);
        double jac_oracle = oracle::jaccard(docs[i].tokens, docs[j].tokens);
        if (std::fabs(jac - jac_oracle) > 1e-9) {
          detail("jaccard mismatch at pair " + std::to_string(i) + "," +
                 std::to_string(j));
          ok = false;
        }
      }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    if (seconds >= 5.0) {
      detail("took " + std::to_string(seconds) + "s (budget 5s)");
      ok = false;
    }
    return ok;
  });

  criterion(2, "tf-idf weights match the closed form; nonzero vectors unit norm", [] {
    std::vector<TokenizedDoc> docs{
        doc_of({"prostate", "cancer", "treatment"}),
        doc_of({"prostate", "cancer", "cells"}),
        doc_of({"prostate", "cancer", "treatment", "options"}),
        doc_of({"radiation", "therapy"})};
    auto model = fit_tfidf(docs);
    bool ok = true;
    for (const auto& doc : docs) {
      auto vector = tfidf_vector(model, doc);
      if (vector.empty()) {
        detail("unexpected zero vector");
        return false;
      }
      double norm_sq = 0.0;
      for (const auto& [term, weight] : vector) norm_sq += weight * weight;
      if (std::fabs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
        detail("norm off unit by " + std::to_string(std::fabs(std::sqrt(norm_sq) - 1.0)));
        ok = false;
      }

      std::map<std::string, double> counts;
      for (size_t i = 1; i < doc.tokens.size(); ++i) {
        counts[doc.tokens[i - 1] + " " + doc.tokens[i]] += 1.0;
      }
      double expected_norm_sq = 0.0;
      for (const auto& [term, tf] : counts) {
        double w = oracle::tfidf_weight(tf, model.doc_freq.at(term), model.n_docs);
        expected_norm_sq += w * w;
      }
      for (const auto& [term, tf] : counts) {
        double expected =
            oracle::tfidf_weight(tf, model.doc_freq.at(term), model.n_docs) /
            std::sqrt(expected_norm_sq);
        if (std::fabs(vector.at(term) - expected) > 1e-9) {
          detail("weight mismatch for '" + term + "'");
          ok = false;
        }
      }
    }
    return ok;
  });

  criterion(3, "centralities equal the oracle exactly on graph families", [] {
    for (size_t n = 2; n <= 10; ++n) {
      std::vector<std::pair<size_t, size_t>> path, cycle, star, complete;
      for (size_t i = 0; i + 1 < n; ++i) path.push_back({i, i + 1});
      cycle = path;
      cycle.push_back({n - 1, 0});
      for (size_t i = 1; i < n; ++i) star.push_back({0, i});
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) complete.push_back({i, j});
      for (const auto& edges : {path, cycle, star, complete}) {
        if (!centralities_match(from_edges(n, edges))) return false;
      }
    }
    std::mt19937_64 rng(3);
    for (int round = 0; round < 20; ++round) {
      size_t n = 2 + rng() % 19;
      std::vector<std::pair<size_t, size_t>> edges;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (rng() % 100 < 30) edges.push_back({i, j});
      if (!centralities_match(from_edges(n, edges))) return false;
    }

    auto k4 = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto summary = centrality_summary(k4.net);
    if (summary.mean_degree != 1.0 || summary.mean_closeness != 1.0) {
      detail("K_4 means are not exactly 1.0");
      return false;
    }
    return true;
  });

  criterion(4, "network construction narrative and size bounds", [] {
    RankedBigrams narrative;
    narrative.k = 50;
    narrative.entries = {{{"prostate", "cancer"}, 1}, {{"cancer", "disease"}, 1}};
    auto net = build_network(narrative);
    if (net.node_count() != 3 || net.edge_count() != 2) {
      detail("expected 3 nodes / 2 edges, got " + std::to_string(net.node_count()) +
             "/" + std::to_string(net.edge_count()));
      return false;
    }

    std::mt19937_64 rng(4);
    for (int round = 0; round < 30; ++round) {
      size_t k = 1 + rng() % 60;
      RankedBigrams ranked;
      ranked.k = k;
      for (size_t i = 0; i < k; ++i) {
        ranked.entries.push_back(
            {{node_name(rng() % 40), node_name(rng() % 40)}, 1 + rng() % 5});
      }
      auto built = build_network(ranked);
      if (built.node_count() > 2 * k || built.edge_count() > k) {
        detail("bounds violated for k=" + std::to_string(k));
        return false;
      }
    }
    return true;
  });

  criterion(5, "high-overlap corpus beats low-overlap on every measure and size",
            [&] {
    if (!runs_ok) {
      detail("pipeline runs failed");
      return false;
    }
    return check_orderings(mean_table(json::parse(slurp(work / "seed7_a" / "results.json"))));
  });

  criterion(6, "mean cosine >= mean jaccard at every sample size", [&] {
    if (!runs_ok) {
      detail("pipeline runs failed");
      return false;
    }
    auto table = mean_table(json::parse(slurp(work / "seed7_a" / "results.json")));
    bool ok = true;
    for (const char* source : {"alpha", "beta"}) {
      for (size_t size : kSizes) {
        double cosine = table.at({"cosine", source, size});
        double jaccard = table.at({"jaccard", source, size});
        if (!(cosine >= jaccard)) {
          detail(std::string(source) + " size " + std::to_string(size) +
                 ": cosine " + std::to_string(cosine) + " < jaccard " +
                 std::to_string(jaccard));
          ok = false;
        }
      }
    }
    return ok;
  });

  criterion(7, "seeded runs are byte-identical; reseeding moves the samples", [&] {
    if (!runs_ok) {
      detail("pipeline runs failed");
      return false;
    }
    if (!trees_identical(work / "seed7_a", work / "seed7_b")) return false;

    std::string detail_seed7 = slurp(work / "seed7_a" / "document_similarity_detail.csv");
    std::string detail_seed8 = slurp(work / "seed8" / "document_similarity_detail.csv");
    if (detail_seed7 == detail_seed8) {
      detail("seed 8 drew the same per-document matches as seed 7");
      return false;
    }
    // The qualitative invariants hold under the new seed too.
    return check_orderings(mean_table(json::parse(slurp(work / "seed8" / "results.json"))));
  });

  criterion(8, "malformed generation fixture yields exactly 2 errors", [] {
    std::string raw = slurp(fixture("generation_malformed.txt"));
    auto parsed = parse_generation(raw, "bard");
    if (parsed.errors.size() != 2) {
      detail("expected 2 errors, got " + std::to_string(parsed.errors.size()));
      return false;
    }
    if (parsed.records.size() != 4) {
      detail("expected 4 accepted records, got " + std::to_string(parsed.records.size()));
      return false;
    }
    bool gpt_id = parsed.errors[0].message.find("GPT-ID") != std::string::npos;
    bool missing = parsed.errors[1].message.find("abstract") != std::string::npos;
    if (!gpt_id || !missing) {
      detail("error messages do not name the violated rules");
      return false;
    }
    return true;
  });

  criterion(9, "desk-scale pipeline finishes under 30s with every report file", [&] {
    if (!runs_ok) {
      detail("pipeline runs failed");
      return false;
    }
    bool ok = true;
    if (first_run_seconds >= 30.0) {
      detail("run took " + std::to_string(first_run_seconds) + "s (budget 30s)");
      ok = false;
    }
    for (const char* name :
         {"results.json", "document_similarity.csv",
          "document_similarity_detail.csv", "bigram_similarity.csv",
          "centrality.csv", "bigram_ranks.csv", "bigram_ranks.md",
          "series_cosine.csv", "series_jaccard.csv", "series_tfidf_bigram.csv",
          "series_degree.csv", "series_closeness.csv", "wordcloud_pubmed.json",
          "wordcloud_alpha.json", "wordcloud_beta.json", "network_pubmed.json",
          "network_alpha.json", "network_beta.json", "network_alpha_edges.csv",
          "novel_links_alpha.csv", "novel_links_beta.csv"}) {
      if (!fs::exists(work / "seed7_a" / name)) {
        detail(std::string("missing report file: ") + name);
        ok = false;
      }
    }
    return ok;
  });

  fs::remove_all(work);
  if (g_failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criteria failed\n";
  return 1;
}
