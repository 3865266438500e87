#include <doctest.h>

#include <cmath>

#include "litsim/error.hpp"
#include "litsim/tfidf.hpp"
#include "support/oracles.hpp"

using namespace litsim;

namespace {

TokenizedDoc doc_of(std::vector<std::string> tokens, std::string id = {}) {
  TokenizedDoc doc;
  doc.doc_id = std::move(id);
  doc.tokens = std::move(tokens);
  return doc;
}

Corpus corpus_of(const std::vector<std::pair<std::string, std::string>>& docs,
                 const std::string& label, bool generated) {
  Corpus corpus;
  corpus.label = label;
  for (const auto& [id, text] : docs) {
    corpus.records.push_back({id, "title", text,
                              generated ? Source::generated(label)
                                        : Source::reference()});
  }
  return corpus;
}

// Four fixed documents exercising shared, partial and unique bigrams.
std::vector<TokenizedDoc> four_docs() {
  return {doc_of({"prostate", "cancer", "treatment"}, "d1"),
          doc_of({"prostate", "cancer", "cells"}, "d2"),
          doc_of({"prostate", "cancer", "treatment", "options"}, "d3"),
          doc_of({"radiation", "therapy"}, "d4")};
}

}  // namespace

TEST_CASE("document frequencies count documents, not occurrences") {
  auto model = fit_tfidf({doc_of({"a", "b", "a", "b"}), doc_of({"a", "b"})});
  CHECK(model.n_docs == 2);
  CHECK(model.doc_freq.at("a b") == 2);
  // "a b" occurs twice in the first doc but counts once.
  auto single = fit_tfidf({doc_of({"a", "b", "c"})});
  CHECK(single.doc_freq.at("a b") == 1);
  CHECK(single.doc_freq.at("b c") == 1);
}

TEST_CASE("fitted vocabulary matches hand enumeration") {
  auto model = fit_tfidf(four_docs());
  CHECK(model.n_docs == 4);
  CHECK(model.vocabulary ==
        std::vector<std::string>{"cancer cells", "cancer treatment",
                                 "prostate cancer", "radiation therapy",
                                 "treatment options"});
  CHECK(model.doc_freq.at("prostate cancer") == 3);
  CHECK(model.doc_freq.at("cancer treatment") == 2);
  CHECK(model.doc_freq.at("cancer cells") == 1);
  CHECK(model.doc_freq.at("treatment options") == 1);
  CHECK(model.doc_freq.at("radiation therapy") == 1);
}

TEST_CASE("idf follows the declared smoothed formula") {
  auto model = fit_tfidf(four_docs());
  CHECK(model.idf("prostate cancer") ==
        doctest::Approx(std::log(5.0 / 4.0) + 1.0).epsilon(1e-12));
  CHECK(model.idf("cancer cells") ==
        doctest::Approx(std::log(5.0 / 2.0) + 1.0).epsilon(1e-12));
  // Rarer bigrams weigh strictly more.
  CHECK(model.idf("cancer cells") > model.idf("prostate cancer"));
  CHECK(model.idf("unseen bigram") == 0.0);
}

TEST_CASE("a rarer bigram outweighs one present everywhere") {
  // Four docs, one bigram in all of them, another in just one.
  auto model = fit_tfidf({doc_of({"a", "b"}), doc_of({"a", "b"}),
                          doc_of({"a", "b"}), doc_of({"a", "b", "x", "y"})});
  CHECK(model.idf("a b") == doctest::Approx(std::log(5.0 / 5.0) + 1.0));
  CHECK(model.idf("x y") == doctest::Approx(std::log(5.0 / 2.0) + 1.0));
  CHECK(model.idf("x y") > model.idf("a b"));
}

TEST_CASE("idf is monotone non-increasing in document frequency") {
  for (size_t n = 1; n <= 20; ++n) {
    double previous = std::numeric_limits<double>::max();
    for (size_t df = 1; df <= n; ++df) {
      double idf = std::log((1.0 + n) / (1.0 + df)) + 1.0;
      CHECK(idf <= previous);
      previous = idf;
    }
  }
}

TEST_CASE("tfidf vectors are unit norm and match the closed form") {
  auto docs = four_docs();
  auto model = fit_tfidf(docs);
  for (const auto& doc : docs) {
    auto vector = tfidf_vector(model, doc);
    REQUIRE_FALSE(vector.empty());

    double norm_sq = 0.0;
    for (const auto& [term, weight] : vector) norm_sq += weight * weight;
    CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));

    // Recompute every weight from raw counts and the declared formula.
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
      double expected = oracle::tfidf_weight(tf, model.doc_freq.at(term), model.n_docs) /
                        std::sqrt(expected_norm_sq);
      CHECK(vector.at(term) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("single-doc model reproduces a unit vector for its own doc") {
  auto doc = doc_of({"prostate", "cancer", "treatment"});
  auto model = fit_tfidf({doc});
  auto vector = tfidf_vector(model, doc);
  double norm_sq = 0.0;
  for (const auto& [term, weight] : vector) norm_sq += weight * weight;
  CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("out-of-vocabulary documents vectorize to zero") {
  auto model = fit_tfidf({doc_of({"prostate", "cancer"})});
  CHECK(tfidf_vector(model, doc_of({"glacier", "basalt"})).empty());
  CHECK(tfidf_vector(model, doc_of({})).empty());
}

TEST_CASE("documents without new bigrams never grow the vocabulary") {
  std::vector<TokenizedDoc> docs{doc_of({"a", "b", "c"})};
  auto before = fit_tfidf(docs);
  docs.push_back(doc_of({"a", "b"}));  // subset of existing bigrams
  auto after = fit_tfidf(docs);
  CHECK(after.vocabulary == before.vocabulary);
}

TEST_CASE("fitting zero documents is an error") {
  CHECK_THROWS_AS(fit_tfidf({}), Error);
}

TEST_CASE("all-empty documents fit an empty vocabulary") {
  auto model = fit_tfidf({doc_of({}), doc_of({"single"})});
  CHECK(model.vocabulary.empty());
  CHECK(model.n_docs == 2);
}

TEST_CASE("bigram experiment scores an identical document at 1.0") {
  Corpus reference = corpus_of({{"r1", "prostate cancer treatment outcomes"},
                                {"r2", "radiation therapy dose toxicity"}},
                               "ref", false);
  Corpus generated = corpus_of({{"g1", "prostate cancer treatment outcomes"}},
                               "gen", true);
  BigramSimilarityOptions options;
  options.sizes = {1};
  auto samples = bigram_similarity_experiment(generated, reference, options,
                                              StopwordList::bundled());
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].metric == SimilarityMetric::tfidf_bigram);
  CHECK(samples[0].mean_score == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(samples[0].per_doc_best[0].reference_id == "r1");
}

TEST_CASE("bigram experiment equals a brute-force recomputation") {
  Corpus reference = corpus_of({{"r1", "prostate cancer screening trial"},
                                {"r2", "radiation therapy for cancer treatment"}},
                               "ref", false);
  Corpus generated = corpus_of({{"g1", "prostate cancer treatment outcomes"},
                                {"g2", "radiation therapy dose"},
                                {"g3", "glacier basalt sediment flow"}},
                               "gen", true);
  BigramSimilarityOptions options;
  options.sizes = {3};
  options.seed = 4;
  const auto& stopwords = StopwordList::bundled();
  auto samples = bigram_similarity_experiment(generated, reference, options, stopwords);
  REQUIRE(samples.size() == 1);

  // Oracle: rebuild the joint model and every vector from raw counts.
  auto gen_docs = tokenize_corpus(generated, stopwords);
  auto ref_docs = tokenize_corpus(reference, stopwords);
  auto bigrams_of = [](const TokenizedDoc& doc) {
    std::map<std::string, double> counts;
    for (const auto& bigram : extract_bigrams(doc)) counts[bigram.text()] += 1.0;
    return counts;
  };

  std::map<std::string, size_t> df;
  size_t n_docs = ref_docs.size() + gen_docs.size();
  for (const auto& doc : ref_docs)
    for (const auto& [term, tf] : bigrams_of(doc)) df[term] += 1;
  for (const auto& doc : gen_docs)
    for (const auto& [term, tf] : bigrams_of(doc)) df[term] += 1;

  auto vector_of = [&](const TokenizedDoc& doc) {
    std::map<std::string, double> weights;
    double norm_sq = 0.0;
    for (const auto& [term, tf] : bigrams_of(doc)) {
      double w = oracle::tfidf_weight(tf, df.at(term), n_docs);
      weights[term] = w;
      norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
      for (auto& [term, w] : weights) w /= std::sqrt(norm_sq);
    }
    return weights;
  };

  double total = 0.0;
  for (size_t g = 0; g < gen_docs.size(); ++g) {
    double best = -1.0;
    for (size_t r = 0; r < ref_docs.size(); ++r) {
      best = std::max(best, oracle::cosine(vector_of(gen_docs[g]), vector_of(ref_docs[r])));
    }
    total += best;
  }
  CHECK(samples[0].mean_score == doctest::Approx(total / 3.0).epsilon(1e-9));
}

TEST_CASE("vocabulary dumps record the per-size fitted model") {
  Corpus reference = corpus_of({{"r1", "prostate cancer treatment"}}, "ref", false);
  Corpus generated = corpus_of({{"g1", "prostate cancer research"}}, "gen", true);
  BigramSimilarityOptions options;
  options.sizes = {1};
  std::vector<VocabularyDump> dumps;
  bigram_similarity_experiment(generated, reference, options,
                               StopwordList::bundled(), &dumps);
  REQUIRE(dumps.size() == 1);
  CHECK(dumps[0].source == "gen");
  CHECK(dumps[0].sample_size == 1);
  REQUIRE(dumps[0].entries.size() == 3);
  CHECK(dumps[0].entries[0].first == "cancer research");
  CHECK(dumps[0].entries[2] == std::pair<std::string, size_t>{"prostate cancer", 2});
}

TEST_CASE("top-k-overlap comparator stays within [0,1] and is deterministic") {
  Corpus reference = corpus_of({{"r1", "prostate cancer treatment outcomes"},
                                {"r2", "radiation therapy dose"}},
                               "ref", false);
  Corpus generated = corpus_of({{"g1", "prostate cancer treatment trial"},
                                {"g2", "basalt glacier"}},
                               "gen", true);
  BigramSimilarityOptions options;
  options.sizes = {2};
  options.comparator = BigramComparator::top_k_overlap;
  options.overlap_k = 3;
  auto first = bigram_similarity_experiment(generated, reference, options,
                                            StopwordList::bundled());
  auto second = bigram_similarity_experiment(generated, reference, options,
                                             StopwordList::bundled());
  REQUIRE(first.size() == 1);
  CHECK(first[0].mean_score >= 0.0);
  CHECK(first[0].mean_score <= 1.0);
  CHECK(first[0].mean_score == second[0].mean_score);
}
