#include "litsim/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "litsim/error.hpp"
#include "litsim/seeding.hpp"

namespace litsim {

double TfidfModel::idf(const std::string& term) const {
  auto it = doc_freq.find(term);
  if (it == doc_freq.end()) return 0.0;
  return std::log((1.0 + static_cast<double>(n_docs)) /
                  (1.0 + static_cast<double>(it->second))) +
         1.0;
}

namespace {

std::vector<std::string> bigram_terms(const TokenizedDoc& doc) {
  std::vector<std::string> terms;
  auto bigrams = extract_bigrams(doc);
  terms.reserve(bigrams.size());
  for (const auto& bigram : bigrams) terms.push_back(bigram.text());
  return terms;
}

TfidfModel fit_terms(const std::vector<TokenizedDoc>& docs,
                     std::vector<std::string> (*terms_of)(const TokenizedDoc&)) {
  if (docs.empty()) {
    throw Error(ErrorCode::argument, "cannot fit a model on zero documents");
  }
  TfidfModel model;
  model.n_docs = docs.size();
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (auto& term : terms_of(doc)) seen.insert(std::move(term));
    for (const auto& term : seen) model.doc_freq[term] += 1;
  }
  model.vocabulary.reserve(model.doc_freq.size());
  for (const auto& [term, df] : model.doc_freq) model.vocabulary.push_back(term);
  return model;
}

std::vector<std::string> unigram_terms(const TokenizedDoc& doc) {
  return doc.tokens;
}

TermVector vectorize(const TfidfModel& model, const TokenizedDoc& doc,
                     std::vector<std::string> (*terms_of)(const TokenizedDoc&)) {
  TermVector counts;
  for (const auto& term : terms_of(doc)) {
    if (model.contains(term)) counts[term] += 1.0;
  }
  TermVector weights;
  double norm_sq = 0.0;
  for (const auto& [term, tf] : counts) {
    double weight = tf * model.idf(term);
    norm_sq += weight * weight;
    weights[term] = weight;
  }
  if (norm_sq == 0.0) return {};
  double norm = std::sqrt(norm_sq);
  for (auto& [term, weight] : weights) weight /= norm;
  return weights;
}

}  // namespace

TfidfModel fit_tfidf(const std::vector<TokenizedDoc>& docs) {
  return fit_terms(docs, &bigram_terms);
}

TfidfModel fit_tfidf_unigram(const std::vector<TokenizedDoc>& docs) {
  return fit_terms(docs, &unigram_terms);
}

TermVector tfidf_vector(const TfidfModel& model, const TokenizedDoc& doc) {
  return vectorize(model, doc, &bigram_terms);
}

TermVector tfidf_vector_unigram(const TfidfModel& model, const TokenizedDoc& doc) {
  return vectorize(model, doc, &unigram_terms);
}

namespace {

// Top-k terms of a vector by weight, heaviest first, lexicographic tie-break.
std::vector<std::string> top_k_terms(const TermVector& vector, size_t k) {
  std::vector<std::pair<std::string, double>> entries(vector.begin(), vector.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (entries.size() > k) entries.resize(k);
  std::vector<std::string> terms;
  terms.reserve(entries.size());
  for (auto& [term, weight] : entries) terms.push_back(std::move(term));
  std::sort(terms.begin(), terms.end());
  return terms;
}

double overlap_score(const std::vector<std::string>& a,
                     const std::vector<std::string>& b) {
  // A document with no weighted bigrams scores 0, matching the zero-vector
  // behaviour of the cosine comparator.
  if (a.empty() || b.empty()) return 0.0;
  size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

std::vector<SimilaritySample> bigram_similarity_experiment(
    const Corpus& generated, const Corpus& reference,
    const BigramSimilarityOptions& options, const StopwordList& stopwords,
    std::vector<VocabularyDump>* vocabulary_dumps) {
  if (reference.empty()) {
    throw Error(ErrorCode::argument, "reference corpus is empty");
  }
  for (size_t size : options.sizes) {
    if (size > generated.size()) {
      throw Error(ErrorCode::argument,
                  "sample size " + std::to_string(size) +
                      " exceeds generated corpus size " +
                      std::to_string(generated.size()));
    }
  }

  const auto generated_docs = tokenize_corpus(generated, stopwords);
  const auto reference_docs = tokenize_corpus(reference, stopwords);

  std::vector<size_t> reference_order(reference_docs.size());
  std::iota(reference_order.begin(), reference_order.end(), size_t{0});
  std::sort(reference_order.begin(), reference_order.end(),
            [&](size_t a, size_t b) {
              return reference_docs[a].doc_id < reference_docs[b].doc_id;
            });

  std::vector<SimilaritySample> samples;
  for (size_t size : options.sizes) {
    uint64_t sample_seed =
        derive_seed(options.seed, size, SeedRole::generated_sample);
    auto indices = sample_indices(generated.size(), size, sample_seed);

    // One joint model per size: reference documents plus the drawn sample.
    std::vector<TokenizedDoc> fit_docs(reference_docs);
    for (size_t index : indices) fit_docs.push_back(generated_docs[index]);
    TfidfModel model = fit_tfidf(fit_docs);
    if (vocabulary_dumps) {
      VocabularyDump dump;
      dump.source = generated.label;
      dump.sample_size = size;
      dump.entries.assign(model.doc_freq.begin(), model.doc_freq.end());
      vocabulary_dumps->push_back(std::move(dump));
    }

    struct Scored {
      TermVector vector;
      std::vector<std::string> top_terms;
    };
    std::vector<Scored> reference_scored(reference_docs.size());
    for (size_t i = 0; i < reference_docs.size(); ++i) {
      reference_scored[i].vector = tfidf_vector(model, reference_docs[i]);
      if (options.comparator == BigramComparator::top_k_overlap) {
        reference_scored[i].top_terms =
            top_k_terms(reference_scored[i].vector, options.overlap_k);
      }
    }

    SimilaritySample sample;
    sample.metric = SimilarityMetric::tfidf_bigram;
    sample.sample_size = size;
    sample.seed = options.seed;
    sample.source = generated.label;

    double total = 0.0;
    for (size_t index : indices) {
      TermVector vector = tfidf_vector(model, generated_docs[index]);
      std::vector<std::string> top;
      if (options.comparator == BigramComparator::top_k_overlap) {
        top = top_k_terms(vector, options.overlap_k);
      }

      DocumentMatch match;
      match.generated_id = generated.records[index].id;
      double best = -1.0;
      double sum = 0.0;
      for (size_t ref_index : reference_order) {
        const Scored& ref = reference_scored[ref_index];
        double score = options.comparator == BigramComparator::cosine
                           ? cosine_similarity(vector, ref.vector)
                           : overlap_score(top, ref.top_terms);
        sum += score;
        if (score > best) {
          best = score;
          match.reference_id = reference.records[ref_index].id;
        }
      }
      match.score = options.aggregation == Aggregation::best_match
                        ? best
                        : sum / static_cast<double>(reference_docs.size());
      total += match.score;
      sample.per_doc_best.push_back(std::move(match));
    }
    sample.mean_score = total / static_cast<double>(size);
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace litsim
