#include "litsim/docsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "litsim/error.hpp"
#include "litsim/seeding.hpp"
#include "litsim/tfidf.hpp"

namespace litsim {

TermVector tf_vector(const TokenizedDoc& doc) {
  TermVector weights;
  for (const auto& token : doc.tokens) {
    weights[token] += 1.0;
  }
  return weights;
}

namespace {

double l2_norm(const TermVector& v) {
  double sum = 0.0;
  for (const auto& [term, weight] : v) sum += weight * weight;
  return std::sqrt(sum);
}

double dot(const TermVector& u, const TermVector& v) {
  double sum = 0.0;
  for (const auto& [term, weight] : u) {
    auto it = v.find(term);
    if (it != v.end()) sum += weight * it->second;
  }
  return sum;
}

std::vector<std::string> token_set(const TokenizedDoc& doc) {
  std::vector<std::string> set(doc.tokens);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

size_t intersection_size(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
  size_t count = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

}  // namespace

double cosine_similarity(const TermVector& u, const TermVector& v) {
  if (u.empty() || v.empty()) return 0.0;
  double nu = l2_norm(u);
  double nv = l2_norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot(u, v) / (nu * nv);
}

double jaccard_similarity(const TokenizedDoc& a, const TokenizedDoc& b) {
  auto sa = token_set(a);
  auto sb = token_set(b);
  if (sa.empty() && sb.empty()) return 1.0;
  size_t inter = intersection_size(sa, sb);
  size_t uni = sa.size() + sb.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

const char* similarity_metric_name(SimilarityMetric metric) {
  switch (metric) {
    case SimilarityMetric::cosine: return "cosine";
    case SimilarityMetric::jaccard: return "jaccard";
    case SimilarityMetric::tfidf_bigram: return "tfidf_bigram";
  }
  return "cosine";
}

namespace {

struct ScoredDoc {
  const TokenizedDoc* doc = nullptr;
  TermVector vector;
  double norm = 0.0;
  std::vector<std::string> tokens;  // sorted unique
};

ScoredDoc score_doc(const TokenizedDoc& doc, const TermVector& vector) {
  ScoredDoc scored;
  scored.doc = &doc;
  scored.vector = vector;
  scored.norm = l2_norm(scored.vector);
  scored.tokens = token_set(doc);
  return scored;
}

double pair_score(SimilarityMetric metric, const ScoredDoc& g, const ScoredDoc& r) {
  if (metric == SimilarityMetric::jaccard) {
    if (g.tokens.empty() && r.tokens.empty()) return 1.0;
    size_t inter = intersection_size(g.tokens, r.tokens);
    size_t uni = g.tokens.size() + r.tokens.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  if (g.vector.empty() || r.vector.empty() || g.norm == 0.0 || r.norm == 0.0) {
    return 0.0;
  }
  return dot(g.vector, r.vector) / (g.norm * r.norm);
}

}  // namespace

std::vector<SimilaritySample> best_match_experiment(const Corpus& generated,
                                                    const Corpus& reference,
                                                    const DocsimOptions& options,
                                                    const StopwordList& stopwords) {
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

  // Reference docs visited in ascending id order; ties in the best-match
  // search resolve to the lowest reference id.
  std::vector<size_t> reference_order(reference_docs.size());
  std::iota(reference_order.begin(), reference_order.end(), size_t{0});
  std::sort(reference_order.begin(), reference_order.end(),
            [&](size_t a, size_t b) {
              return reference_docs[a].doc_id < reference_docs[b].doc_id;
            });

  // Plain TF scoring is size-independent; hoist it out of the size loop.
  std::vector<ScoredDoc> reference_tf;
  std::vector<ScoredDoc> generated_tf;
  if (options.weighting == CosineWeighting::term_frequency) {
    reference_tf.reserve(reference_docs.size());
    for (const auto& doc : reference_docs) reference_tf.push_back(score_doc(doc, tf_vector(doc)));
    generated_tf.reserve(generated_docs.size());
    for (const auto& doc : generated_docs) generated_tf.push_back(score_doc(doc, tf_vector(doc)));
  }

  std::vector<SimilaritySample> samples;
  for (size_t size : options.sizes) {
    uint64_t sample_seed =
        derive_seed(options.seed, size, SeedRole::generated_sample);
    auto indices = sample_indices(generated.size(), size, sample_seed);

    const std::vector<ScoredDoc>* reference_scored = &reference_tf;
    const std::vector<ScoredDoc>* generated_scored = &generated_tf;
    std::vector<ScoredDoc> reference_weighted;
    std::vector<ScoredDoc> generated_weighted;
    if (options.weighting == CosineWeighting::tfidf) {
      // One unigram model per size, fitted jointly on the reference corpus
      // and the drawn sample so both sides share one weighting space.
      std::vector<TokenizedDoc> fit_docs(reference_docs);
      for (size_t index : indices) fit_docs.push_back(generated_docs[index]);
      TfidfModel model = fit_tfidf_unigram(fit_docs);
      reference_weighted.reserve(reference_docs.size());
      for (const auto& doc : reference_docs) {
        reference_weighted.push_back(score_doc(doc, tfidf_vector_unigram(model, doc)));
      }
      generated_weighted.resize(generated_docs.size());
      for (size_t index : indices) {
        generated_weighted[index] =
            score_doc(generated_docs[index], tfidf_vector_unigram(model, generated_docs[index]));
      }
      reference_scored = &reference_weighted;
      generated_scored = &generated_weighted;
    }

    for (SimilarityMetric metric : options.metrics) {
      SimilaritySample sample;
      sample.metric = metric;
      sample.sample_size = size;
      sample.seed = options.seed;
      sample.source = generated.label;

      double total = 0.0;
      for (size_t index : indices) {
        const ScoredDoc& doc = (*generated_scored)[index];
        DocumentMatch match;
        match.generated_id = generated.records[index].id;
        double best = -1.0;
        double sum = 0.0;
        for (size_t ref_index : reference_order) {
          double score = pair_score(metric, doc, (*reference_scored)[ref_index]);
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
  }
  return samples;
}

}  // namespace litsim
