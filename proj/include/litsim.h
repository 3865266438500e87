/*
 * litsim C API.
 *
 * Conventions:
 *   - Every function returning int yields LITSIM_OK (0) on success or a
 *     litsim_status error code; litsim_last_error() then describes the
 *     failure (thread-local).
 *   - Strings returned through char** are heap-allocated; release them with
 *     litsim_string_free(). Strings returned as const char* stay owned by
 *     the handle they came from.
 *   - Handles are opaque; free them with their matching *_free/_close call.
 *   - Structured payloads (options, results, reports) cross the boundary as
 *     UTF-8 JSON documents. See README for the schemas.
 */

#ifndef LITSIM_H
#define LITSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum litsim_status {
  LITSIM_OK = 0,
  LITSIM_ERR_ARGUMENT = 1,
  LITSIM_ERR_IO = 2,
  LITSIM_ERR_PARSE = 3,
  LITSIM_ERR_VALIDATION = 4,
  LITSIM_ERR_NETWORK = 5,
  LITSIM_ERR_INTERNAL = 6
} litsim_status;

const char* litsim_version(void);

/* Message for the most recent failure on this thread; empty if none. */
const char* litsim_last_error(void);

void litsim_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Corpus                                                              */

typedef struct litsim_corpus litsim_corpus;

/*
 * Loads and validates a corpus file.
 *   format: "json-array", "jsonl", "pubmed-xml", or NULL to pick by file
 *           extension.
 *   source: "reference" or "generated:<name>".
 *   label:  corpus label; NULL uses the generator name or "reference".
 *   lenient: 0 = strict (any invalid record fails the load with
 *           LITSIM_ERR_VALIDATION), 1 = invalid records are only reported.
 *   out_report_json (optional): {"errors":[{"index","id","message"}...],
 *           "warnings":[...]} in every outcome.
 */
int litsim_corpus_load(const char* path, const char* format, const char* source,
                       const char* label, int lenient, litsim_corpus** out_corpus,
                       char** out_report_json);

/* Canonical JSON array form (sorted keys, LF endings). */
int litsim_corpus_save(const litsim_corpus* corpus, const char* path);

/* Seeded subset of exactly `size` records; see README for the procedure. */
int litsim_corpus_sample(const litsim_corpus* corpus, uint64_t size,
                         uint64_t seed, litsim_corpus** out_corpus);

uint64_t litsim_corpus_size(const litsim_corpus* corpus);
const char* litsim_corpus_label(const litsim_corpus* corpus);
/* NULL when index is out of range. */
const char* litsim_corpus_record_id(const litsim_corpus* corpus, uint64_t index);

void litsim_corpus_free(litsim_corpus* corpus);

/* ------------------------------------------------------------------ */
/* Generation harness                                                  */

/*
 * Renders the generation prompt for `report_count` documents of about
 * `words_per_abstract` words on `topic`. Byte-stable for fixed inputs.
 */
int litsim_prompt_render(uint32_t report_count, uint32_t words_per_abstract,
                         const char* topic, char** out_prompt);

/*
 * Validates raw generator output: extracts the JSON array (markdown fences
 * and surrounding prose are tolerated) and screens every element. Valid
 * records become a corpus labeled `source_name`; invalid elements are listed
 * in the report. Fails with LITSIM_ERR_PARSE when no array exists at all.
 */
int litsim_generation_parse(const char* raw_text, const char* source_name,
                            litsim_corpus** out_corpus, char** out_report_json,
                            uint64_t* out_error_count);

/* ------------------------------------------------------------------ */
/* PubMed E-utilities                                                  */

typedef struct litsim_pubmed litsim_pubmed;

/*
 * transport: "live" or "replay:<dir>" (canned responses, one file per
 * exchange in filename order). contact/api_key may be NULL.
 */
int litsim_pubmed_open(const char* transport, const char* contact,
                       const char* api_key, litsim_pubmed** out_client);

/*
 * sort: "most-cited", "relevance" or "pub-date". Returns a JSON document
 * {"pmids":[...],"warnings":[...]}.
 */
int litsim_pubmed_search(litsim_pubmed* client, const char* term, uint64_t retmax,
                         const char* sort, char** out_pmids_json);

/*
 * pmids_json: JSON array of pmid strings. Produces a reference corpus plus a
 * report {"skipped":[...],"warnings":[...]}.
 */
int litsim_pubmed_fetch(litsim_pubmed* client, const char* pmids_json,
                        litsim_corpus** out_corpus, char** out_report_json);

void litsim_pubmed_close(litsim_pubmed* client);

/* ------------------------------------------------------------------ */
/* Experiments                                                         */
/*
 * options_json keys (all optional): "seed" (u64), "sizes" ([int]),
 * "stopwords" (path; "" = bundled list), "metrics" (["cosine","jaccard"]),
 * "aggregation" ("best-match"|"all-pairs"), "weighting" ("tf"|"tfidf"),
 * "comparator" ("cosine"|"top-k-overlap"), "top_k" (int), "scope"
 * ("per-sample"|"full-corpus"), "dump_vocabulary" (bool). NULL means all
 * defaults. Each run returns a results document; documents merge key-wise.
 */

int litsim_docsim_run(const litsim_corpus* reference,
                      const litsim_corpus* const* generated, size_t generated_count,
                      const char* options_json, char** out_results_json);

int litsim_bigram_run(const litsim_corpus* reference,
                      const litsim_corpus* const* generated, size_t generated_count,
                      const char* options_json, char** out_results_json);

int litsim_network_run(const litsim_corpus* reference,
                       const litsim_corpus* const* generated, size_t generated_count,
                       const char* options_json, char** out_results_json);

/* Runs all three experiment families, writes every report file into out_dir,
 * and optionally returns the merged results document. */
int litsim_pipeline_run(const litsim_corpus* reference,
                        const litsim_corpus* const* generated, size_t generated_count,
                        const char* options_json, const char* out_dir,
                        char** out_results_json);

/* ------------------------------------------------------------------ */
/* Reports                                                             */

/*
 * Writes every report file derivable from a results document into out_dir
 * (results.json, similarity/centrality/rank tables, word-cloud JSON, plot
 * series, network exports). out_warnings_json (optional) is a JSON array of
 * warning strings. Byte-deterministic for identical documents.
 */
int litsim_report_emit(const char* results_json, const char* out_dir,
                       char** out_warnings_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LITSIM_H */
