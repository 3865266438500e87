#include "litsim.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "litsim/acquire.hpp"
#include "litsim/corpus.hpp"
#include "litsim/error.hpp"
#include "litsim/pipeline.hpp"
#include "litsim/version.hpp"

using nlohmann::json;

struct litsim_corpus {
  litsim::Corpus corpus;
};

struct litsim_pubmed {
  std::unique_ptr<litsim::PubMedClient> client;
};

namespace {

thread_local std::string g_last_error;

int set_error(litsim_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

int status_of(const litsim::Error& e) {
  switch (e.code()) {
    case litsim::ErrorCode::argument: return LITSIM_ERR_ARGUMENT;
    case litsim::ErrorCode::io: return LITSIM_ERR_IO;
    case litsim::ErrorCode::parse: return LITSIM_ERR_PARSE;
    case litsim::ErrorCode::validation: return LITSIM_ERR_VALIDATION;
    case litsim::ErrorCode::network: return LITSIM_ERR_NETWORK;
    case litsim::ErrorCode::internal: return LITSIM_ERR_INTERNAL;
  }
  return LITSIM_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body` translating exceptions into status codes.
template <typename Fn>
int guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const litsim::Error& e) {
    return set_error(static_cast<litsim_status>(status_of(e)), e.what());
  } catch (const std::exception& e) {
    return set_error(LITSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(LITSIM_ERR_INTERNAL, "unknown error");
  }
}

json report_json(const std::vector<litsim::ValidationError>& errors,
                 const std::vector<std::string>& warnings) {
  json error_list = json::array();
  for (const auto& error : errors) {
    error_list.push_back(
        {{"id", error.id}, {"index", error.index}, {"message", error.message}});
  }
  return json{{"errors", std::move(error_list)}, {"warnings", warnings}};
}

litsim::PipelineOptions parse_options(const char* options_json) {
  if (options_json == nullptr || *options_json == '\0') return {};
  json doc = json::parse(options_json, nullptr, false);
  if (doc.is_discarded()) {
    throw litsim::Error(litsim::ErrorCode::argument, "options are not valid JSON");
  }
  return litsim::PipelineOptions::from_json(doc);
}

std::vector<const litsim::Corpus*> corpus_list(const litsim_corpus* const* generated,
                                               size_t count) {
  std::vector<const litsim::Corpus*> list;
  list.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (generated[i] == nullptr) {
      throw litsim::Error(litsim::ErrorCode::argument, "generated corpus is null");
    }
    list.push_back(&generated[i]->corpus);
  }
  return list;
}

void require(const void* pointer, const char* what) {
  if (pointer == nullptr) {
    throw litsim::Error(litsim::ErrorCode::argument,
                        std::string(what) + " must not be null");
  }
}

using Runner = json (*)(const litsim::Corpus&, const std::vector<const litsim::Corpus*>&,
                        const litsim::PipelineOptions&);

int run_family(Runner runner, const litsim_corpus* reference,
               const litsim_corpus* const* generated, size_t generated_count,
               const char* options_json, char** out_results_json) {
  return guarded([&]() -> int {
    require(reference, "reference");
    require(out_results_json, "out_results_json");
    if (generated_count > 0) require(generated, "generated");
    auto options = parse_options(options_json);
    auto list = corpus_list(generated, generated_count);
    json results = runner(reference->corpus, list, options);
    *out_results_json = dup_string(litsim::results_to_string(results));
    return LITSIM_OK;
  });
}

}  // namespace

extern "C" {

const char* litsim_version(void) { return litsim::kVersion; }

const char* litsim_last_error(void) { return g_last_error.c_str(); }

void litsim_string_free(char* s) { std::free(s); }

int litsim_corpus_load(const char* path, const char* format, const char* source,
                       const char* label, int lenient, litsim_corpus** out_corpus,
                       char** out_report_json) {
  return guarded([&]() -> int {
    require(path, "path");
    require(source, "source");
    require(out_corpus, "out_corpus");
    *out_corpus = nullptr;
    if (out_report_json != nullptr) *out_report_json = nullptr;

    litsim::LoadOptions options;
    options.source = litsim::Source::parse(source);
    options.lenient = lenient != 0;
    if (label != nullptr) options.label = label;
    if (format != nullptr && *format != '\0') {
      auto parsed = litsim::corpus_format_from_name(format);
      if (!parsed) {
        throw litsim::Error(litsim::ErrorCode::argument,
                            std::string("unknown format '") + format + "'");
      }
      options.format = *parsed;
    } else {
      options.format = litsim::corpus_format_for_path(path);
    }

    litsim::LoadResult result = litsim::load_corpus(path, options);
    if (out_report_json != nullptr) {
      *out_report_json = dup_string(report_json(result.errors, result.warnings).dump());
    }
    if (!result.corpus.has_value()) {
      return set_error(LITSIM_ERR_VALIDATION,
                       std::to_string(result.errors.size()) +
                           " record(s) failed validation in strict mode");
    }
    *out_corpus = new litsim_corpus{std::move(*result.corpus)};
    return LITSIM_OK;
  });
}

int litsim_corpus_save(const litsim_corpus* corpus, const char* path) {
  return guarded([&]() -> int {
    require(corpus, "corpus");
    require(path, "path");
    litsim::save_corpus(corpus->corpus, path);
    return LITSIM_OK;
  });
}

int litsim_corpus_sample(const litsim_corpus* corpus, uint64_t size, uint64_t seed,
                         litsim_corpus** out_corpus) {
  return guarded([&]() -> int {
    require(corpus, "corpus");
    require(out_corpus, "out_corpus");
    *out_corpus = new litsim_corpus{
        litsim::sample_corpus(corpus->corpus, static_cast<size_t>(size), seed)};
    return LITSIM_OK;
  });
}

uint64_t litsim_corpus_size(const litsim_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->corpus.size();
}

const char* litsim_corpus_label(const litsim_corpus* corpus) {
  return corpus == nullptr ? "" : corpus->corpus.label.c_str();
}

const char* litsim_corpus_record_id(const litsim_corpus* corpus, uint64_t index) {
  if (corpus == nullptr || index >= corpus->corpus.size()) return nullptr;
  return corpus->corpus.records[static_cast<size_t>(index)].id.c_str();
}

void litsim_corpus_free(litsim_corpus* corpus) { delete corpus; }

int litsim_prompt_render(uint32_t report_count, uint32_t words_per_abstract,
                         const char* topic, char** out_prompt) {
  return guarded([&]() -> int {
    require(topic, "topic");
    require(out_prompt, "out_prompt");
    litsim::PromptSpec spec{report_count, words_per_abstract, topic};
    *out_prompt = dup_string(litsim::render_prompt(spec));
    return LITSIM_OK;
  });
}

int litsim_generation_parse(const char* raw_text, const char* source_name,
                            litsim_corpus** out_corpus, char** out_report_json,
                            uint64_t* out_error_count) {
  return guarded([&]() -> int {
    require(raw_text, "raw_text");
    require(source_name, "source_name");
    if (out_corpus != nullptr) *out_corpus = nullptr;
    if (out_report_json != nullptr) *out_report_json = nullptr;

    litsim::GenerationParse parsed = litsim::parse_generation(raw_text, source_name);
    if (out_error_count != nullptr) *out_error_count = parsed.errors.size();
    if (out_report_json != nullptr) {
      *out_report_json = dup_string(report_json(parsed.errors, {}).dump());
    }
    if (out_corpus != nullptr) {
      *out_corpus = new litsim_corpus{litsim::generation_corpus(parsed, source_name)};
    }
    return LITSIM_OK;
  });
}

int litsim_pubmed_open(const char* transport, const char* contact,
                       const char* api_key, litsim_pubmed** out_client) {
  return guarded([&]() -> int {
    require(transport, "transport");
    require(out_client, "out_client");
    litsim::PubMedClientOptions options;
    if (contact != nullptr) options.contact = contact;
    if (api_key != nullptr) options.api_key = api_key;
    auto client = std::make_unique<litsim::PubMedClient>(
        litsim::make_transport(transport), std::move(options));
    *out_client = new litsim_pubmed{std::move(client)};
    return LITSIM_OK;
  });
}

int litsim_pubmed_search(litsim_pubmed* client, const char* term, uint64_t retmax,
                         const char* sort, char** out_pmids_json) {
  return guarded([&]() -> int {
    require(client, "client");
    require(term, "term");
    require(out_pmids_json, "out_pmids_json");
    litsim::PubMedQuery query;
    query.term = term;
    query.retmax = static_cast<size_t>(retmax);
    if (sort != nullptr && *sort != '\0') {
      auto parsed = litsim::pubmed_sort_from_name(sort);
      if (!parsed) {
        throw litsim::Error(litsim::ErrorCode::argument,
                            std::string("unknown sort '") + sort + "'");
      }
      query.sort = *parsed;
    }
    size_t warnings_before = client->client->warnings().size();
    auto pmids = client->client->search(query);
    json doc{{"pmids", pmids},
             {"warnings",
              std::vector<std::string>(
                  client->client->warnings().begin() + warnings_before,
                  client->client->warnings().end())}};
    *out_pmids_json = dup_string(doc.dump());
    return LITSIM_OK;
  });
}

int litsim_pubmed_fetch(litsim_pubmed* client, const char* pmids_json,
                        litsim_corpus** out_corpus, char** out_report_json) {
  return guarded([&]() -> int {
    require(client, "client");
    require(pmids_json, "pmids_json");
    require(out_corpus, "out_corpus");
    *out_corpus = nullptr;
    if (out_report_json != nullptr) *out_report_json = nullptr;

    json doc = json::parse(pmids_json, nullptr, false);
    if (doc.is_discarded()) {
      throw litsim::Error(litsim::ErrorCode::argument, "pmids_json is not valid JSON");
    }
    if (doc.is_object() && doc.contains("pmids")) doc = doc["pmids"];
    if (!doc.is_array()) {
      throw litsim::Error(litsim::ErrorCode::argument,
                          "pmids_json must be a JSON array of strings");
    }
    std::vector<std::string> pmids;
    for (const auto& id : doc) pmids.push_back(id.get<std::string>());

    auto result = client->client->fetch(pmids);
    if (out_report_json != nullptr) {
      json report{{"skipped", result.skipped}, {"warnings", result.warnings}};
      *out_report_json = dup_string(report.dump());
    }
    *out_corpus = new litsim_corpus{std::move(result.corpus)};
    return LITSIM_OK;
  });
}

void litsim_pubmed_close(litsim_pubmed* client) { delete client; }

int litsim_docsim_run(const litsim_corpus* reference,
                      const litsim_corpus* const* generated, size_t generated_count,
                      const char* options_json, char** out_results_json) {
  return run_family(&litsim::docsim_results, reference, generated, generated_count,
                    options_json, out_results_json);
}

int litsim_bigram_run(const litsim_corpus* reference,
                      const litsim_corpus* const* generated, size_t generated_count,
                      const char* options_json, char** out_results_json) {
  return run_family(&litsim::bigram_results, reference, generated, generated_count,
                    options_json, out_results_json);
}

int litsim_network_run(const litsim_corpus* reference,
                       const litsim_corpus* const* generated, size_t generated_count,
                       const char* options_json, char** out_results_json) {
  return run_family(&litsim::network_results, reference, generated, generated_count,
                    options_json, out_results_json);
}

int litsim_pipeline_run(const litsim_corpus* reference,
                        const litsim_corpus* const* generated, size_t generated_count,
                        const char* options_json, const char* out_dir,
                        char** out_results_json) {
  return guarded([&]() -> int {
    require(reference, "reference");
    if (generated_count > 0) require(generated, "generated");
    if (out_results_json != nullptr) *out_results_json = nullptr;
    auto options = parse_options(options_json);
    auto list = corpus_list(generated, generated_count);
    json results = litsim::run_pipeline(reference->corpus, list, options);
    if (out_dir != nullptr && *out_dir != '\0') {
      litsim::emit_reports(results, out_dir);
    }
    if (out_results_json != nullptr) {
      *out_results_json = dup_string(litsim::results_to_string(results));
    }
    return LITSIM_OK;
  });
}

int litsim_report_emit(const char* results_json, const char* out_dir,
                       char** out_warnings_json) {
  return guarded([&]() -> int {
    require(results_json, "results_json");
    require(out_dir, "out_dir");
    if (out_warnings_json != nullptr) *out_warnings_json = nullptr;
    json results = json::parse(results_json, nullptr, false);
    if (results.is_discarded()) {
      throw litsim::Error(litsim::ErrorCode::parse, "results document is not valid JSON");
    }
    auto warnings = litsim::emit_reports(results, out_dir);
    if (out_warnings_json != nullptr) {
      *out_warnings_json = dup_string(json(warnings).dump());
    }
    return LITSIM_OK;
  });
}

}  // extern "C"
