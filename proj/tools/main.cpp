// litsim command-line tool. Links the C API only; all analysis lives behind
// liblitsim.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "litsim.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // validation or runtime failure
constexpr int kExitUsage = 2;    // bad flags / subcommands

struct CorpusDeleter {
  void operator()(litsim_corpus* corpus) const { litsim_corpus_free(corpus); }
};
using CorpusPtr = std::unique_ptr<litsim_corpus, CorpusDeleter>;

struct StringDeleter {
  void operator()(char* s) const { litsim_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct GlobalOptions {
  uint64_t seed = 42;
  std::vector<uint64_t> sizes{10, 25, 50, 75, 100};
  std::string stopwords;
  bool lenient = false;
  std::string out_dir = "out";
};

struct ExperimentFlags {
  std::vector<std::string> metrics{"cosine", "jaccard"};
  std::string aggregation = "best-match";
  std::string weighting = "tf";
  std::string comparator = "cosine";
  uint64_t top_k = 50;
  std::string scope = "per-sample";
  bool dump_vocabulary = false;
};

struct CorpusArgs {
  std::string reference_path;
  std::string reference_format;  // empty: by extension
  std::string reference_label = "reference";
  std::vector<std::string> generated;  // name=path entries
};

void print_last_error() {
  std::cerr << "error: " << litsim_last_error() << "\n";
}

// Prints the errors/warnings of a load or validation report.
void print_report(const std::string& report_json) {
  json report = json::parse(report_json, nullptr, false);
  if (report.is_discarded()) return;
  if (report.contains("errors")) {
    for (const auto& error : report["errors"]) {
      std::cerr << "invalid record: " << error.value("message", "") << "\n";
    }
  }
  if (report.contains("warnings")) {
    for (const auto& warning : report["warnings"]) {
      std::cerr << "warning: " << warning.get<std::string>() << "\n";
    }
  }
}

CorpusPtr load_corpus(const std::string& path, const std::string& format,
                      const std::string& source, const std::string& label,
                      bool lenient, int* exit_code) {
  litsim_corpus* corpus = nullptr;
  char* report = nullptr;
  int rc = litsim_corpus_load(path.c_str(), format.empty() ? nullptr : format.c_str(),
                              source.c_str(), label.empty() ? nullptr : label.c_str(),
                              lenient ? 1 : 0, &corpus, &report);
  StringPtr report_guard(report);
  if (report != nullptr) print_report(report);
  if (rc != LITSIM_OK) {
    print_last_error();
    *exit_code = kExitFailure;
    return nullptr;
  }
  return CorpusPtr(corpus);
}

std::string options_json(const GlobalOptions& global, const ExperimentFlags& flags) {
  json doc{{"seed", global.seed},
           {"sizes", global.sizes},
           {"stopwords", global.stopwords},
           {"metrics", flags.metrics},
           {"aggregation", flags.aggregation},
           {"weighting", flags.weighting},
           {"comparator", flags.comparator},
           {"top_k", flags.top_k},
           {"scope", flags.scope},
           {"dump_vocabulary", flags.dump_vocabulary}};
  return doc.dump();
}

bool split_generated_arg(const std::string& arg, std::string* name, std::string* path) {
  auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size()) return false;
  *name = arg.substr(0, eq);
  *path = arg.substr(eq + 1);
  return true;
}

struct LoadedCorpora {
  CorpusPtr reference;
  std::vector<CorpusPtr> generated;
  std::vector<const litsim_corpus*> generated_raw;
};

bool load_all(const CorpusArgs& args, const GlobalOptions& global,
              LoadedCorpora* corpora, int* exit_code) {
  corpora->reference =
      load_corpus(args.reference_path, args.reference_format, "reference",
                  args.reference_label, global.lenient, exit_code);
  if (!corpora->reference) return false;
  for (const auto& entry : args.generated) {
    std::string name, path;
    if (!split_generated_arg(entry, &name, &path)) {
      std::cerr << "error: --generated expects name=path, got '" << entry << "'\n";
      *exit_code = kExitUsage;
      return false;
    }
    auto corpus = load_corpus(path, "", "generated:" + name, name, global.lenient,
                              exit_code);
    if (!corpus) return false;
    corpora->generated_raw.push_back(corpus.get());
    corpora->generated.push_back(std::move(corpus));
  }
  return true;
}

int emit_results(const char* results, const std::string& out_dir) {
  char* warnings = nullptr;
  int rc = litsim_report_emit(results, out_dir.c_str(), &warnings);
  StringPtr guard(warnings);
  if (rc != LITSIM_OK) {
    print_last_error();
    return kExitFailure;
  }
  if (warnings != nullptr) {
    json list = json::parse(warnings, nullptr, false);
    if (list.is_array()) {
      for (const auto& warning : list) {
        std::cerr << "warning: " << warning.get<std::string>() << "\n";
      }
    }
  }
  return kExitOk;
}

std::string read_text_file(const std::string& path, int* exit_code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    *exit_code = kExitFailure;
    return {};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus similarity toolkit: document, bigram and network "
               "comparisons between generated and reference abstract corpora"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", litsim_version());
  app.set_config("--config", "", "Flat key=value config file; flags override it");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Experiment seed")->capture_default_str();
  app.add_option("--sizes", global.sizes, "Sample sizes")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--stopwords", global.stopwords,
                 "Stopword list file (default: bundled list)");
  auto* strict_flag =
      app.add_flag("--strict", "Fail on any invalid record (default)");
  app.add_flag("--lenient", global.lenient,
               "Keep valid records, report invalid ones")
      ->excludes(strict_flag);
  app.add_option("--out", global.out_dir, "Output directory")->capture_default_str();

  ExperimentFlags flags;
  CorpusArgs corpus_args;

  auto add_corpus_options = [&](CLI::App* cmd) {
    cmd->add_option("--reference", corpus_args.reference_path,
                    "Reference corpus file")
        ->required();
    cmd->add_option("--reference-format", corpus_args.reference_format,
                    "json-array | jsonl | pubmed-xml (default: by extension)");
    cmd->add_option("--reference-label", corpus_args.reference_label,
                    "Label for the reference corpus")
        ->capture_default_str();
    cmd->add_option("--generated", corpus_args.generated,
                    "Generated corpus as name=path (repeatable)")
        ->required()
        ->take_all();
  };

  // --- prompt ---------------------------------------------------------
  auto* prompt_cmd = app.add_subcommand("prompt", "Render the generation prompt");
  uint32_t prompt_count = 10;
  uint32_t prompt_words = 150;
  std::string prompt_topic;
  prompt_cmd->add_option("-n,--count", prompt_count, "Reports per prompt")
      ->capture_default_str();
  prompt_cmd->add_option("-w,--words", prompt_words, "Words per abstract")
      ->capture_default_str();
  prompt_cmd->add_option("-t,--topic", prompt_topic, "Topic of the reports")
      ->required();

  // --- validate -------------------------------------------------------
  auto* validate_cmd =
      app.add_subcommand("validate", "Validate raw generator output");
  std::string validate_input;
  std::string validate_source;
  validate_cmd->add_option("--input", validate_input, "Raw generator output file")
      ->required();
  validate_cmd->add_option("--source", validate_source, "Generator name")
      ->required();

  // --- fetch ----------------------------------------------------------
  auto* fetch_cmd = app.add_subcommand("fetch", "Fetch a reference corpus from PubMed");
  std::string fetch_term;
  uint64_t fetch_retmax = 100;
  std::string fetch_sort = "most-cited";
  std::string fetch_transport = "live";
  std::string ncbi_contact;
  std::string ncbi_api_key;
  fetch_cmd->add_option("--term", fetch_term, "Search term")->required();
  fetch_cmd->add_option("--retmax", fetch_retmax, "Maximum abstracts to fetch")
      ->capture_default_str();
  fetch_cmd->add_option("--sort", fetch_sort, "most-cited | relevance | pub-date")
      ->capture_default_str();
  fetch_cmd->add_option("--transport", fetch_transport,
                        "live | replay:<dir> (canned responses)")
      ->capture_default_str();
  fetch_cmd->add_option("--ncbi-contact", ncbi_contact, "Contact e-mail")
      ->envname("NCBI_CONTACT");
  fetch_cmd->add_option("--ncbi-api-key", ncbi_api_key, "E-utilities API key")
      ->envname("NCBI_API_KEY");

  // --- experiment subcommands ------------------------------------------
  auto* docsim_cmd =
      app.add_subcommand("docsim", "Document cosine/Jaccard similarity experiment");
  add_corpus_options(docsim_cmd);
  docsim_cmd->add_option("--metric", flags.metrics, "cosine and/or jaccard")
      ->delimiter(',')
      ->capture_default_str();
  docsim_cmd->add_option("--aggregation", flags.aggregation,
                         "best-match | all-pairs")
      ->capture_default_str();
  docsim_cmd->add_option("--weighting", flags.weighting, "tf | tfidf")
      ->capture_default_str();

  auto* bigrams_cmd =
      app.add_subcommand("bigrams", "Bigram tf-idf similarity experiment");
  add_corpus_options(bigrams_cmd);
  bigrams_cmd->add_option("--comparator", flags.comparator,
                          "cosine | top-k-overlap")
      ->capture_default_str();
  bigrams_cmd->add_option("--top-k", flags.top_k, "Bigram cut-off")
      ->capture_default_str();
  bigrams_cmd->add_flag("--dump-vocabulary", flags.dump_vocabulary,
                        "Write fitted vocabularies with document frequencies");

  auto* network_cmd =
      app.add_subcommand("network", "Bigram network centrality experiment");
  add_corpus_options(network_cmd);
  network_cmd->add_option("--top-k", flags.top_k, "Bigram cut-off")
      ->capture_default_str();
  network_cmd->add_option("--scope", flags.scope, "per-sample | full-corpus")
      ->capture_default_str();

  auto* report_cmd =
      app.add_subcommand("report", "Re-emit report files from a results document");
  std::string report_results;
  report_cmd->add_option("--results", report_results, "results.json path")
      ->required();

  auto* all_cmd = app.add_subcommand("all", "Run every experiment and emit reports");
  add_corpus_options(all_cmd);
  all_cmd->add_option("--metric", flags.metrics, "cosine and/or jaccard")
      ->delimiter(',')
      ->capture_default_str();
  all_cmd->add_option("--aggregation", flags.aggregation, "best-match | all-pairs")
      ->capture_default_str();
  all_cmd->add_option("--weighting", flags.weighting, "tf | tfidf")
      ->capture_default_str();
  all_cmd->add_option("--comparator", flags.comparator, "cosine | top-k-overlap")
      ->capture_default_str();
  all_cmd->add_option("--top-k", flags.top_k, "Bigram cut-off")->capture_default_str();
  all_cmd->add_option("--scope", flags.scope, "per-sample | full-corpus")
      ->capture_default_str();
  all_cmd->add_flag("--dump-vocabulary", flags.dump_vocabulary,
                    "Write fitted vocabularies with document frequencies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  int exit_code = kExitOk;

  if (prompt_cmd->parsed()) {
    char* prompt = nullptr;
    if (litsim_prompt_render(prompt_count, prompt_words, prompt_topic.c_str(),
                             &prompt) != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    StringPtr guard(prompt);
    std::cout << prompt << "\n";
    return kExitOk;
  }

  if (validate_cmd->parsed()) {
    std::string raw = read_text_file(validate_input, &exit_code);
    if (exit_code != kExitOk) return exit_code;
    litsim_corpus* corpus = nullptr;
    char* report = nullptr;
    uint64_t error_count = 0;
    int rc = litsim_generation_parse(raw.c_str(), validate_source.c_str(), &corpus,
                                     &report, &error_count);
    CorpusPtr corpus_guard(corpus);
    StringPtr report_guard(report);
    if (rc != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    print_report(report);
    std::string base = global.out_dir + "/";
    if (litsim_corpus_save(corpus,
                           (base + "validated_" + validate_source + ".json").c_str()) !=
            LITSIM_OK ||
        !write_text_file(base + "validation_report_" + validate_source + ".json",
                         std::string(report) + "\n")) {
      print_last_error();
      return kExitFailure;
    }
    std::cerr << litsim_corpus_size(corpus) << " record(s) accepted, " << error_count
              << " rejected\n";
    return error_count == 0 ? kExitOk : kExitFailure;
  }

  if (fetch_cmd->parsed()) {
    litsim_pubmed* client = nullptr;
    if (litsim_pubmed_open(fetch_transport.c_str(),
                           ncbi_contact.empty() ? nullptr : ncbi_contact.c_str(),
                           ncbi_api_key.empty() ? nullptr : ncbi_api_key.c_str(),
                           &client) != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    auto close = [](litsim_pubmed* c) { litsim_pubmed_close(c); };
    std::unique_ptr<litsim_pubmed, decltype(close)> client_guard(client, close);

    char* pmids = nullptr;
    if (litsim_pubmed_search(client, fetch_term.c_str(), fetch_retmax,
                             fetch_sort.c_str(), &pmids) != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    StringPtr pmids_guard(pmids);
    print_report(pmids);

    litsim_corpus* corpus = nullptr;
    char* report = nullptr;
    if (litsim_pubmed_fetch(client, pmids, &corpus, &report) != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    CorpusPtr corpus_guard(corpus);
    StringPtr report_guard(report);
    print_report(report);

    std::string base = global.out_dir + "/";
    if (litsim_corpus_save(corpus, (base + "pubmed.json").c_str()) != LITSIM_OK) {
      print_last_error();
      return kExitFailure;
    }
    write_text_file(base + "fetch_report.json", std::string(report) + "\n");
    std::cerr << "fetched " << litsim_corpus_size(corpus) << " abstract(s)\n";
    return kExitOk;
  }

  if (report_cmd->parsed()) {
    std::string results = read_text_file(report_results, &exit_code);
    if (exit_code != kExitOk) return exit_code;
    return emit_results(results.c_str(), global.out_dir);
  }

  // Experiment subcommands share the corpus-loading path.
  LoadedCorpora corpora;
  if (!load_all(corpus_args, global, &corpora, &exit_code)) return exit_code;
  std::string options = options_json(global, flags);

  char* results = nullptr;
  int rc = LITSIM_OK;
  if (docsim_cmd->parsed()) {
    rc = litsim_docsim_run(corpora.reference.get(), corpora.generated_raw.data(),
                           corpora.generated_raw.size(), options.c_str(), &results);
  } else if (bigrams_cmd->parsed()) {
    rc = litsim_bigram_run(corpora.reference.get(), corpora.generated_raw.data(),
                           corpora.generated_raw.size(), options.c_str(), &results);
  } else if (network_cmd->parsed()) {
    rc = litsim_network_run(corpora.reference.get(), corpora.generated_raw.data(),
                            corpora.generated_raw.size(), options.c_str(), &results);
  } else if (all_cmd->parsed()) {
    rc = litsim_pipeline_run(corpora.reference.get(), corpora.generated_raw.data(),
                             corpora.generated_raw.size(), options.c_str(),
                             global.out_dir.c_str(), &results);
  }
  StringPtr results_guard(results);
  if (rc != LITSIM_OK) {
    print_last_error();
    return kExitFailure;
  }
  if (results == nullptr) return kExitOk;
  if (all_cmd->parsed()) return kExitOk;  // pipeline_run already emitted
  return emit_results(results, global.out_dir);
}
