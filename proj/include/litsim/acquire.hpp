#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "litsim/corpus.hpp"

namespace litsim {

// ---------------------------------------------------------------------------
// Prompt harness

struct PromptSpec {
  uint32_t report_count = 1;        // documents requested per prompt
  uint32_t words_per_abstract = 1;  // target abstract length
  std::string topic;
};

// Renders the generation prompt: asks for `report_count` reports with titles
// and abstracts on `topic`, a random GPT-ID of at most five letters and
// numbers per record, abstracts capped at `words_per_abstract` words, and a
// valid JSON array as the output. Byte-stable for a given spec.
std::string render_prompt(const PromptSpec& spec);

// Result of validating raw generator output. Valid and invalid elements are
// disjoint and jointly exhaustive: |records| + |errors| equals the element
// count of the extracted array.
struct GenerationParse {
  std::vector<DocumentRecord> records;
  std::vector<ValidationError> errors;
};

// Extracts the outermost JSON array from raw generator output (surrounding
// prose and markdown fences are tolerated) and maps each element to a
// DocumentRecord with source Generated(source_name). Field names are matched
// case-insensitively; "GPT-ID"-style spellings are accepted for "id". Throws
// Error(parse) when no JSON array can be found at all.
GenerationParse parse_generation(const std::string& raw,
                                 const std::string& source_name);

// Wraps the accepted records of a parse into a labeled corpus.
Corpus generation_corpus(const GenerationParse& parse, const std::string& label);

// Transport used to obtain generator output for a prompt. The repository
// ships a file-replay implementation only; live generator calls are out of
// scope and plug in behind this interface.
class GenerationTransport {
 public:
  virtual ~GenerationTransport() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// Replays one UTF-8 text file per prompt exchange, in lexicographic filename
// order. Throws Error(io) when the exchanges are exhausted.
class FileReplayGeneration : public GenerationTransport {
 public:
  explicit FileReplayGeneration(const std::string& directory);
  std::string complete(const std::string& prompt) override;

 private:
  std::vector<std::string> files_;
  size_t next_ = 0;
};

// ---------------------------------------------------------------------------
// PubMed E-utilities client

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

// Serves canned responses from a directory, one file per exchange, consumed
// in lexicographic filename order. Requested URLs are recorded for
// inspection.
class ReplayHttpTransport : public HttpTransport {
 public:
  explicit ReplayHttpTransport(const std::string& directory);
  HttpResponse get(const std::string& url) override;
  const std::vector<std::string>& requests() const { return requests_; }

 private:
  std::vector<std::string> files_;
  std::vector<std::string> requests_;
  size_t next_ = 0;
};

// "live" -> TLS client against the real endpoints; "replay:<dir>" ->
// ReplayHttpTransport over <dir>.
std::unique_ptr<HttpTransport> make_transport(const std::string& spec);

enum class PubMedSort { most_cited, relevance, pub_date };

std::optional<PubMedSort> pubmed_sort_from_name(const std::string& name);

struct PubMedQuery {
  std::string term;
  size_t retmax = 1;
  PubMedSort sort = PubMedSort::relevance;
};

struct PubMedClientOptions {
  std::string contact;  // tool/email parameters, politeness headers
  std::string api_key;
  size_t page_size = 1000;     // esearch pagination stride
  size_t fetch_batch = 200;    // pmids per efetch request
  size_t max_retries = 3;
};

// Sequential client with rate limiting (3 req/s without an API key, 10 req/s
// with one) and exponential-backoff retries on transport and 5xx/429 failures.
class PubMedClient {
 public:
  PubMedClient(std::unique_ptr<HttpTransport> transport,
               PubMedClientOptions options = {});

  // Up to retmax PMIDs in the requested order. "most frequently cited" is not
  // an E-utilities sort key; most_cited maps to relevance sort and emits a
  // warning saying so. An empty result set is not an error.
  std::vector<std::string> search(const PubMedQuery& query);

  struct FetchResult {
    Corpus corpus;  // source Reference, label "pubmed", input pmid order
    std::vector<std::string> skipped;  // pmids without a usable abstract
    std::vector<std::string> warnings;
  };

  // Fetches abstracts in batches. Duplicate input pmids are collapsed with a
  // warning; records lacking an abstract are reported in `skipped`.
  FetchResult fetch(const std::vector<std::string>& pmids);

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  HttpResponse request(const std::string& url);

  std::unique_ptr<HttpTransport> transport_;
  PubMedClientOptions options_;
  std::vector<std::string> warnings_;
  int64_t last_request_us_ = 0;
};

// efetch XML -> reference records. Articles without an abstract land in
// `skipped` (by pmid). Exposed for fixture-based tests.
struct EfetchParse {
  std::vector<DocumentRecord> records;
  std::vector<std::string> skipped;
};

EfetchParse parse_efetch_xml(const std::string& xml);

}  // namespace litsim
