#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace litsim {

enum class SourceKind { reference, generated };

// Where a document came from: the reference literature corpus, or a named
// generator ("chatgpt", "bard", ...).
struct Source {
  SourceKind kind = SourceKind::reference;
  std::string name;  // generator label; empty for reference sources

  static Source reference() { return {SourceKind::reference, {}}; }
  static Source generated(std::string generator) {
    return {SourceKind::generated, std::move(generator)};
  }

  // Accepts "reference" or "generated:<name>". Throws Error on anything else.
  static Source parse(const std::string& spec);
  std::string spec() const;

  bool operator==(const Source&) const = default;
};

struct DocumentRecord {
  std::string id;
  std::string title;
  std::string abstract_text;
  Source source;

  bool operator==(const DocumentRecord&) const = default;
};

struct ValidationError {
  size_t index = 0;     // element index (json array) or line number (jsonl)
  std::string id;       // offending record id when one could be read
  std::string message;
};

// Labeled, validated, order-stable collection of records. All records share
// one source; ids are unique.
struct Corpus {
  std::string label;
  std::vector<DocumentRecord> records;

  size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { json_array, jsonl, pubmed_xml };

std::optional<CorpusFormat> corpus_format_from_name(const std::string& name);
const char* corpus_format_name(CorpusFormat format);

// Picks a format from the file extension: .jsonl -> jsonl, .xml -> pubmed-xml,
// anything else -> json-array.
CorpusFormat corpus_format_for_path(const std::string& path);

struct LoadOptions {
  CorpusFormat format = CorpusFormat::json_array;
  Source source = Source::reference();
  std::string label;     // empty: source name, or "reference"
  bool lenient = false;  // strict: any invalid record fails the whole load
};

// Total result of a load: either a corpus (strict, no errors), or a corpus
// plus the records it rejected (lenient), or no corpus at all (strict with
// errors). Nothing is ever dropped silently.
struct LoadResult {
  std::optional<Corpus> corpus;
  std::vector<ValidationError> errors;
  std::vector<std::string> warnings;
};

// 1-5 characters, each an ASCII letter or digit.
bool is_valid_generated_id(const std::string& id);

// Checks the per-record invariants for the record's source kind; returns the
// violation message, or nullopt when the record is valid. Id uniqueness is a
// corpus-level check and is not covered here.
std::optional<std::string> validate_record(const DocumentRecord& record);

LoadResult load_corpus(const std::string& path, const LoadOptions& options);
LoadResult parse_corpus(const std::string& text, const LoadOptions& options);

// Canonical interchange form: JSON array of {"abstract","id","title"} objects,
// sorted keys, two-space indent, LF line endings, trailing newline.
std::string corpus_to_json(const Corpus& corpus);
void save_corpus(const Corpus& corpus, const std::string& path);

// Seeded subset of exactly `size` records, drawn without replacement with the
// procedure documented in seeding.hpp; records keep their corpus order.
Corpus sample_corpus(const Corpus& corpus, size_t size, uint64_t seed);

}  // namespace litsim
