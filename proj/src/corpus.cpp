#include "litsim/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "litsim/acquire.hpp"
#include "litsim/error.hpp"
#include "litsim/seeding.hpp"

namespace litsim {

using nlohmann::json;

Source Source::parse(const std::string& spec) {
  if (spec == "reference") return Source::reference();
  const std::string prefix = "generated:";
  if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size()) {
    return Source::generated(spec.substr(prefix.size()));
  }
  throw Error(ErrorCode::argument,
              "invalid source spec '" + spec +
                  "' (expected \"reference\" or \"generated:<name>\")");
}

std::string Source::spec() const {
  return kind == SourceKind::reference ? "reference" : "generated:" + name;
}

std::optional<CorpusFormat> corpus_format_from_name(const std::string& name) {
  if (name == "json-array" || name == "json") return CorpusFormat::json_array;
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "pubmed-xml") return CorpusFormat::pubmed_xml;
  return std::nullopt;
}

const char* corpus_format_name(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::json_array: return "json-array";
    case CorpusFormat::jsonl: return "jsonl";
    case CorpusFormat::pubmed_xml: return "pubmed-xml";
  }
  return "json-array";
}

CorpusFormat corpus_format_for_path(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "jsonl") return CorpusFormat::jsonl;
  if (ext == "xml") return CorpusFormat::pubmed_xml;
  return CorpusFormat::json_array;
}

bool is_valid_generated_id(const std::string& id) {
  if (id.empty() || id.size() > 5) return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 && c < 0x80;
  });
}

namespace {

std::string trimmed(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n\f\v");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::optional<std::string> validate_record(const DocumentRecord& record) {
  if (record.id.empty()) return "id is empty";
  if (trimmed(record.abstract_text).empty()) return "abstract is empty";
  if (record.source.kind == SourceKind::generated &&
      !is_valid_generated_id(record.id)) {
    return "id '" + record.id +
           "' violates the GPT-ID rule (1-5 characters, each an ASCII letter "
           "or digit)";
  }
  return std::nullopt;
}

namespace {

std::string default_label(const LoadOptions& options) {
  if (!options.label.empty()) return options.label;
  if (options.source.kind == SourceKind::generated) return options.source.name;
  return "reference";
}

// Pulls "id"/"title"/"abstract" out of one parsed object. Returns the error
// message, or nullopt and fills `record`.
std::optional<std::string> record_from_json(const json& element,
                                            const Source& source,
                                            DocumentRecord* record) {
  if (!element.is_object()) return "element is not a JSON object";
  for (const char* key : {"id", "title", "abstract"}) {
    if (!element.contains(key)) return std::string("missing key \"") + key + "\"";
    if (!element.at(key).is_string()) {
      return std::string("key \"") + key + "\" is not a string";
    }
  }
  record->id = element.at("id").get<std::string>();
  record->title = element.at("title").get<std::string>();
  record->abstract_text = element.at("abstract").get<std::string>();
  record->source = source;
  if (auto problem = validate_record(*record)) return problem;
  return std::nullopt;
}

// Accumulates validated records, tracking id uniqueness.
struct CorpusBuilder {
  explicit CorpusBuilder(std::string label) { corpus.label = std::move(label); }

  void add(DocumentRecord record, size_t index, std::vector<ValidationError>* errors) {
    if (!seen.insert(record.id).second) {
      errors->push_back({index, record.id, "duplicate id '" + record.id + "'"});
      return;
    }
    corpus.records.push_back(std::move(record));
  }

  Corpus corpus;
  std::unordered_set<std::string> seen;
};

LoadResult finish(CorpusBuilder builder, std::vector<ValidationError> errors,
                  std::vector<std::string> warnings, bool lenient) {
  LoadResult result;
  if (builder.corpus.records.empty() && errors.empty()) {
    warnings.push_back("corpus '" + builder.corpus.label + "' is empty");
  }
  result.errors = std::move(errors);
  result.warnings = std::move(warnings);
  if (result.errors.empty() || lenient) {
    result.corpus = std::move(builder.corpus);
  }
  return result;
}

LoadResult parse_json_array(const std::string& text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::parse, "expected a JSON array of records");
  }
  CorpusBuilder builder(default_label(options));
  std::vector<ValidationError> errors;
  for (size_t i = 0; i < doc.size(); ++i) {
    DocumentRecord record;
    if (auto problem = record_from_json(doc[i], options.source, &record)) {
      std::string id = doc[i].is_object() && doc[i].contains("id") &&
                               doc[i]["id"].is_string()
                           ? doc[i]["id"].get<std::string>()
                           : "";
      errors.push_back({i, id, "element " + std::to_string(i) + ": " + *problem});
    } else {
      builder.add(std::move(record), i, &errors);
    }
  }
  return finish(std::move(builder), std::move(errors), {}, options.lenient);
}

LoadResult parse_jsonl(const std::string& text, const LoadOptions& options) {
  CorpusBuilder builder(default_label(options));
  std::vector<ValidationError> errors;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json element = json::parse(line, nullptr, false);
    if (element.is_discarded()) {
      throw Error(ErrorCode::parse,
                  "malformed JSON on line " + std::to_string(line_no));
    }
    DocumentRecord record;
    if (auto problem = record_from_json(element, options.source, &record)) {
      std::string id = element.is_object() && element.contains("id") &&
                               element["id"].is_string()
                           ? element["id"].get<std::string>()
                           : "";
      errors.push_back(
          {line_no, id, "line " + std::to_string(line_no) + ": " + *problem});
    } else {
      builder.add(std::move(record), line_no, &errors);
    }
  }
  return finish(std::move(builder), std::move(errors), {}, options.lenient);
}

}  // namespace

LoadResult parse_corpus(const std::string& text, const LoadOptions& options) {
  switch (options.format) {
    case CorpusFormat::json_array:
      return parse_json_array(text, options);
    case CorpusFormat::jsonl:
      return parse_jsonl(text, options);
    case CorpusFormat::pubmed_xml:
      break;
  }
  // pubmed-xml carries reference abstracts only.
  if (options.source.kind != SourceKind::reference) {
    throw Error(ErrorCode::argument,
                "pubmed-xml input is always a reference corpus");
  }
  auto parsed = parse_efetch_xml(text);
  CorpusBuilder builder(default_label(options));
  std::vector<ValidationError> errors;
  std::vector<std::string> warnings;
  for (size_t i = 0; i < parsed.records.size(); ++i) {
    builder.add(std::move(parsed.records[i]), i, &errors);
  }
  for (const auto& pmid : parsed.skipped) {
    warnings.push_back("pmid " + pmid + " has no abstract; skipped");
  }
  return finish(std::move(builder), std::move(errors), std::move(warnings),
                options.lenient);
}

LoadResult load_corpus(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str(), options);
}

std::string corpus_to_json(const Corpus& corpus) {
  json doc = json::array();
  for (const auto& record : corpus.records) {
    doc.push_back({{"abstract", record.abstract_text},
                   {"id", record.id},
                   {"title", record.title}});
  }
  return doc.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  }
  out << corpus_to_json(corpus);
  if (!out) {
    throw Error(ErrorCode::io, "failed writing '" + path + "'");
  }
}

Corpus sample_corpus(const Corpus& corpus, size_t size, uint64_t seed) {
  auto indices = sample_indices(corpus.size(), size, seed);
  Corpus sampled;
  sampled.label = corpus.label;
  sampled.records.reserve(size);
  for (size_t index : indices) {
    sampled.records.push_back(corpus.records[index]);
  }
  return sampled;
}

}  // namespace litsim
