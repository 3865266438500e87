#include "litsim/acquire.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#ifdef LITSIM_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include "litsim/error.hpp"

namespace litsim {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Prompt harness

std::string render_prompt(const PromptSpec& spec) {
  if (spec.report_count < 1 || spec.words_per_abstract < 1) {
    throw Error(ErrorCode::argument, "report count and word target must be >= 1");
  }
  if (spec.topic.empty()) {
    throw Error(ErrorCode::argument, "topic must not be empty");
  }
  const std::string noun = spec.report_count == 1 ? "report" : "reports";
  std::string prompt;
  prompt += "Can you generate " + std::to_string(spec.report_count) + " " + noun +
            " with titles and abstracts related to \"" + spec.topic +
            "\" in a JSON formatted output?";
  prompt += " Each record must contain three fields: GPT-ID, Title, and Abstract.";
  prompt += " Make each GPT-ID random, containing at most five letters and numbers.";
  prompt += " Limit each abstract to " + std::to_string(spec.words_per_abstract) +
            " words.";
  prompt += " Return a valid JSON format as an array of valid JSON records, with"
            " no text outside the array.";
  return prompt;
}

namespace {

// Scans for a bracket-balanced slice starting at raw[start] == '['. Returns
// the index one past the closing bracket, or npos.
size_t match_array(const std::string& raw, size_t start) {
  int depth = 0;
  bool in_string = false;
  for (size_t i = start; i < raw.size(); ++i) {
    char c = raw[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '[': case '{': ++depth; break;
      case ']': case '}':
        --depth;
        if (depth < 0) return std::string::npos;
        if (depth == 0) {
          return c == ']' ? i + 1 : std::string::npos;
        }
        break;
      default: break;
    }
  }
  return std::string::npos;
}

// Finds the record array inside arbitrary generator output: the first
// parseable JSON array holding at least one object, falling back to the first
// parseable array of any shape.
std::optional<json> extract_array(const std::string& raw) {
  std::optional<json> fallback;
  for (size_t pos = raw.find('['); pos != std::string::npos;
       pos = raw.find('[', pos + 1)) {
    size_t end = match_array(raw, pos);
    if (end == std::string::npos) continue;
    json parsed = json::parse(raw.substr(pos, end - pos), nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) continue;
    bool has_object = std::any_of(parsed.begin(), parsed.end(),
                                  [](const json& e) { return e.is_object(); });
    if (has_object) return parsed;
    if (!fallback) fallback = std::move(parsed);
  }
  return fallback;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Case-insensitive field lookup; "GPT-ID", "gpt_id" and "gptid" all mean "id".
const json* find_field(const json& element, const char* canonical) {
  static const std::unordered_map<std::string, std::string> aliases = {
      {"gpt-id", "id"}, {"gpt_id", "id"}, {"gptid", "id"}};
  for (auto it = element.begin(); it != element.end(); ++it) {
    std::string key = lowercase(it.key());
    auto alias = aliases.find(key);
    if (alias != aliases.end()) key = alias->second;
    if (key == canonical) return &it.value();
  }
  return nullptr;
}

}  // namespace

GenerationParse parse_generation(const std::string& raw,
                                 const std::string& source_name) {
  auto array = extract_array(raw);
  if (!array) {
    throw Error(ErrorCode::parse, "no JSON array found in generator output");
  }

  GenerationParse result;
  std::unordered_set<std::string> seen;
  const Source source = Source::generated(source_name);

  for (size_t i = 0; i < array->size(); ++i) {
    const json& element = (*array)[i];
    auto fail = [&](const std::string& why, const std::string& id = {}) {
      result.errors.push_back({i, id, "element " + std::to_string(i) + ": " + why});
    };
    if (!element.is_object()) {
      fail("element is not a JSON object");
      continue;
    }

    DocumentRecord record;
    record.source = source;
    bool bad = false;
    for (const char* key : {"id", "title", "abstract"}) {
      const json* value = find_field(element, key);
      if (value == nullptr) {
        fail(std::string("missing key \"") + key + "\"");
        bad = true;
        break;
      }
      std::string text;
      if (value->is_string()) {
        text = value->get<std::string>();
      } else if (value->is_number() && std::string(key) == "id") {
        text = value->dump();
      } else {
        fail(std::string("key \"") + key + "\" is not a string");
        bad = true;
        break;
      }
      if (key[0] == 'i') record.id = std::move(text);
      else if (key[0] == 't') record.title = std::move(text);
      else record.abstract_text = std::move(text);
    }
    if (bad) continue;

    if (auto problem = validate_record(record)) {
      fail(*problem, record.id);
      continue;
    }
    if (!seen.insert(record.id).second) {
      fail("duplicate id '" + record.id + "'", record.id);
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

Corpus generation_corpus(const GenerationParse& parse, const std::string& label) {
  Corpus corpus;
  corpus.label = label;
  corpus.records = parse.records;
  return corpus;
}

namespace {

std::vector<std::string> list_files_sorted(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::io, "'" + directory + "' is not a directory");
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

FileReplayGeneration::FileReplayGeneration(const std::string& directory)
    : files_(list_files_sorted(directory)) {}

std::string FileReplayGeneration::complete(const std::string&) {
  if (next_ >= files_.size()) {
    throw Error(ErrorCode::io, "replay exchanges exhausted");
  }
  return read_file(files_[next_++]);
}

ReplayHttpTransport::ReplayHttpTransport(const std::string& directory)
    : files_(list_files_sorted(directory)) {}

HttpResponse ReplayHttpTransport::get(const std::string& url) {
  requests_.push_back(url);
  if (next_ >= files_.size()) {
    throw Error(ErrorCode::network, "replay responses exhausted at " + url);
  }
  return {200, read_file(files_[next_++])};
}

namespace {

class LiveHttpTransport : public HttpTransport {
 public:
  HttpResponse get(const std::string& url) override {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error(ErrorCode::argument, "invalid url '" + url + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin =
        path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos
                           ? std::string("/")
                           : url.substr(path_start);
#ifndef LITSIM_HAVE_OPENSSL
    if (origin.rfind("https", 0) == 0) {
      throw Error(ErrorCode::network,
                  "built without TLS support; https urls are unavailable");
    }
#endif
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(15);
    client.set_read_timeout(60);
    auto response = client.Get(path);
    if (!response) {
      throw Error(ErrorCode::network,
                  "request failed: " + httplib::to_string(response.error()));
    }
    return {response->status, response->body};
  }
};

}  // namespace

std::unique_ptr<HttpTransport> make_transport(const std::string& spec) {
  if (spec == "live") return std::make_unique<LiveHttpTransport>();
  const std::string prefix = "replay:";
  if (spec.rfind(prefix, 0) == 0) {
    return std::make_unique<ReplayHttpTransport>(spec.substr(prefix.size()));
  }
  throw Error(ErrorCode::argument,
              "unknown transport '" + spec + "' (expected \"live\" or \"replay:<dir>\")");
}

std::optional<PubMedSort> pubmed_sort_from_name(const std::string& name) {
  if (name == "most-cited") return PubMedSort::most_cited;
  if (name == "relevance") return PubMedSort::relevance;
  if (name == "pub-date") return PubMedSort::pub_date;
  return std::nullopt;
}

namespace {

constexpr const char* kEutilsBase = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/";

std::string url_encode(const std::string& value) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else if (c == ' ') {
      out.push_back('+');
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace

PubMedClient::PubMedClient(std::unique_ptr<HttpTransport> transport,
                           PubMedClientOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {}

HttpResponse PubMedClient::request(const std::string& url) {
  using namespace std::chrono;
  // E-utilities etiquette: 3 req/s anonymous, 10 req/s with an API key.
  const int64_t min_interval_us = options_.api_key.empty() ? 334'000 : 100'000;
  int64_t backoff_ms = 500;
  for (size_t attempt = 0;; ++attempt) {
    int64_t now = duration_cast<microseconds>(
                      steady_clock::now().time_since_epoch()).count();
    int64_t wait = last_request_us_ + min_interval_us - now;
    if (wait > 0) std::this_thread::sleep_for(microseconds(wait));
    last_request_us_ = duration_cast<microseconds>(
                           steady_clock::now().time_since_epoch()).count();
    try {
      HttpResponse response = transport_->get(url);
      if (response.status == 429 || response.status >= 500) {
        throw Error(ErrorCode::network,
                    "server returned status " + std::to_string(response.status));
      }
      if (response.status != 200) {
        throw Error(ErrorCode::network,
                    "unexpected status " + std::to_string(response.status) +
                        " for " + url);
      }
      return response;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::network || attempt >= options_.max_retries) {
        throw;
      }
      std::this_thread::sleep_for(milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
  }
}

std::vector<std::string> PubMedClient::search(const PubMedQuery& query) {
  if (query.term.empty()) {
    throw Error(ErrorCode::argument, "search term must not be empty");
  }
  if (query.retmax == 0) {
    throw Error(ErrorCode::argument, "retmax must be >= 1");
  }

  std::string sort_param;
  switch (query.sort) {
    case PubMedSort::most_cited:
      // E-utilities exposes no citation-count ordering; fall back to
      // relevance and say so.
      warnings_.push_back(
          "sort=most-cited is not available from E-utilities; using relevance "
          "ordering instead");
      sort_param = "relevance";
      break;
    case PubMedSort::relevance: sort_param = "relevance"; break;
    case PubMedSort::pub_date: sort_param = "pub_date"; break;
  }

  std::vector<std::string> pmids;
  size_t total_available = query.retmax;
  while (pmids.size() < query.retmax && pmids.size() < total_available) {
    size_t page = std::min(options_.page_size, query.retmax - pmids.size());
    std::string url = std::string(kEutilsBase) + "esearch.fcgi?db=pubmed&retmode=json" +
                      "&term=" + url_encode(query.term) +
                      "&retstart=" + std::to_string(pmids.size()) +
                      "&retmax=" + std::to_string(page) + "&sort=" + sort_param +
                      "&tool=litsim";
    if (!options_.contact.empty()) url += "&email=" + url_encode(options_.contact);
    if (!options_.api_key.empty()) url += "&api_key=" + url_encode(options_.api_key);

    HttpResponse response = request(url);
    json doc = json::parse(response.body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("esearchresult")) {
      throw Error(ErrorCode::parse, "malformed esearch response");
    }
    const json& result = doc["esearchresult"];
    if (result.contains("count")) {
      try {
        total_available = std::stoull(result["count"].get<std::string>());
      } catch (...) {
        // leave the requested cap in place
      }
    }
    if (!result.contains("idlist") || !result["idlist"].is_array()) {
      throw Error(ErrorCode::parse, "esearch response lacks an idlist");
    }
    const json& ids = result["idlist"];
    if (ids.empty()) break;
    for (const auto& id : ids) {
      if (pmids.size() >= query.retmax) break;
      pmids.push_back(id.get<std::string>());
    }
    if (ids.size() < page) break;  // server ran out early
  }
  return pmids;
}

namespace {

// Concatenated text of a ptree element, children included.
void gather_text(const boost::property_tree::ptree& node, std::string* out) {
  if (!node.data().empty()) {
    if (!out->empty()) out->push_back(' ');
    *out += node.data();
  }
  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>") continue;
    gather_text(child, out);
  }
}

std::string squeeze_whitespace(const std::string& text) {
  std::string out;
  bool in_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      in_space = !out.empty();
      continue;
    }
    if (in_space) out.push_back(' ');
    in_space = false;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

}  // namespace

EfetchParse parse_efetch_xml(const std::string& xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::parse, std::string("efetch XML parse failed: ") + e.what());
  }

  auto article_set = tree.get_child_optional("PubmedArticleSet");
  if (!article_set) {
    throw Error(ErrorCode::parse, "efetch XML lacks a PubmedArticleSet element");
  }

  EfetchParse result;
  for (const auto& [name, article] : *article_set) {
    if (name != "PubmedArticle") continue;
    std::string pmid = article.get<std::string>("MedlineCitation.PMID", "");
    if (pmid.empty()) continue;

    std::string title;
    if (auto node = article.get_child_optional("MedlineCitation.Article.ArticleTitle")) {
      gather_text(*node, &title);
    }

    std::string abstract_text;
    if (auto abstract = article.get_child_optional("MedlineCitation.Article.Abstract")) {
      for (const auto& [child_name, child] : *abstract) {
        if (child_name != "AbstractText") continue;
        std::string segment;
        gather_text(child, &segment);
        if (segment.empty()) continue;
        if (!abstract_text.empty()) abstract_text.push_back(' ');
        abstract_text += segment;
      }
    }

    abstract_text = squeeze_whitespace(abstract_text);
    if (abstract_text.empty()) {
      result.skipped.push_back(pmid);
      continue;
    }
    DocumentRecord record;
    record.id = pmid;
    record.title = squeeze_whitespace(title);
    record.abstract_text = std::move(abstract_text);
    record.source = Source::reference();
    result.records.push_back(std::move(record));
  }
  return result;
}

PubMedClient::FetchResult PubMedClient::fetch(const std::vector<std::string>& pmids) {
  if (pmids.empty()) {
    throw Error(ErrorCode::argument, "pmid list must not be empty");
  }

  std::vector<std::string> unique;
  std::unordered_set<std::string> seen;
  for (const auto& pmid : pmids) {
    if (seen.insert(pmid).second) unique.push_back(pmid);
  }

  FetchResult result;
  result.corpus.label = "pubmed";
  if (unique.size() != pmids.size()) {
    result.warnings.push_back(
        std::to_string(pmids.size() - unique.size()) +
        " duplicate pmid(s) collapsed before fetching");
  }

  std::unordered_map<std::string, DocumentRecord> by_pmid;
  std::unordered_set<std::string> skipped;
  for (size_t start = 0; start < unique.size(); start += options_.fetch_batch) {
    size_t count = std::min(options_.fetch_batch, unique.size() - start);
    std::string ids;
    for (size_t i = start; i < start + count; ++i) {
      if (!ids.empty()) ids.push_back(',');
      ids += unique[i];
    }
    std::string url = std::string(kEutilsBase) +
                      "efetch.fcgi?db=pubmed&rettype=abstract&retmode=xml&id=" + ids +
                      "&tool=litsim";
    if (!options_.contact.empty()) url += "&email=" + url_encode(options_.contact);
    if (!options_.api_key.empty()) url += "&api_key=" + url_encode(options_.api_key);

    HttpResponse response = request(url);
    EfetchParse parsed;
    try {
      parsed = parse_efetch_xml(response.body);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (batch starting at pmid " +
                                unique[start] + ")");
    }
    for (auto& record : parsed.records) {
      by_pmid.emplace(record.id, std::move(record));
    }
    for (auto& pmid : parsed.skipped) skipped.insert(pmid);
  }

  for (const auto& pmid : unique) {
    auto it = by_pmid.find(pmid);
    if (it != by_pmid.end()) {
      result.corpus.records.push_back(std::move(it->second));
    } else {
      result.skipped.push_back(pmid);
      if (skipped.count(pmid) == 0) {
        result.warnings.push_back("pmid " + pmid + ": no record returned");
      }
    }
  }
  return result;
}

}  // namespace litsim
