#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support/paths.hpp"

namespace {

namespace fs = std::filesystem;

std::string cli() { return LITSIM_CLI_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

// Runs the CLI via the shell, capturing stdout and decoding the exit status.
RunResult run(const std::string& args) {
  std::string command = cli() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  TempDir() : path(fs::temp_directory_path() /
                   ("litsim_cli_" + std::to_string(counter_++))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter_ = 0;
  fs::path path;
};

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("docsim").exit_code == 2);               // missing required flags
  CHECK(run("prompt --topic x --bogus").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("prompt prints the rendered prompt") {
  auto result = run("prompt -n 3 -w 90 --topic \"prostate cancer treatment\"");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("3 reports") != std::string::npos);
  CHECK(result.output.find("90 words") != std::string::npos);
  CHECK(result.output.find("prostate cancer treatment") != std::string::npos);
}

TEST_CASE("validate accepts clean output and rejects the malformed fixture") {
  TempDir dir;
  std::string out = " --out " + dir.path.string();

  auto clean = run("validate --input " + fixture_path("generation_clean.txt") +
                   " --source chatgpt" + out);
  CHECK(clean.exit_code == 0);
  CHECK(fs::exists(dir.path / "validated_chatgpt.json"));

  auto bad = run("validate --input " + fixture_path("generation_malformed.txt") +
                 " --source bard" + out);
  CHECK(bad.exit_code == 1);
  CHECK(fs::exists(dir.path / "validated_bard.json"));
  CHECK(fs::exists(dir.path / "validation_report_bard.json"));
  CHECK(slurp(dir.path / "validation_report_bard.json").find("GPT-ID") !=
        std::string::npos);
}

TEST_CASE("fetch works against the replay transport") {
  TempDir dir;
  // The output directory does not exist yet; subcommands must create it.
  fs::path out = dir.path / "fresh" / "acq";
  auto result = run("fetch --term \"prostate cancer treatment\" --retmax 10"
                    " --transport replay:" + fixture_path("fetch_replay") +
                    " --out " + out.string());
  CHECK(result.exit_code == 0);
  REQUIRE(fs::exists(out / "pubmed.json"));
  CHECK(slurp(out / "pubmed.json").find("31111111") != std::string::npos);
  CHECK(fs::exists(out / "fetch_report.json"));
}

TEST_CASE("docsim subcommand emits its tables") {
  TempDir dir;
  auto result = run("docsim --reference " + fixture_path("reference_500.json") +
                    " --reference-label pubmed --generated alpha=" +
                    fixture_path("alpha_100.json") +
                    " --sizes 5 --seed 7 --out " + dir.path.string());
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir.path / "document_similarity.csv"));
  CHECK(fs::exists(dir.path / "document_similarity_detail.csv"));
  CHECK(fs::exists(dir.path / "series_cosine.csv"));
  CHECK(fs::exists(dir.path / "results.json"));

  std::string table = slurp(dir.path / "document_similarity.csv");
  CHECK(table.find("metric,sample_size,seed,source,mean_score") == 0);
  CHECK(table.find("cosine,5,7,alpha,") != std::string::npos);
}

TEST_CASE("bad generated spelling is a usage error") {
  auto result = run("docsim --reference " + fixture_path("reference_500.json") +
                    " --generated nopath");
  CHECK(result.exit_code == 2);
}

TEST_CASE("strict load failures exit 1") {
  TempDir dir;
  fs::path bad = dir.path / "bad.json";
  std::ofstream(bad) << R"([{"id":"TOOLONG1","title":"t","abstract":"a"}])";
  auto result = run("docsim --reference " + fixture_path("reference_500.json") +
                    " --generated x=" + bad.string() +
                    " --sizes 1 --out " + dir.path.string());
  CHECK(result.exit_code == 1);
}

TEST_CASE("report re-emits byte-identical tables from results.json") {
  TempDir first;
  auto run1 = run("network --reference " + fixture_path("reference_500.json") +
                  " --reference-label pubmed --generated alpha=" +
                  fixture_path("alpha_100.json") +
                  " --sizes 4 --seed 7 --out " + first.path.string());
  REQUIRE(run1.exit_code == 0);
  REQUIRE(fs::exists(first.path / "centrality.csv"));

  TempDir second;
  auto run2 = run("report --results " + (first.path / "results.json").string() +
                  " --out " + second.path.string());
  CHECK(run2.exit_code == 0);
  CHECK(slurp(first.path / "centrality.csv") == slurp(second.path / "centrality.csv"));
  CHECK(slurp(first.path / "bigram_ranks.md") == slurp(second.path / "bigram_ranks.md"));
  CHECK(slurp(first.path / "results.json") == slurp(second.path / "results.json"));
}

TEST_CASE("a stopword override changes the analysis") {
  TempDir dir;
  std::string base = "bigrams --reference " + fixture_path("reference_500.json") +
                     " --generated alpha=" + fixture_path("alpha_100.json") +
                     " --sizes 3 --seed 7 --out ";

  auto plain = run(base + (dir.path / "plain").string());
  auto overridden = run(base + (dir.path / "override").string() +
                        " --stopwords " + fixture_path("stopwords_extra.txt"));
  REQUIRE(plain.exit_code == 0);
  REQUIRE(overridden.exit_code == 0);
  // The override list drops "cancer"/"treatment", so the bigram space and the
  // scores move.
  CHECK(slurp(dir.path / "plain" / "bigram_similarity.csv") !=
        slurp(dir.path / "override" / "bigram_similarity.csv"));
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir dir;
  fs::path config = dir.path / "run.conf";
  std::ofstream(config) << "seed=99\nsizes=2,3\n";

  auto result = run("--config " + config.string() + " docsim --reference " +
                    fixture_path("reference_500.json") + " --generated alpha=" +
                    fixture_path("alpha_100.json") + " --out " +
                    dir.path.string() + " --metric cosine");
  REQUIRE(result.exit_code == 0);
  std::string table = slurp(dir.path / "document_similarity.csv");
  CHECK(table.find("cosine,2,99,alpha,") != std::string::npos);
  CHECK(table.find("cosine,3,99,alpha,") != std::string::npos);

  // A flag on the command line wins over the config value.
  auto overridden = run("--config " + config.string() + " --seed 7 docsim" +
                        " --reference " + fixture_path("reference_500.json") +
                        " --generated alpha=" + fixture_path("alpha_100.json") +
                        " --out " + dir.path.string() + " --metric cosine");
  REQUIRE(overridden.exit_code == 0);
  CHECK(slurp(dir.path / "document_similarity.csv").find("cosine,2,7,alpha,") !=
        std::string::npos);
}
