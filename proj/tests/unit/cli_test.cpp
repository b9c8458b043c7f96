// Copyright 2026 The rxnie Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed command-line binary end to end.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "fixtures.hpp"
#include "json.hpp"
#include "rxnie/corpus.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/util.hpp"
#include "synthetic.hpp"

namespace rxnie {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  Invocation run(const std::string &args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(RXNIE_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Invocation r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = fs::exists(out) ? read_file(out) : "";
    r.err = fs::exists(err) ? read_file(err) : "";
    return r;
  }

  std::string ws() const { return "--workspace " + (dir_ / "ws").string(); }

  fs::path write_corpus(std::size_t n, std::uint64_t seed) {
    const fs::path p = dir_ / "corpus.jsonl";
    testing::write_text(p, serialize_corpus(testing::documents_of(testing::generate_corpus(n, seed))));
    return p;
  }

  testing::TempDir dir_{"cli"};
};

TEST_F(Cli, HelpListsCommandsAndFlags) {
  Invocation top = run("--help");
  EXPECT_EQ(top.code, 0);
  for (const char *word : {"ingest", "seed-label", "distant", "bootstrap", "review", "train", "extract", "eval", "report",
                           "--workspace", "--config"}) {
    EXPECT_NE(top.out.find(word), std::string::npos) << word;
  }
  Invocation sub = run("bootstrap run --help");
  EXPECT_EQ(sub.code, 0);
  for (const char *flag : {"--auto", "--iterations", "--min-freq", "--top-k", "--negative-ratio", "--epochs"}) {
    EXPECT_NE(sub.out.find(flag), std::string::npos) << flag;
  }
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("--bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bootstrap").code, 2);
  EXPECT_EQ(run("ingest").code, 2);
  EXPECT_EQ(run(ws() + " bootstrap run --iterations lots").code, 2);
}

TEST_F(Cli, DataErrorsExitThree) {
  Invocation missing = run(ws() + " ingest --corpus " + (dir_ / "absent.jsonl").string());
  EXPECT_EQ(missing.code, 3);
  testing::write_text(dir_ / "bad.jsonl", "{\"id\":\"a\"}\n");
  Invocation bad = run(ws() + " ingest --corpus " + (dir_ / "bad.jsonl").string());
  EXPECT_EQ(bad.code, 3);
  nlohmann::json err = nlohmann::json::parse(bad.err);
  EXPECT_EQ(err["error"], "ParseError");
  EXPECT_NE(err["detail"].get<std::string>().find("line 1"), std::string::npos);
}

TEST_F(Cli, StateErrorsExitFour) {
  ASSERT_EQ(run(ws() + " ingest --corpus " + write_corpus(20, 1).string()).code, 0);
  Invocation r = run(ws() + " bootstrap run --auto");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("NoPatterns"), std::string::npos) << r.err;
}

TEST_F(Cli, ExtractBeforeTrainFails) {
  const fs::path corpus = write_corpus(5, 2);
  ASSERT_EQ(run(ws() + " ingest --corpus " + corpus.string()).code, 0);
  Invocation r = run(ws() + " extract --in " + corpus.string() + " --out " + (dir_ / "pred.jsonl").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("UntrainedRole"), std::string::npos) << r.err;
}

TEST_F(Cli, EvalIdenticalFilesScoresOne) {
  const fs::path gold = dir_ / "gold.jsonl";
  testing::write_text(gold, serialize_reactions(testing::gold_of(testing::generate_corpus(20, 3))));
  Invocation products = run("eval products --pred " + gold.string() + " --gold " + gold.string());
  ASSERT_EQ(products.code, 0) << products.err;
  nlohmann::json report = nlohmann::json::parse(products.out);
  EXPECT_EQ(report["overall"]["f1"], 1.0);
  Invocation roles = run("eval roles --pred " + gold.string() + " --gold " + gold.string() + " --table");
  ASSERT_EQ(roles.code, 0) << roles.err;
  EXPECT_NE(roles.out.find("100.0"), std::string::npos) << roles.out;
}

TEST_F(Cli, FullAutoBootstrapThenExtract) {
  const fs::path corpus = write_corpus(300, 5);
  ASSERT_EQ(run(ws() + " ingest --corpus " + corpus.string()).code, 0);
  Invocation seeded = run(ws() + " seed-label");
  ASSERT_EQ(seeded.code, 0) << seeded.err;
  Invocation boot = run(ws() + " bootstrap run --auto --iterations 3");
  ASSERT_EQ(boot.code, 0) << boot.err;
  EXPECT_TRUE(fs::exists(dir_ / "ws" / "patterns" / "v3.tsv"));
  EXPECT_TRUE(fs::exists(dir_ / "ws" / "models" / "final.json"));

  Invocation report = run(ws() + " report --iteration 2");
  EXPECT_EQ(report.code, 0) << report.err;
  EXPECT_EQ(run(ws() + " report --iteration 9").code, 4);

  const fs::path pred = dir_ / "pred.jsonl";
  Invocation ex = run(ws() + " extract --in " + corpus.string() + " --out " + pred.string());
  ASSERT_EQ(ex.code, 0) << ex.err;
  std::vector<AnnotatedDocument> docs = load_reactions(pred);
  EXPECT_EQ(docs.size(), 300u);
}

TEST_F(Cli, InteractiveRunWaitsForReview) {
  ASSERT_EQ(run(ws() + " ingest --corpus " + write_corpus(200, 7).string()).code, 0);
  ASSERT_EQ(run(ws() + " seed-label").code, 0);
  ASSERT_EQ(run(ws() + " bootstrap run").code, 0);
  Invocation blocked = run(ws() + " review finalize --iteration 1");
  EXPECT_EQ(blocked.code, 4);
  EXPECT_NE(blocked.err.find("PendingDecisions"), std::string::npos) << blocked.err;
  EXPECT_EQ(run(ws() + " review decide --candidate nope --verdict accept").code, 4);
  EXPECT_EQ(run(ws() + " review decide --candidate nope --verdict maybe").code, 2);
}

}  // namespace
}  // namespace rxnie
