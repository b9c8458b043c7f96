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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rxnie/corpus.hpp"
#include "rxnie/error.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/supervision.hpp"
#include "rxnie/util.hpp"
#include "synthetic.hpp"

namespace rxnie {
namespace {

StructuredReaction reaction(std::map<Role, std::vector<std::string>> pairs, const std::string &doc = "d") {
  return {doc, std::move(pairs)};
}

// Oxidation-style paragraphs with structured records: catalysts, solvents
// and yields vary so the model learns the cues rather than the names.
class DistantModel : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const std::vector<std::string> catalysts = {"FeCl3", "CuCl2", "AlCl3", "ZnBr2", "NiCl2", "CoCl2"};
    const std::vector<std::string> solvents = {"dichloromethane", "toluene", "THF", "methanol", "DMF"};
    Rng rng(5);
    std::vector<Document> docs;
    std::vector<QAExample> examples;
    for (int i = 0; i < 40; ++i) {
      const std::string reactant = std::to_string(10 + i) + "a";
      const std::string product = std::to_string(10 + i) + "b";
      const std::string cat = rng.pick(catalysts);
      const std::string sol = rng.pick(solvents);
      const std::string yield = std::to_string(50 + rng.below(50));
      const std::string text =
          i % 2 == 0 ? "The alcohol " + reactant + " was oxidized with " + cat + " in " + sol + " at " +
                           std::to_string(rng.below(90)) + " °C for 2 h to obtain " + product + " in " +
                           yield + " % yield."
                     : "Treatment of " + reactant + " with " + cat + " in " + sol + " at reflux gave " +
                           product + " in " + yield + " % yield after workup.";
      PatentRecord r{"k" + std::to_string(i), text, {product}, {reactant}, {cat}, {sol}};
      std::vector<QAExample> qa = patent_to_qa({r});
      QAExample y = qa.back();
      y.role = Role::kYield;
      y.question = question_for_role(Role::kYield, product);
      y.answers = {yield + " %"};
      qa.push_back(y);
      examples.insert(examples.end(), qa.begin(), qa.end());
      docs.push_back({r.id, text, DocumentSource::kPatent});
    }
    model_ = new ExtractorModel(train(examples, mask_corpus(docs, Gazetteer::builtin())));
  }
  static void TearDownTestSuite() {
    delete model_;
    model_ = nullptr;
  }

  static ExtractorModel *model_;
};

ExtractorModel *DistantModel::model_ = nullptr;

TEST(NormalizeArgument, Examples) {
  EXPECT_EQ(normalize_argument("  5e."), "5e");
  EXPECT_EQ(normalize_argument("(85 %)"), "85 %");
  EXPECT_EQ(normalize_argument("FeCl3"), "fecl3");
  EXPECT_EQ(normalize_argument("Ethyl   Acetate"), "ethyl acetate");
  EXPECT_EQ(normalize_argument(""), "");
}

TEST(NormalizeArgumentProperty, Idempotent) {
  for (const char *s : {"  5e.", "(85 %)", "x;", "Pd/C,", " ( 60 °C ) "}) {
    const std::string once = normalize_argument(s);
    EXPECT_EQ(normalize_argument(once), once) << s;
  }
}

TEST(EvaluateProducts, HandComputedFixture) {
  EvalReport r = evaluate_products({{"d", {"a", "b", "c"}}}, {{"d", {"a", "b", "d", "e"}}});
  EXPECT_EQ(r.overall, (Counts{2, 1, 2}));
  EXPECT_NEAR(r.overall.precision(), 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(r.overall.recall(), 0.5, 1e-9);
  EXPECT_NEAR(r.overall.f1(), 4.0 / 7.0, 1e-9);
  EXPECT_EQ(r.task, "products");
}

TEST(EvaluateProducts, IdentityAndEmpty) {
  ProductLists gold = {{"d1", {"5e", "6f"}}, {"d2", {"7g"}}};
  EXPECT_EQ(evaluate_products(gold, gold).overall.f1(), 1.0);
  Counts empty = evaluate_products({}, gold).overall;
  EXPECT_EQ(empty.precision(), 0.0);
  EXPECT_EQ(empty.recall(), 0.0);
  EXPECT_EQ(empty.f1(), 0.0);
}

TEST(EvaluateProducts, NormalizesAndCountsMultiset) {
  EvalReport r = evaluate_products({{"d", {"5E.", "5e", "(5e)"}}}, {{"d", {"5e", "5e"}}});
  EXPECT_EQ(r.overall, (Counts{2, 1, 0}));
}

TEST(EvaluateProductsProperty, AgreesWithOracleAndSwapSymmetry) {
  Rng rng(31);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> p, g;
    for (std::size_t k = 0, n = rng.below(6); k < n; ++k) p.push_back(rng.pick(pool));
    for (std::size_t k = 0, n = rng.below(6); k < n; ++k) g.push_back(rng.pick(pool));
    Counts c = evaluate_products({{"d", p}}, {{"d", g}}).overall;
    testing::OracleCounts o = testing::multiset_counts(p, g);
    EXPECT_EQ(c, (Counts{o.tp, o.fp, o.fn}));
    EXPECT_NEAR(c.f1(), testing::oracle_f1(o), 1e-9);
    Counts swapped = evaluate_products({{"d", g}}, {{"d", p}}).overall;
    EXPECT_NEAR(swapped.precision(), c.recall(), 1e-9);
    EXPECT_NEAR(swapped.recall(), c.precision(), 1e-9);
    EXPECT_EQ(c.tp + c.fn, g.size());
    EXPECT_EQ(c.tp + c.fp, p.size());
  }
}

TEST(EvaluateRoles, AlignedReactionHandCount) {
  ReactionLists gold = {{"d", {reaction({{Role::kProduct, {"5e"}},
                                         {Role::kCatalyst, {"FeCl3"}},
                                         {Role::kSolvent, {"DCM"}},
                                         {Role::kTime, {"2 h"}},
                                         {Role::kYield, {"85 %"}}})}}};
  ReactionLists pred = {{"d", {reaction({{Role::kProduct, {"5e"}},
                                         {Role::kCatalyst, {"FeCl3"}},
                                         {Role::kSolvent, {"DCM", "water"}},
                                         {Role::kYield, {"85 %"}}})}}};
  EvalReport r = evaluate_roles(pred, gold, Conditioning::kGoldProducts);
  EXPECT_EQ(r.overall, (Counts{3, 1, 1}));
  EXPECT_EQ(r.per_role.at(Role::kSolvent), (Counts{1, 1, 0}));
  EXPECT_EQ(r.per_role.at(Role::kTime), (Counts{0, 0, 1}));
  EXPECT_EQ(r.conditioning, Conditioning::kGoldProducts);
  EXPECT_EQ(evaluate_roles(gold, gold, Conditioning::kPredicted).overall.f1(), 1.0);
}

TEST(EvaluateRoles, ProductMismatchMeansNoAlignment) {
  ReactionLists gold = {{"d", {reaction({{Role::kProduct, {"5e"}}, {Role::kYield, {"85 %"}}})}}};
  ReactionLists pred = {{"d", {reaction({{Role::kProduct, {"6f"}}, {Role::kYield, {"85 %"}}})}}};
  EXPECT_EQ(evaluate_roles(pred, gold, Conditioning::kPredicted).overall, (Counts{0, 1, 1}));
}

// Random reactions: tp + fn equals the gold pair count, tp + fp the
// predicted count, and swapping sides swaps precision and recall.
TEST(EvaluateRolesProperty, ConservationAndSwap) {
  Rng rng(8);
  const std::vector<std::string> products = {"p1", "p2", "p3"};
  const std::vector<std::string> args = {"x", "y", "z"};
  const std::vector<Role> roles = {Role::kCatalyst, Role::kSolvent, Role::kYield};
  auto random_doc = [&]() {
    std::vector<StructuredReaction> out;
    std::vector<std::string> used;
    for (std::size_t k = 0, n = rng.below(3); k < n; ++k) {
      const std::string p = rng.pick(products);
      if (std::find(used.begin(), used.end(), p) != used.end()) continue;
      used.push_back(p);
      StructuredReaction r{"d", {{Role::kProduct, {p}}}};
      for (Role role : roles) {
        if (rng.below(2) == 0) r.pairs[role] = {rng.pick(args)};
      }
      out.push_back(r);
    }
    return out;
  };
  auto pair_count = [](const std::vector<StructuredReaction> &rs) {
    std::size_t n = 0;
    for (const StructuredReaction &r : rs) n += r.pairs.size() - 1;
    return n;
  };
  for (int i = 0; i < 50; ++i) {
    std::vector<StructuredReaction> p = random_doc(), g = random_doc();
    Counts c = evaluate_roles({{"d", p}}, {{"d", g}}, Conditioning::kPredicted).overall;
    EXPECT_EQ(c.tp + c.fn, pair_count(g));
    EXPECT_EQ(c.tp + c.fp, pair_count(p));
    Counts s = evaluate_roles({{"d", g}}, {{"d", p}}, Conditioning::kPredicted).overall;
    EXPECT_EQ(s.tp, c.tp);
    EXPECT_NEAR(s.precision(), c.recall(), 1e-9);
  }
}

TEST(ReactionsIo, RoundTripAndErrors) {
  std::vector<AnnotatedDocument> docs = testing::gold_of(testing::generate_corpus(10, 3));
  std::vector<AnnotatedDocument> back = parse_reactions(serialize_reactions(docs));
  ASSERT_EQ(back.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) EXPECT_EQ(back[i].reactions, docs[i].reactions);
  auto code = [](const std::string &text) {
    try {
      parse_reactions(text);
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  EXPECT_EQ(code("{\"doc_id\":\"a\",\"reactions\":[{\"yield\":[\"5 %\"]}]}"), ErrorCode::kParseError);
  EXPECT_EQ(code("{\"doc_id\":\"a\",\"reactions\":[{\"product\":[\"x\",\"y\"]}]}"), ErrorCode::kParseError);
  EXPECT_EQ(code("{\"doc_id\":\"a\",\"reactions\":[{\"product\":[\"x\"],\"yield\":[]}]}"), ErrorCode::kParseError);
  EXPECT_EQ(code("{\"doc_id\":\"a\",\"reactions\":[{\"product\":[\"x\"],\"reagent\":[\"r\"]}]}"),
            ErrorCode::kParseError);
  EXPECT_EQ(code("{\"doc_id\":\"a\",\"reactions\":[]}\n{\"doc_id\":\"a\",\"reactions\":[]}"),
            ErrorCode::kDuplicateId);
}

TEST(ReportTable, ShowsPercentages) {
  EvalReport r = evaluate_products({{"d", {"a", "b", "c"}}}, {{"d", {"a", "b", "d", "e"}}});
  const std::string table = render_report_table(r);
  EXPECT_NE(table.find("66.7"), std::string::npos) << table;
  EXPECT_NE(table.find("50.0"), std::string::npos) << table;
  EXPECT_NE(table.find("57.1"), std::string::npos) << table;
}

TEST_F(DistantModel, FigureStyleParagraph) {
  MaskedText m = mask_document(testing::oxidation_paragraph(), Gazetteer::builtin());
  std::vector<std::string> products = extract_products(*model_, m);
  ASSERT_EQ(products, (std::vector<std::string>{"5e"}));
  StructuredReaction r = extract_reaction(*model_, m, "5e");
  EXPECT_EQ(r.product(), "5e");
  EXPECT_EQ(r.pairs.at(Role::kCatalyst), (std::vector<std::string>{"FeCl3"}));
  EXPECT_EQ(r.pairs.at(Role::kSolvent), (std::vector<std::string>{"dichloromethane"}));
  EXPECT_EQ(r.pairs.at(Role::kYield), (std::vector<std::string>{"85 %"}));
}

TEST_F(DistantModel, NoChemicalsNoReactions) {
  MaskedText m = mask_document({"e", "The weather was mild and nothing happened.", DocumentSource::kFixture},
                               Gazetteer::builtin());
  EXPECT_TRUE(extract_products(*model_, m).empty());
  EXPECT_TRUE(extract_all(*model_, m).empty());
}

TEST_F(DistantModel, TwoProductsInReadingOrder) {
  MaskedText m = mask_document(
      {"two",
       "The alcohol 71a was oxidized with CuCl2 in toluene at 40 °C for 2 h to obtain 71b in 77 % yield. "
       "Treatment of 72a with FeCl3 in THF at reflux gave 72b in 64 % yield after workup.",
       DocumentSource::kFixture},
      Gazetteer::builtin());
  EXPECT_EQ(extract_products(*model_, m), (std::vector<std::string>{"71b", "72b"}));
  std::vector<StructuredReaction> all = extract_all(*model_, m);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].product(), "71b");
  EXPECT_EQ(all[1].product(), "72b");
}

TEST_F(DistantModel, ProductOnlyWhenNoCues) {
  MaskedText m = mask_document({"p", "Compound 5e .", DocumentSource::kFixture}, Gazetteer::builtin());
  StructuredReaction r = extract_reaction(*model_, m, "5e");
  EXPECT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.product(), "5e");
}

TEST_F(DistantModel, Errors) {
  MaskedText m = mask_document(testing::oxidation_paragraph(), Gazetteer::builtin());
  EXPECT_THROW(extract_reaction(*model_, m, ""), Error);
  ExtractorModel products_only;
  products_only.roles[Role::kProduct] = model_->roles.at(Role::kProduct);
  try {
    extract_reaction(products_only, m, "5e");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUntrainedRole);
  }
  try {
    extract_products(ExtractorModel{}, m);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUntrainedRole);
  }
}

// Every reaction has one product, equal to its conditioning product, and no
// role maps to an empty list.
TEST_F(DistantModel, ShapeInvariantsOnSyntheticCorpus) {
  for (const testing::SyntheticDocument &d : testing::generate_corpus(60, 21)) {
    MaskedText m = mask_document(d.doc, Gazetteer::builtin());
    std::vector<std::string> products = extract_products(*model_, m);
    std::vector<StructuredReaction> all = extract_all(*model_, m);
    ASSERT_EQ(all.size(), products.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      ASSERT_EQ(all[i].pairs.at(Role::kProduct).size(), 1u);
      EXPECT_EQ(all[i].product(), products[i]);
      EXPECT_EQ(all[i].source_doc_id, d.doc.id);
      for (const auto &[role, args] : all[i].pairs) EXPECT_FALSE(args.empty()) << role_name(role);
    }
  }
}

}  // namespace
}  // namespace rxnie
