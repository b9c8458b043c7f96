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

// rxnie: command-line entry point. Every subcommand works on a workspace
// directory (see bootstrap.hpp for the layout) and exits with 0 on success,
// 2 on usage errors, 3 on data errors and 4 on state errors. Failures are
// reported on stderr as {"error": name, "detail": text}.

#include <csignal>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "rxnie/bootstrap.hpp"
#include "rxnie/config.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/supervision.hpp"
#include "rxnie/util.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using rxnie::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;

int exit_code_for(ErrorCode code) {
  switch (rxnie::error_category(code)) {
    case rxnie::ErrorCategory::kUsage: return 2;
    case rxnie::ErrorCategory::kData: return 3;
    case rxnie::ErrorCategory::kState: return 4;
  }
  return 3;
}

void print_error(std::string_view name, std::string_view detail) {
  std::cerr << json{{"error", std::string(name)}, {"detail", std::string(detail)}}.dump() << "\n";
}

// Options shared by every subcommand; flags override the config file.
struct Options {
  std::string config_path;
  std::string workspace;

  std::string corpus;
  std::string gazetteer;
  std::string seeds;
  std::string patents;
  std::vector<std::string> datasets;
  std::string in_path;
  std::string out_path;
  std::string model_path;
  std::string gold_path;
  std::string pred_path;
  std::string conditioning = "gold";
  std::string host = "127.0.0.1";
  std::string static_dir;
  std::string candidate;
  std::string verdict;
  int port = 8080;
  int iteration = 0;
  bool auto_mode = false;
  bool table = false;

  // Bootstrap and training overrides, as "key=value" strings for the config parser.
  std::vector<std::pair<std::string, std::string>> overrides;
};

rxnie::AppConfig resolve_config(const Options &opt) {
  rxnie::AppConfig config =
      opt.config_path.empty() ? rxnie::AppConfig{} : rxnie::load_config(opt.config_path);
  if (!opt.workspace.empty()) config.workspace = opt.workspace;
  for (const auto &[key, value] : opt.overrides) rxnie::apply_config_value(config, key, value);
  if (opt.auto_mode) config.bootstrap.review_mode = rxnie::ReviewMode::kAuto;
  config.bootstrap.validate();
  return config;
}

rxnie::Workspace workspace_of(const rxnie::AppConfig &config) {
  if (!config.workspace) {
    throw rxnie::Error(ErrorCode::kUsage, "no workspace: pass --workspace or set it in --config");
  }
  return rxnie::Workspace(*config.workspace);
}

fs::path required_path(const std::string &flag_value, const std::optional<fs::path> &configured,
                       std::string_view what) {
  fs::path p = !flag_value.empty() ? fs::path(flag_value) : configured.value_or(fs::path());
  if (p.empty()) throw rxnie::Error(ErrorCode::kUsage, "missing " + std::string(what) + " path");
  if (!fs::exists(p)) throw rxnie::Error(ErrorCode::kIo, "no such file: " + p.string());
  return p;
}

void print_json(const json &j) { std::cout << j.dump(2) << "\n"; }

json iteration_json(const rxnie::IterationState &it) {
  return {{"iteration", it.iteration},
          {"version_before", it.version_before},
          {"version_after", it.version_after},
          {"finalized", it.finalized},
          {"labels", it.counts.labels},
          {"qa_examples", it.counts.qa_examples},
          {"candidates", it.counts.candidates},
          {"accepted", it.counts.accepted},
          {"rejected", it.counts.rejected}};
}

void cmd_ingest(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  fs::path corpus = required_path(opt.corpus, config.corpus, "corpus");
  std::optional<std::string> gazetteer;
  if (!opt.gazetteer.empty() || config.gazetteer) {
    gazetteer = rxnie::read_file(required_path(opt.gazetteer, config.gazetteer, "gazetteer"));
  }
  rxnie::WorkspaceLock lock(ws.root());
  std::vector<rxnie::Document> docs = rxnie::load_corpus(corpus);
  ws.ingest(docs, gazetteer);
  print_json({{"documents", docs.size()}, {"workspace", ws.root().string()}});
}

void cmd_seed_label(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  rxnie::PatternSet seeds = rxnie::default_seed_patterns();
  if (!opt.seeds.empty() || config.seeds) {
    seeds = rxnie::load_pattern_file(required_path(opt.seeds, config.seeds, "seeds"));
  }
  rxnie::WorkspaceLock lock(ws.root());
  std::vector<rxnie::Document> docs = ws.corpus();
  ws.install_seeds(seeds);
  std::vector<rxnie::MaskedText> masked = rxnie::mask_corpus(docs, ws.gazetteer());
  std::vector<rxnie::WeakLabel> labels;
  std::vector<rxnie::QAExample> qa =
      rxnie::build_linguistic_dataset(docs, masked, seeds, config.bootstrap, &labels);
  rxnie::write_file_atomic(ws.datasets_dir() / "seed_labels.jsonl", rxnie::serialize_weak_labels(labels));
  rxnie::write_file_atomic(ws.datasets_dir() / "seed_qa.jsonl", rxnie::serialize_qa_examples(qa));
  print_json({{"patterns", seeds.patterns.size()}, {"labels", labels.size()}, {"qa_examples", qa.size()}});
}

void cmd_distant_build(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  fs::path patents = required_path(opt.patents, config.patents, "patents");
  rxnie::WorkspaceLock lock(ws.root());
  rxnie::FilterResult filtered = rxnie::filter_patent_records(rxnie::load_patent_records(patents));
  std::vector<rxnie::QAExample> qa = rxnie::patent_to_qa(filtered.kept);
  rxnie::write_file_atomic(ws.datasets_dir() / "distant_qa.jsonl", rxnie::serialize_qa_examples(qa));
  std::string stats = rxnie::serialize_dataset_stats(filtered.stats);
  rxnie::write_file_atomic(ws.datasets_dir() / "distant_stats.json", stats);
  std::cout << stats;
}

void cmd_bootstrap_run(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  rxnie::WorkspaceLock lock(ws.root());
  json out = json::array();
  for (const rxnie::IterationState &it : rxnie::run_bootstrap(ws, config.bootstrap)) {
    out.push_back(iteration_json(it));
  }
  print_json({{"iterations", std::move(out)}, {"pattern_version", ws.state().pattern_version}});
}

volatile std::sig_atomic_t g_stop_requested = 0;
rxnie::ReviewServer *g_server = nullptr;

void on_signal(int) {
  g_stop_requested = 1;
  if (g_server != nullptr) g_server->stop();
}

void cmd_review_serve(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  rxnie::WorkspaceLock lock(ws.root());
  std::optional<fs::path> static_dir;
  if (!opt.static_dir.empty()) {
    if (!fs::is_directory(opt.static_dir)) {
      throw rxnie::Error(ErrorCode::kIo, "no such directory: " + opt.static_dir);
    }
    static_dir = opt.static_dir;
  }
  rxnie::ReviewService service(ws);
  rxnie::ReviewServer server(service, static_dir);
  int port = server.bind(opt.host, opt.port);
  if (port < 0) {
    throw rxnie::Error(ErrorCode::kIo, "cannot bind " + opt.host + ":" + std::to_string(opt.port));
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << json{{"listening", opt.host + ":" + std::to_string(port)}}.dump() << std::endl;
  server.listen();
  g_server = nullptr;
}

void cmd_review_finalize(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  rxnie::WorkspaceLock lock(ws.root());
  rxnie::ReviewService service(ws);
  print_json(service.finalize(opt.iteration));
}

void cmd_review_decide(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  rxnie::WorkspaceLock lock(ws.root());
  rxnie::ReviewService service(ws);
  print_json(service.record_decision(opt.candidate, rxnie::parse_verdict(opt.verdict)));
}

void cmd_train(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  std::vector<rxnie::QAExample> examples;
  for (const std::string &path : opt.datasets) {
    for (rxnie::QAExample &ex : rxnie::load_qa_examples(required_path(path, {}, "dataset"))) {
      examples.push_back(std::move(ex));
    }
  }
  // The contexts are the documents; one document per doc_id.
  std::vector<rxnie::Document> docs;
  std::map<std::string, std::string> seen;
  for (const rxnie::QAExample &ex : examples) {
    auto [it, inserted] = seen.emplace(ex.doc_id, ex.context);
    if (inserted) {
      docs.push_back({ex.doc_id, ex.context, rxnie::DocumentSource::kFixture});
    } else if (it->second != ex.context) {
      throw rxnie::Error(ErrorCode::kParseError, "doc_id " + ex.doc_id + " has two different contexts");
    }
  }
  std::optional<rxnie::Workspace> ws;
  if (config.workspace) ws.emplace(*config.workspace);
  rxnie::Gazetteer gazetteer = ws ? ws->gazetteer() : rxnie::Gazetteer::builtin();
  fs::path out = !opt.out_path.empty() ? fs::path(opt.out_path)
                 : ws                  ? ws->root() / "models" / "extractor.json"
                                       : throw rxnie::Error(ErrorCode::kUsage, "train needs --out or --workspace");
  std::optional<rxnie::WorkspaceLock> lock;
  if (ws) lock.emplace(ws->root());
  rxnie::TrainingReport report;
  rxnie::ExtractorModel model = rxnie::train(examples, rxnie::mask_corpus(docs, gazetteer),
                                             config.bootstrap.hyper, config.bootstrap.threshold, &report);
  rxnie::save_model(model, out);
  json roles = json::object();
  for (const auto &[role, loss] : report.roles) {
    roles[std::string(rxnie::role_name(role))] = {{"instances", loss.instances},
                                                  {"initial_loss", loss.initial_loss},
                                                  {"final_loss", loss.final_loss}};
  }
  print_json({{"model", out.string()}, {"examples", examples.size()}, {"roles", std::move(roles)}});
}

void cmd_extract(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  std::optional<rxnie::Workspace> ws;
  if (config.workspace) ws.emplace(*config.workspace);
  fs::path model_path;
  if (!opt.model_path.empty()) {
    model_path = opt.model_path;
  } else if (ws) {
    model_path = ws->root() / "models" / "extractor.json";
    if (!fs::exists(model_path)) model_path = ws->final_model_path();
  }
  if (model_path.empty() || !fs::exists(model_path)) {
    throw rxnie::Error(ErrorCode::kUntrainedRole,
                       "no trained model; run train or bootstrap run first");
  }
  rxnie::ExtractorModel model = rxnie::load_model(model_path);
  std::vector<rxnie::Document> docs = rxnie::load_corpus(required_path(opt.in_path, {}, "input"));
  std::optional<rxnie::ProductLists> gold_products;
  if (!opt.gold_path.empty()) {
    gold_products = rxnie::products_of(rxnie::load_reactions(required_path(opt.gold_path, {}, "gold")));
  }
  rxnie::Gazetteer gazetteer = ws ? ws->gazetteer() : rxnie::Gazetteer::builtin();
  std::vector<rxnie::AnnotatedDocument> out;
  for (const rxnie::Document &doc : docs) {
    rxnie::MaskedText m = rxnie::mask_document(doc, gazetteer);
    rxnie::AnnotatedDocument a;
    a.doc_id = doc.id;
    if (gold_products) {
      auto it = gold_products->find(doc.id);
      a.reactions = rxnie::extract_for_products(
          model, m, it == gold_products->end() ? std::vector<std::string>{} : it->second);
    } else {
      a.reactions = rxnie::extract_all(model, m);
    }
    out.push_back(std::move(a));
  }
  if (opt.out_path.empty()) throw rxnie::Error(ErrorCode::kUsage, "extract needs --out");
  rxnie::write_file_atomic(opt.out_path, rxnie::serialize_reactions(out));
  std::size_t reactions = 0;
  for (const auto &a : out) reactions += a.reactions.size();
  print_json({{"documents", out.size()}, {"reactions", reactions}, {"out", opt.out_path}});
}

void emit_report(const Options &opt, const rxnie::EvalReport &report) {
  std::string body = rxnie::serialize_report_json(report);
  if (!opt.out_path.empty()) rxnie::write_file_atomic(opt.out_path, body);
  if (opt.table) {
    std::cout << rxnie::render_report_table(report);
  } else {
    std::cout << body;
  }
}

void cmd_eval_products(const Options &opt) {
  resolve_config(opt);
  auto preds = rxnie::load_reactions(required_path(opt.pred_path, {}, "prediction"));
  auto gold = rxnie::load_reactions(required_path(opt.gold_path, {}, "gold"));
  emit_report(opt, rxnie::evaluate_products(rxnie::products_of(preds), rxnie::products_of(gold)));
}

void cmd_eval_roles(const Options &opt) {
  resolve_config(opt);
  rxnie::Conditioning conditioning = rxnie::parse_conditioning(opt.conditioning);
  auto preds = rxnie::load_reactions(required_path(opt.pred_path, {}, "prediction"));
  auto gold = rxnie::load_reactions(required_path(opt.gold_path, {}, "gold"));
  emit_report(opt, rxnie::evaluate_roles(rxnie::reactions_of(preds), rxnie::reactions_of(gold),
                                         conditioning));
}

void cmd_report(const Options &opt) {
  rxnie::AppConfig config = resolve_config(opt);
  rxnie::Workspace ws = workspace_of(config);
  std::string body = rxnie::render_iteration_report(ws, opt.iteration);
  rxnie::WorkspaceLock lock(ws.root());
  rxnie::write_file_atomic(ws.report_path(opt.iteration), body);
  std::cout << body;
}

// Registers a numeric override flag that feeds the config parser.
void add_override(CLI::App *cmd, Options &opt, const std::string &flag, const std::string &key,
                  const std::string &help) {
  cmd->add_option_function<std::string>(
         flag, [&opt, key](const std::string &v) { opt.overrides.emplace_back(key, v); }, help)
      ->type_name("VALUE");
}

void add_training_overrides(CLI::App *cmd, Options &opt) {
  add_override(cmd, opt, "--epochs", "epochs", "SGD epochs per role");
  add_override(cmd, opt, "--learning-rate", "learning_rate", "SGD step size");
  add_override(cmd, opt, "--model-seed", "model_seed", "seed for SGD example order");
  add_override(cmd, opt, "--threshold", "threshold", "answer score threshold in [0, 1]");
}

}  // namespace

int main(int argc, char **argv) {
  Options opt;
  CLI::App app{"Weakly supervised chemical reaction extraction"};
  app.name("rxnie");
  app.require_subcommand(1);
  app.add_option("--config", opt.config_path, "flat key = value config file")->check(CLI::ExistingFile);
  app.add_option("--workspace", opt.workspace, "workspace directory");

  std::function<void()> action;
  auto bind = [&action](CLI::App *cmd, void (*fn)(const Options &), Options &o) {
    cmd->callback([&action, fn, &o] { action = [fn, &o] { fn(o); }; });
  };

  CLI::App *ingest = app.add_subcommand("ingest", "copy a corpus into the workspace");
  ingest->add_option("--corpus", opt.corpus, "corpus JSONL ({id, text, source})");
  ingest->add_option("--gazetteer", opt.gazetteer, "chemical name list replacing the built-in one");
  bind(ingest, cmd_ingest, opt);

  CLI::App *seed = app.add_subcommand("seed-label", "install seed patterns and label the corpus");
  seed->add_option("--seeds", opt.seeds, "pattern file (default: built-in seeds)");
  bind(seed, cmd_seed_label, opt);

  CLI::App *distant = app.add_subcommand("distant", "knowledge-aware data from structured records");
  distant->require_subcommand(1);
  CLI::App *distant_build = distant->add_subcommand("build", "filter patent records into QA examples");
  distant_build->add_option("--patents", opt.patents, "patent record JSONL");
  bind(distant_build, cmd_distant_build, opt);

  CLI::App *bootstrap = app.add_subcommand("bootstrap", "iterative pattern enrichment");
  bootstrap->require_subcommand(1);
  CLI::App *run = bootstrap->add_subcommand("run", "run iterations until the target count");
  run->add_flag("--auto", opt.auto_mode, "decide candidates automatically");
  add_override(run, opt, "--iterations", "iterations", "target iteration count");
  add_override(run, opt, "--min-freq", "min_freq", "minimum candidate frequency");
  add_override(run, opt, "--top-k", "top_k_per_role", "queued candidates per role");
  add_override(run, opt, "--auto-accept-precision", "auto_accept_precision",
               "minimum precision proxy for automatic acceptance");
  add_override(run, opt, "--negative-ratio", "negative_ratio", "negatives per positive");
  add_override(run, opt, "--seed", "seed", "negative sampling seed");
  add_training_overrides(run, opt);
  bind(run, cmd_bootstrap_run, opt);

  CLI::App *review = app.add_subcommand("review", "candidate review");
  review->require_subcommand(1);
  CLI::App *serve = review->add_subcommand("serve", "serve the review API");
  serve->add_option("--port", opt.port, "TCP port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", opt.host, "bind address");
  serve->add_option("--static", opt.static_dir, "directory with the review console bundle");
  bind(serve, cmd_review_serve, opt);
  CLI::App *finalize = review->add_subcommand("finalize", "merge the decisions of an iteration");
  finalize->add_option("--iteration", opt.iteration, "iteration number")->required();
  bind(finalize, cmd_review_finalize, opt);
  CLI::App *decide = review->add_subcommand("decide", "record one decision");
  decide->add_option("--candidate", opt.candidate, "candidate id")->required();
  decide->add_option("--verdict", opt.verdict, "accept or reject")->required();
  bind(decide, cmd_review_decide, opt);

  CLI::App *train = app.add_subcommand("train", "train the extractor on QA datasets");
  train->add_option("--dataset", opt.datasets, "QA JSONL, repeatable")->required();
  train->add_option("--out", opt.out_path, "model path (default: <workspace>/models/extractor.json)");
  add_training_overrides(train, opt);
  bind(train, cmd_train, opt);

  CLI::App *extract = app.add_subcommand("extract", "two-step extraction over a corpus");
  extract->add_option("--in", opt.in_path, "corpus JSONL")->required();
  extract->add_option("--out", opt.out_path, "predictions JSONL")->required();
  extract->add_option("--model", opt.model_path, "model file (default: workspace model)");
  extract->add_option("--gold", opt.gold_path, "condition roles on the products of this gold file");
  bind(extract, cmd_extract, opt);

  CLI::App *eval = app.add_subcommand("eval", "precision / recall / F1");
  eval->require_subcommand(1);
  for (auto [name, fn] : {std::pair{"products", cmd_eval_products}, std::pair{"roles", cmd_eval_roles}}) {
    CLI::App *sub = eval->add_subcommand(name, std::string("evaluate ") + name);
    sub->add_option("--pred", opt.pred_path, "predictions JSONL")->required();
    sub->add_option("--gold", opt.gold_path, "gold JSONL")->required();
    sub->add_option("--out", opt.out_path, "also write the JSON report here");
    sub->add_flag("--table", opt.table, "print a text table instead of JSON");
    if (std::string_view(name) == "roles") {
      sub->add_option("--conditioning", opt.conditioning, "gold or predicted")
          ->check(CLI::IsMember({"gold", "gold_products", "predicted"}));
    }
    bind(sub, fn, opt);
  }

  CLI::App *report = app.add_subcommand("report", "summarize an iteration");
  report->add_option("--iteration", opt.iteration, "iteration number")->required();
  bind(report, cmd_report, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    print_error("Usage", e.what());
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const rxnie::Error &e) {
    print_error(rxnie::error_code_name(e.code()), e.detail());
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    print_error("Internal", e.what());
    return 3;
  }
}
