// Copyright 2026 The EviGraph Authors.
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

// Command-line front end. Machine-readable output goes to stdout, everything
// else to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evigraph/config.h"
#include "evigraph/errors.h"
#include "evigraph/evaluation.h"
#include "evigraph/graph.h"
#include "evigraph/graph_distance.h"
#include "evigraph/json_io.h"
#include "evigraph/model.h"
#include "evigraph/relevance.h"
#include "evigraph/retrieval.h"
#include "evigraph/synth.h"
#include "evigraph/training.h"

namespace fs = std::filesystem;
using namespace evigraph;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string preset = "paper";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
};

struct AblationFlags {
  bool no_reorder = false;
  bool no_graph = false;
  bool no_both = false;
  bool tied = false;
  bool untied = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path,
                  "config file (key=value or JSON); defaults to $EVIGRAPH_CONFIG");
  cmd->add_option("--preset", o.preset, "base hyperparameters")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--set", o.overrides, "override one config key, key=value");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--jobs", o.jobs, "worker threads for per-instance stages")
      ->check(CLI::PositiveNumber);
}

void add_ablation(CLI::App* cmd, AblationFlags& f) {
  cmd->add_flag("--no-reorder", f.no_reorder, "keep evidence in document order");
  cmd->add_flag("--no-graph", f.no_graph, "classify from the encoder only");
  cmd->add_flag("--no-both", f.no_both, "--no-reorder and --no-graph together");
  cmd->add_flag("--tied-gcn", f.tied, "share GCN weights between claim and evidence graphs");
  cmd->add_flag("--untied-gcn", f.untied, "separate GCN weights per graph");
}

Config resolve_config(const CommonOptions& o) {
  Config c = o.preset == "desk" ? desk_preset() : Config{};
  std::string path = o.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("EVIGRAPH_CONFIG"); env != nullptr) path = env;
  }
  if (!path.empty()) apply_config_file(c, path);
  for (const std::string& kv : o.overrides) apply_config_text(c, kv);
  if (o.seed) c.seed = *o.seed;
  return c;
}

void apply_ablation(Config& c, const AblationFlags& f) {
  if (f.tied && f.untied) throw ValidationError("tied_gcn", "--tied-gcn and --untied-gcn conflict");
  if (f.tied) c.tied_gcn = true;
  if (f.untied) c.tied_gcn = false;
  if (f.no_reorder || f.no_both) c.reorder = false;
  if (f.no_graph || f.no_both) {
    c.use_graph = false;
    c.ablation_mode = true;
  }
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_jsonl(const std::vector<Json>& rows) {
  for (const Json& j : rows) std::cout << j.dump() << '\n';
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

int cmd_build_graph(const std::string& input) {
  const EvidenceSet es = parse_srl_document(read_text_file(input));
  print_json({{"claim", graph_to_json(build_graph(es, GraphOrigin::kClaim))},
              {"evidence", graph_to_json(build_graph(es, GraphOrigin::kEvidence))}});
  return 0;
}

int cmd_sort(const std::string& input, const Config& c) {
  const EvidenceSet es = parse_srl_document(read_text_file(input));
  const Graph g = build_graph(es, GraphOrigin::kEvidence);
  const SortedOrder order = c.reorder ? sort_evidence(es, g) : SortedOrder{{}, document_order(es)};
  const DirectedGraph dag = make_acyclic(orient_graph(g));
  Json relations = Json::array();
  for (const auto& [u, v] : dag.relations) relations.push_back({u, v});
  print_json({{"sentences", order.sentences}, {"nodes", order.nodes}, {"relations", relations}});
  return 0;
}

std::vector<Instance> sorted_by_id(std::vector<Instance> v) {
  std::sort(v.begin(), v.end(),
            [](const Instance& a, const Instance& b) { return a.instance_id < b.instance_id; });
  return v;
}

int cmd_retrieve(const std::string& corpus_path, const std::string& dataset_path,
                 const Config& c) {
  const std::vector<Document> corpus = load_corpus(corpus_path);
  std::vector<Json> rows;
  for (const Instance& inst : sorted_by_id(load_dataset(dataset_path))) {
    std::vector<std::string> warnings;
    Json docs = Json::array();
    for (const ScoredDocument& d : retrieve_documents(inst.claim, corpus, c.top_docs, &warnings)) {
      docs.push_back({{"doc_id", d.doc_id}, {"score", d.score}});
    }
    for (const std::string& w : warnings) warn(inst.instance_id + ": " + w);
    rows.push_back({{"instance_id", inst.instance_id}, {"documents", std::move(docs)}});
  }
  print_jsonl(rows);
  return 0;
}

struct ScorerFlags {
  std::string kind = "lexical";
  std::string train_path;
  ScorerTrainingOptions options;
};

int cmd_select(const std::string& corpus_path, const std::string& dataset_path, const Config& c,
               const ScorerFlags& flags) {
  const std::vector<Document> corpus = load_corpus(corpus_path);
  std::unique_ptr<EvidenceScorer> owned;
  if (flags.kind == "trained") {
    if (flags.train_path.empty()) throw Error("--scorer trained needs --scorer-train");
    const std::vector<Instance> train = load_dataset(flags.train_path);
    ScorerTrainingLog log;
    owned = std::make_unique<TrainedScorer>(train_scorer(train, corpus, c, flags.options, &log));
    warn("scorer trained on " + std::to_string(log.positives) + " gold and " +
         std::to_string(log.negatives) + " sampled sentences");
    if (log.missing > 0) warn(std::to_string(log.missing) + " gold sentences not in the corpus");
  } else {
    owned = std::make_unique<LexicalScorer>();
  }
  const EvidenceScorer& scorer = *owned;
  std::vector<Json> rows;
  for (const Instance& inst : sorted_by_id(load_dataset(dataset_path))) {
    std::vector<std::string> warnings;
    const std::vector<ScoredDocument> docs =
        retrieve_documents(inst.claim, corpus, c.top_docs, &warnings);
    for (const std::string& w : warnings) warn(inst.instance_id + ": " + w);
    Json evidence = Json::array();
    for (const ScoredSentence& s : select_evidence(inst.claim, resolve_documents(corpus, docs),
                                                   c.top_sentences, scorer)) {
      evidence.push_back(
          {{"doc_id", s.doc_id}, {"sentence_index", s.sentence_index}, {"score", s.score}});
    }
    rows.push_back({{"instance_id", inst.instance_id}, {"evidence", std::move(evidence)}});
  }
  print_jsonl(rows);
  return 0;
}

EpochCallback progress() {
  return [](const EpochRecord& e) {
    std::fprintf(stderr, "stage %zu epoch %zu loss %.6f accuracy %.4f\n", e.stage, e.epoch + 1,
                 e.loss, e.accuracy);
  };
}

int cmd_train(const std::string& train_path, const std::string& srl_path,
              const std::string& out_path, const Config& c, bool quiet) {
  const std::vector<Instance> data = load_dataset(train_path);
  const SrlIndex srl = index_srl(load_srl_bundle(srl_path));
  TrainResult r = train(data, srl, c, quiet ? EpochCallback{} : progress());
  if (r.log.skipped > 0) warn(std::to_string(r.log.skipped) + " instances had no SRL record");
  if (r.log.warnings > 0) warn(std::to_string(r.log.warnings) + " preparation warnings");
  write_text_file(out_path, serialize_checkpoint(r.model, r.log));
  Json summary = {{"checkpoint", out_path},
                  {"instances", data.size() - r.log.skipped},
                  {"skipped", r.log.skipped},
                  {"epochs", r.log.epochs.size()}};
  if (!r.log.epochs.empty()) summary["final_train_accuracy"] = r.log.epochs.back().accuracy;
  print_json(summary);
  return 0;
}

int cmd_predict(const std::string& ckpt_path, const std::string& dataset_path,
                const std::string& srl_path, const std::string& out_path, std::size_t jobs) {
  LoadedCheckpoint ckpt = load_checkpoint(ckpt_path);
  const std::vector<Instance> data = load_dataset(dataset_path);
  SrlIndex srl;
  if (!srl_path.empty()) srl = index_srl(load_srl_bundle(srl_path));
  std::size_t missing = 0;
  for (const Instance& inst : data) missing += srl.count(inst.instance_id) == 0;
  if (missing > 0) warn(std::to_string(missing) + " instances predicted from the claim alone");
  const std::vector<Prediction> preds = predict_all(data, srl, ckpt.model, jobs);
  const std::string text = format_predictions(preds);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
  return 0;
}

int cmd_evaluate(const std::string& preds_path, const std::string& gold_path, std::size_t k) {
  const std::vector<Prediction> preds = load_predictions(preds_path);
  const std::vector<Instance> gold = load_dataset(gold_path);
  const EvalReport report = evaluate(preds, gold, k);
  print_json(report.to_json());
  std::cerr << report.table();
  return 0;
}

int cmd_synth(const SynthOptions& o, const std::string& out_dir) {
  const SynthData d = generate_synthetic(o);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_text_file(dir / "corpus.jsonl", format_corpus(d.corpus));
  write_text_file(dir / "train.jsonl", format_dataset(d.train));
  write_text_file(dir / "dev.jsonl", format_dataset(d.dev));
  write_text_file(dir / "train.srl.jsonl", format_srl_bundle(d.train_srl));
  write_text_file(dir / "dev.srl.jsonl", format_srl_bundle(d.dev_srl));
  print_json({{"directory", out_dir},
              {"documents", d.corpus.size()},
              {"train", d.train.size()},
              {"dev", d.dev.size()},
              {"seed", o.seed}});
  return 0;
}

struct Variant {
  const char* name;
  bool reorder;
  bool graph;
};

int cmd_ablate(const std::string& train_path, const std::string& train_srl,
               const std::string& dev_path, const std::string& dev_srl, const Config& base,
               const std::vector<std::uint64_t>& seeds, std::size_t jobs) {
  const std::vector<Instance> train_data = load_dataset(train_path);
  const std::vector<Instance> dev_data = load_dataset(dev_path);
  const SrlIndex train_index = index_srl(load_srl_bundle(train_srl));
  const SrlIndex dev_index = index_srl(load_srl_bundle(dev_srl));
  const Variant variants[] = {{"full", true, true},
                              {"no-reorder", false, true},
                              {"no-graph", true, false},
                              {"no-both", false, false}};
  Json rows = Json::array();
  std::string table = "variant       train_acc  dev_acc\n";
  for (const Variant& v : variants) {
    Config c = base;
    c.reorder = v.reorder;
    c.use_graph = v.graph;
    c.ablation_mode = !v.graph;
    double train_sum = 0.0, dev_sum = 0.0;
    Json per_seed = Json::array();
    for (std::uint64_t seed : seeds) {
      c.seed = seed;
      std::fprintf(stderr, "training %s seed %llu\n", v.name,
                   static_cast<unsigned long long>(seed));
      TrainResult r = train(train_data, train_index, c);
      const double tr = label_accuracy(predict_all(train_data, train_index, r.model, jobs),
                                       train_data);
      const double dv = label_accuracy(predict_all(dev_data, dev_index, r.model, jobs), dev_data);
      train_sum += tr;
      dev_sum += dv;
      per_seed.push_back({{"seed", seed}, {"train_accuracy", tr}, {"dev_accuracy", dv}});
    }
    const double n = static_cast<double>(seeds.size());
    rows.push_back({{"variant", v.name},
                    {"mean_train_accuracy", train_sum / n},
                    {"mean_dev_accuracy", dev_sum / n},
                    {"runs", std::move(per_seed)}});
    char line[96];
    std::snprintf(line, sizeof line, "%-12s  %9.4f  %7.4f\n", v.name, train_sum / n, dev_sum / n);
    table += line;
  }
  print_json({{"variants", rows}});
  std::cerr << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based claim verification over SRL evidence graphs", "evigraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "evigraph 1.0.0");

  CommonOptions common;
  AblationFlags ablation;

  std::string input;
  auto* build = app.add_subcommand("build-graph", "print claim and evidence graphs for an SRL file");
  build->add_option("--input", input, "SRL JSON document")->required();
  add_common(build, common);

  auto* sort = app.add_subcommand("sort", "print the graph-sorted evidence order");
  sort->add_option("--input", input, "SRL JSON document")->required();
  add_common(sort, common);
  add_ablation(sort, ablation);

  std::string corpus, dataset;
  std::optional<std::size_t> top_docs, top_sentences;
  auto* retrieve = app.add_subcommand("retrieve", "rank corpus documents for each claim");
  auto* select = app.add_subcommand("select", "select evidence sentences for each claim");
  for (CLI::App* cmd : {retrieve, select}) {
    cmd->add_option("--corpus", corpus, "corpus JSONL")->required();
    cmd->add_option("--dataset", dataset, "dataset JSONL")->required();
    cmd->add_option("--top-docs", top_docs, "documents kept per claim");
    add_common(cmd, common);
  }
  select->add_option("--top-sentences", top_sentences, "sentences kept per claim");
  ScorerFlags scorer_flags;
  select->add_option("--scorer", scorer_flags.kind, "lexical or trained")
      ->check(CLI::IsMember({"lexical", "trained"}));
  select->add_option("--scorer-train", scorer_flags.train_path,
                     "dataset JSONL whose gold evidence trains the scorer");
  select->add_option("--scorer-epochs", scorer_flags.options.epochs, "scorer training epochs");

  std::string srl, out, checkpoint;
  bool quiet = false;
  auto* train_cmd = app.add_subcommand("train", "train a verifier and write a checkpoint");
  train_cmd->add_option("--train", dataset, "training dataset JSONL")->required();
  train_cmd->add_option("--srl", srl, "SRL bundle JSONL for the training set")->required();
  train_cmd->add_option("--out", out, "checkpoint path")->required();
  train_cmd->add_flag("--quiet", quiet, "no per-epoch progress");
  add_common(train_cmd, common);
  add_ablation(train_cmd, ablation);

  auto* predict_cmd = app.add_subcommand("predict", "label a dataset with a checkpoint");
  predict_cmd->add_option("--checkpoint", checkpoint, "checkpoint JSON")->required();
  predict_cmd->add_option("--dataset", dataset, "dataset JSONL")->required();
  predict_cmd->add_option("--srl", srl, "SRL bundle JSONL");
  predict_cmd->add_option("--out", out, "predictions JSONL (default stdout)");
  add_common(predict_cmd, common);

  std::string preds, gold;
  std::size_t k_ev = 5;
  auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against gold labels");
  eval_cmd->add_option("--preds", preds, "predictions JSONL")->required();
  eval_cmd->add_option("--gold", gold, "gold dataset JSONL")->required();
  eval_cmd->add_option("--k", k_ev, "evidence sentences scored per prediction")
      ->check(CLI::PositiveNumber);
  add_common(eval_cmd, common);

  SynthOptions synth_opts;
  std::string out_dir = "synth";
  auto* synth = app.add_subcommand("synth", "generate the synthetic dataset");
  synth->add_option("--n", synth_opts.train, "training instances");
  synth->add_option("--dev", synth_opts.dev, "dev instances");
  synth->add_option("--out", out_dir, "output directory");
  add_common(synth, common);

  std::string dev, dev_srl;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  auto* ablate = app.add_subcommand("ablate", "train the four ablation variants and compare");
  ablate->add_option("--train", dataset, "training dataset JSONL")->required();
  ablate->add_option("--srl", srl, "training SRL bundle")->required();
  ablate->add_option("--dev", dev, "dev dataset JSONL")->required();
  ablate->add_option("--dev-srl", dev_srl, "dev SRL bundle")->required();
  ablate->add_option("--seeds", seeds, "training seeds")->delimiter(',');
  add_common(ablate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    CLI::App* failing = &app;
    for (CLI::App* sub : app.get_subcommands()) failing = sub;
    std::cerr << failing->help();
    return 2;
  }

  try {
    Config config = resolve_config(common);
    apply_ablation(config, ablation);
    if (top_docs) config.top_docs = *top_docs;
    if (top_sentences) config.top_sentences = *top_sentences;

    if (build->parsed()) return cmd_build_graph(input);
    if (sort->parsed()) return cmd_sort(input, config);
    if (retrieve->parsed()) return cmd_retrieve(corpus, dataset, config);
    if (select->parsed()) return cmd_select(corpus, dataset, config, scorer_flags);
    if (train_cmd->parsed()) {
      config.validate();
      return cmd_train(dataset, srl, out, config, quiet);
    }
    if (predict_cmd->parsed()) return cmd_predict(checkpoint, dataset, srl, out, common.jobs);
    if (eval_cmd->parsed()) return cmd_evaluate(preds, gold, k_ev);
    if (synth->parsed()) {
      synth_opts.seed = common.seed.value_or(synth_opts.seed);
      synth_opts.top_docs = config.top_docs;
      synth_opts.top_sentences = config.top_sentences;
      return cmd_synth(synth_opts, out_dir);
    }
    if (ablate->parsed()) {
      config.validate();
      return cmd_ablate(dataset, srl, dev, dev_srl, config, seeds, common.jobs);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
