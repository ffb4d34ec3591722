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

#include "evigraph/training.h"

#include <algorithm>
#include <thread>

#include "evigraph/errors.h"
#include "evigraph/optimizer.h"

namespace evigraph {
namespace {

struct Example {
  const Instance* instance;
  PreparedInput input;
  // Frozen encoder outputs, filled before stage 2.
  Tensor states;
  Tensor cls;
};

std::size_t argmax(const Tensor& logits) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (logits[i] > logits[best]) best = i;
  }
  return best;
}

// One pass over the examples in a shuffled order. loss_fn builds the logits
// for one example on the given tape.
EpochRecord run_epoch(std::vector<Example>& examples, ClaimVerifier& model, AdamW& optimizer,
                      Rng& rng, std::size_t batch_size,
                      const std::function<Var(Tape&, Example&)>& logits_fn) {
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);

  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    const double weight = 1.0 / static_cast<double>(end - start);
    model.params().zero_grad();
    for (std::size_t b = start; b < end; ++b) {
      Example& ex = examples[order[b]];
      Tape tape;
      Var logits = logits_fn(tape, ex);
      const std::size_t gold = label_index(ex.instance->label);
      Var loss = ops::cross_entropy(logits, gold);
      loss_sum += loss.value()[0];
      if (argmax(logits.value()) == gold) ++correct;
      tape.backward(ops::scale(loss, weight));
    }
    optimizer.step(model.params());
  }
  EpochRecord rec;
  const double n = static_cast<double>(std::max<std::size_t>(1, examples.size()));
  rec.loss = loss_sum / n;
  rec.accuracy = static_cast<double>(correct) / n;
  return rec;
}

}  // namespace

SrlIndex index_srl(std::vector<SrlRecord> records) {
  SrlIndex out;
  for (SrlRecord& r : records) {
    if (!out.emplace(r.instance_id, std::move(r.evidence)).second) {
      throw ValidationError("instance_id", "duplicate SRL record for '" + r.instance_id + "'");
    }
  }
  return out;
}

EvidenceSet claim_only_evidence(const Instance& instance) {
  EvidenceSet es;
  es.claim.sentence_id = "claim";
  es.claim.source_doc = "";
  es.claim.tokens = tokenize(instance.claim);
  return es;
}

TrainResult train(std::span<const Instance> dataset, const SrlIndex& srl, const Config& config,
                  const EpochCallback& on_epoch) {
  config.validate_shapes();
  TrainResult result{ClaimVerifier(config), TrainingLog{}};
  ClaimVerifier& model = result.model;
  TrainingLog& log = result.log;
  log.seed = config.seed;

  Rng rng(config.seed);
  model.initialize(rng);

  std::vector<Example> examples;
  for (const Instance& inst : dataset) {
    auto it = srl.find(inst.instance_id);
    if (it == srl.end()) {
      ++log.skipped;
      continue;
    }
    Example ex{&inst, model.prepare(it->second), Tensor(), Tensor()};
    log.warnings += ex.input.warnings.size();
    examples.push_back(std::move(ex));
  }

  AdamWOptions opts;
  opts.learning_rate = config.learning_rate;
  opts.weight_decay = config.weight_decay;

  model.set_encoder_trainable(true);
  model.set_graph_trainable(false);
  {
    AdamW optimizer(opts);
    for (std::size_t e = 0; e < config.stage1_epochs; ++e) {
      EpochRecord rec = run_epoch(examples, model, optimizer, rng, config.batch_size,
                                  [&](Tape& tape, Example& ex) {
                                    EncodedSequence enc = model.encode(tape, ex.input);
                                    return model.cls_logits(tape, enc.cls);
                                  });
      rec.stage = 1;
      rec.epoch = e;
      log.epochs.push_back(rec);
      if (on_epoch) on_epoch(rec);
    }
  }

  if (config.use_graph && config.stage2_epochs > 0) {
    model.set_encoder_trainable(false);
    model.set_graph_trainable(true);
    for (Example& ex : examples) {
      Tape tape;
      EncodedSequence enc = model.encode(tape, ex.input);
      ex.states = enc.states.value();
      ex.cls = enc.cls.value();
    }
    AdamW optimizer(opts);
    for (std::size_t e = 0; e < config.stage2_epochs; ++e) {
      EpochRecord rec = run_epoch(examples, model, optimizer, rng, config.batch_size,
                                  [&](Tape& tape, Example& ex) {
                                    return model.graph_logits(tape, ex.input,
                                                              tape.constant(ex.states),
                                                              tape.constant(ex.cls));
                                  });
      rec.stage = 2;
      rec.epoch = e;
      log.epochs.push_back(rec);
      if (on_epoch) on_epoch(rec);
    }
  }
  for (Parameter* p : model.params().all()) {
    p->trainable = true;
    p->zero_grad();
  }
  return result;
}

Prediction predict(const Instance& instance, const EvidenceSet& evidence, ClaimVerifier& model) {
  Prediction p;
  p.instance_id = instance.instance_id;
  p.probabilities = model.probabilities(model.prepare(evidence));
  p.label = argmax_label(p.probabilities);
  for (const Sentence& s : evidence.evidence) {
    if (p.evidence.size() >= model.config().top_sentences) break;
    if (s.source_index) p.evidence.emplace_back(s.source_doc, *s.source_index);
  }
  return p;
}

std::vector<Prediction> predict_all(std::span<const Instance> dataset, const SrlIndex& srl,
                                    ClaimVerifier& model, std::size_t jobs) {
  std::vector<Prediction> out(dataset.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Instance& inst = dataset[i];
      auto it = srl.find(inst.instance_id);
      if (it != srl.end()) {
        out[i] = predict(inst, it->second, model);
      } else {
        out[i] = predict(inst, claim_only_evidence(inst), model);
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, dataset.size()));
  if (jobs == 1) {
    work(0, dataset.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (dataset.size() + jobs - 1) / jobs;
    for (std::size_t t = 0; t < jobs; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(dataset.size(), b + chunk);
      if (b < e) threads.emplace_back(work, b, e);
    }
    for (std::thread& th : threads) th.join();
  }
  std::stable_sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
    return a.instance_id < b.instance_id;
  });
  return out;
}

double label_accuracy(std::span<const Prediction> predictions, std::span<const Instance> gold) {
  std::map<std::string, Label> truth;
  for (const Instance& g : gold) truth[g.instance_id] = g.label;
  std::size_t correct = 0;
  for (const Prediction& p : predictions) {
    auto it = truth.find(p.instance_id);
    if (it != truth.end() && it->second == p.label) ++correct;
  }
  return gold.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(gold.size());
}

}  // namespace evigraph
