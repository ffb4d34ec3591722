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


#include "evigraph/relevance.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "evigraph/encoder.h"
#include "evigraph/optimizer.h"

namespace evigraph {
namespace {

EvidenceSet pair_input(std::string_view claim, std::string_view sentence) {
  EvidenceSet es;
  es.claim.sentence_id = "claim";
  es.claim.tokens = tokenize(claim);
  Sentence s;
  s.sentence_id = "candidate";
  s.tokens = tokenize(sentence);
  es.evidence.push_back(std::move(s));
  return es;
}

struct Pair {
  const std::string* claim;
  const std::string* sentence;
  std::size_t label;
};

}  // namespace

TrainedScorer::TrainedScorer(const Config& config) : config_(config) {
  config_.validate_shapes();
  add_encoder_params(params_, config_);
  params_.add("relevance.W", Tensor::matrix(config_.encoder_dim, 2));
  params_.add("relevance.b", Tensor::matrix(1, 2));
}

void TrainedScorer::initialize(Rng& rng) { init_uniform(params_, rng, config_.init_scale); }

Var TrainedScorer::logits(Tape& tape, std::string_view claim, std::string_view sentence) const {
  const SequenceLayout layout = layout_sequence(pair_input(claim, sentence), {"candidate"},
                                                config_.vocab_size, config_.max_seq_len);
  const EncodedSequence enc = encode(tape, params_, config_, layout.ids, layout.segments);
  return ops::linear(enc.cls, tape.param(params_.get("relevance.W")),
                     tape.param(params_.get("relevance.b")));
}

double TrainedScorer::score(std::string_view claim, std::string_view sentence) const {
  if (tokenize_words(claim).empty() || tokenize_words(sentence).empty()) return 0.0;
  Tape tape;
  const Tensor z = logits(tape, claim, sentence).value();
  // softmax over two classes
  return 1.0 / (1.0 + std::exp(z[0] - z[1]));
}

TrainedScorer train_scorer(std::span<const Instance> dataset, std::span<const Document> corpus,
                           const Config& config, const ScorerTrainingOptions& options,
                           ScorerTrainingLog* log) {
  ScorerTrainingLog local;
  ScorerTrainingLog& out = log != nullptr ? *log : local;
  out = ScorerTrainingLog{};

  Rng rng(config.seed);
  TrainedScorer scorer(config);
  scorer.initialize(rng);

  std::map<std::string_view, const Document*> by_id;
  std::vector<EvidenceKey> all_sentences;
  for (const Document& d : corpus) {
    by_id.emplace(d.doc_id, &d);
    for (std::size_t i = 0; i < d.sentences.size(); ++i) all_sentences.emplace_back(d.doc_id, i);
  }
  auto text_of = [&](const EvidenceKey& k) -> const std::string* {
    auto it = by_id.find(k.first);
    if (it == by_id.end() || k.second >= it->second->sentences.size()) return nullptr;
    return &it->second->sentences[k.second];
  };

  std::vector<Pair> pairs;
  for (const Instance& inst : dataset) {
    if (tokenize_words(inst.claim).empty()) continue;
    std::set<EvidenceKey> gold;
    for (const EvidenceGroup& g : inst.evidence_groups) gold.insert(g.begin(), g.end());
    for (const EvidenceKey& k : gold) {
      const std::string* text = text_of(k);
      if (text == nullptr) {
        ++out.missing;
        continue;
      }
      if (tokenize_words(*text).empty()) continue;
      pairs.push_back({&inst.claim, text, 1});
      ++out.positives;
      if (all_sentences.size() <= gold.size()) continue;
      for (std::size_t n = 0; n < options.negatives; ++n) {
        EvidenceKey neg;
        do {
          neg = all_sentences[rng.index(all_sentences.size())];
        } while (gold.count(neg) != 0);
        const std::string* neg_text = text_of(neg);
        if (tokenize_words(*neg_text).empty()) continue;
        pairs.push_back({&inst.claim, neg_text, 0});
        ++out.negatives;
      }
    }
  }

  AdamWOptions opts;
  opts.learning_rate = config.learning_rate;
  opts.weight_decay = config.weight_decay;
  AdamW optimizer(opts);
  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t e = 0; e < options.epochs; ++e) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const double weight = 1.0 / static_cast<double>(end - start);
      scorer.params().zero_grad();
      for (std::size_t b = start; b < end; ++b) {
        const Pair& p = pairs[order[b]];
        Tape tape;
        Var loss = ops::cross_entropy(scorer.logits(tape, *p.claim, *p.sentence), p.label);
        loss_sum += loss.value()[0];
        tape.backward(ops::scale(loss, weight));
      }
      optimizer.step(scorer.params());
    }
    out.epoch_loss.push_back(pairs.empty() ? 0.0 : loss_sum / static_cast<double>(pairs.size()));
  }
  scorer.params().zero_grad();
  return scorer;
}

}  // namespace evigraph
