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

#include "evigraph/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += ids[i];
  }
  return s;
}

}  // namespace

bool evidence_correct(std::span<const EvidenceGroup> gold_groups,
                      std::span<const EvidenceKey> predicted) {
  const std::set<EvidenceKey> pred(predicted.begin(), predicted.end());
  for (const EvidenceGroup& group : gold_groups) {
    if (std::all_of(group.begin(), group.end(),
                    [&](const EvidenceKey& k) { return pred.count(k) > 0; })) {
      return true;
    }
  }
  return false;
}

bool instance_correct(Label gold, Label predicted, std::span<const EvidenceGroup> gold_groups,
                      std::span<const EvidenceKey> predicted_evidence) {
  if (gold != predicted) return false;
  return gold == Label::kNei || evidence_correct(gold_groups, predicted_evidence);
}

EvalReport evaluate(std::span<const Prediction> predictions, std::span<const Instance> gold,
                    std::size_t k_ev) {
  std::map<std::string, const Prediction*> by_id;
  std::vector<std::string> duplicates;
  for (const Prediction& p : predictions) {
    if (!by_id.emplace(p.instance_id, &p).second) duplicates.push_back(p.instance_id);
  }
  if (!duplicates.empty()) {
    throw ValidationError("predictions", "duplicate prediction for " + join_ids(duplicates));
  }
  std::vector<std::string> missing;
  std::set<std::string> gold_ids;
  for (const Instance& g : gold) {
    gold_ids.insert(g.instance_id);
    if (!by_id.count(g.instance_id)) missing.push_back(g.instance_id);
  }
  std::vector<std::string> extra;
  for (const auto& [id, p] : by_id) {
    if (!gold_ids.count(id)) extra.push_back(id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "unmatched instance ids;";
    if (!missing.empty()) msg += " no prediction for: " + join_ids(missing) + ";";
    if (!extra.empty()) msg += " not in gold: " + join_ids(extra) + ";";
    throw ValidationError("instance_id", msg);
  }

  EvalReport r;
  r.instances = gold.size();
  for (const Instance& g : gold) {
    const Prediction& p = *by_id.at(g.instance_id);
    const std::span<const EvidenceKey> pred_ev(p.evidence.data(),
                                               std::min(p.evidence.size(), k_ev));
    ++r.confusion[label_index(g.label)][label_index(p.label)];
    if (g.label == p.label) ++r.label_correct;
    if (instance_correct(g.label, p.label, g.evidence_groups, pred_ev)) ++r.fever_correct;
    if (g.label == Label::kNei) continue;

    std::set<EvidenceKey> gold_union;
    for (const EvidenceGroup& grp : g.evidence_groups) gold_union.insert(grp.begin(), grp.end());
    if (gold_union.empty()) ++r.unannotated;
    const std::set<EvidenceKey> pred_set(pred_ev.begin(), pred_ev.end());
    r.evidence_predicted += pred_set.size();
    r.evidence_gold += gold_union.size();
    for (const EvidenceKey& k : pred_set) r.evidence_hits += gold_union.count(k);
  }
  r.label_accuracy = ratio(r.label_correct, r.instances);
  r.fever_score = ratio(r.fever_correct, r.instances);
  r.evidence_precision = ratio(r.evidence_hits, r.evidence_predicted);
  r.evidence_recall = ratio(r.evidence_hits, r.evidence_gold);
  const double pr = r.evidence_precision + r.evidence_recall;
  r.evidence_f1 = pr > 0.0 ? 2.0 * r.evidence_precision * r.evidence_recall / pr : 0.0;
  return r;
}

Json EvalReport::to_json() const {
  Json confusion_json = Json::object();
  for (Label g : kAllLabels) {
    Json row = Json::object();
    for (Label p : kAllLabels) row[std::string(label_name(p))] = confusion[label_index(g)][label_index(p)];
    confusion_json[std::string(label_name(g))] = std::move(row);
  }
  return {{"instances", instances},
          {"label_accuracy", label_accuracy},
          {"fever_score", fever_score},
          {"evidence_precision", evidence_precision},
          {"evidence_recall", evidence_recall},
          {"evidence_f1", evidence_f1},
          {"confusion", std::move(confusion_json)},
          {"unannotated", unannotated}};
}

std::string EvalReport::table() const {
  char buf[256];
  std::string s;
  std::snprintf(buf, sizeof buf, "%-20s %8s\n", "metric", "value");
  s += buf;
  const std::pair<const char*, double> rows[] = {{"label_accuracy", label_accuracy},
                                                 {"fever_score", fever_score},
                                                 {"evidence_precision", evidence_precision},
                                                 {"evidence_recall", evidence_recall},
                                                 {"evidence_f1", evidence_f1}};
  for (const auto& [name, v] : rows) {
    std::snprintf(buf, sizeof buf, "%-20s %8.4f\n", name, v);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "\n%-16s %10s %10s %10s\n", "gold \\ pred", "SUPPORTED",
                "REFUTED", "NEI");
  s += buf;
  const char* names[] = {"SUPPORTED", "REFUTED", "NEI"};
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    std::snprintf(buf, sizeof buf, "%-16s %10zu %10zu %10zu\n", names[g], confusion[g][0],
                  confusion[g][1], confusion[g][2]);
    s += buf;
  }
  return s;
}

}  // namespace evigraph
