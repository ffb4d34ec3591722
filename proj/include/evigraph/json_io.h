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

#ifndef EVIGRAPH_JSON_IO_H_
#define EVIGRAPH_JSON_IO_H_

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evigraph/data_model.h"

namespace evigraph {

using Json = nlohmann::json;

inline constexpr int kSrlSchemaVersion = 1;

// Reads a whole file; throws IoError("file not found: ...") when absent.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Parses JSON text, converting library errors into ParseError with the byte
// offset of the failure.
Json parse_json(std::string_view text);

// Calls fn(value, line_number) for every non-blank line. Malformed lines
// raise ParseError carrying the 1-based line number; errors thrown by fn are
// rethrown with the line number prefixed.
void for_each_jsonl(std::string_view text,
                    const std::function<void(const Json&, std::size_t)>& fn);

// SRL documents (version 1):
//   {version, claim: sentence, evidence: [sentence]}
//   sentence = {sentence_id, source_doc, [source_index], tokens: [string],
//               tuples: [{tuple_id, arguments: [{role, text, span: [s, e]}]}]}
EvidenceSet parse_srl_document(std::string_view json_text);
EvidenceSet srl_from_json(const Json& doc);
Json srl_to_json(const EvidenceSet& set);
std::string serialize_srl_document(const EvidenceSet& set);

// SRL bundle: JSONL, one SRL document per line with an extra instance_id.
struct SrlRecord {
  std::string instance_id;
  EvidenceSet evidence;
};
std::vector<SrlRecord> load_srl_bundle(const std::filesystem::path& path);
std::string format_srl_bundle(std::span<const SrlRecord> records);

// Dataset JSONL: {instance_id, claim, label, evidence_groups: [[[doc, idx]]]}
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);
std::vector<Instance> parse_dataset(std::string_view text);
std::vector<Instance> load_dataset(const std::filesystem::path& path);
std::string format_dataset(std::span<const Instance> instances);
void write_dataset(const std::filesystem::path& path, std::span<const Instance> instances);

// Corpus JSONL: {doc_id, title, sentences: [string]}
std::vector<Document> load_corpus(const std::filesystem::path& path);
std::string format_corpus(std::span<const Document> docs);

// Predictions JSONL:
//   {instance_id, predicted_label, probabilities: [3], predicted_evidence: [[doc, idx]]}
Json prediction_to_json(const Prediction& p);
Prediction prediction_from_json(const Json& j);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);
std::string format_predictions(std::span<const Prediction> predictions);

}  // namespace evigraph

#endif  // EVIGRAPH_JSON_IO_H_
