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

#ifndef EVIGRAPH_DATA_MODEL_H_
#define EVIGRAPH_DATA_MODEL_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evigraph {

struct Token {
  std::string text;
  std::size_t index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Lowercases ASCII letters, splits on whitespace and strips leading and
// trailing punctuation from each piece. Pieces that become empty are dropped.
std::vector<Token> tokenize(std::string_view text);
std::vector<std::string> tokenize_words(std::string_view text);

enum class Role { kVerb, kArgument, kLocation, kTemporal, kOther };

std::string_view role_name(Role role);
// Unknown names map to kOther.
Role role_from_name(std::string_view name);

// Half-open token range [start, end) within a sentence.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct SrlArgument {
  Role role = Role::kOther;
  std::string text;
  Span span;

  friend bool operator==(const SrlArgument&, const SrlArgument&) = default;
};

struct SrlTuple {
  std::string tuple_id;
  std::string sentence_id;
  std::vector<SrlArgument> arguments;

  friend bool operator==(const SrlTuple&, const SrlTuple&) = default;
};

struct Sentence {
  std::string sentence_id;
  std::string source_doc;
  // Position of the sentence inside source_doc, when known.
  std::optional<std::size_t> source_index;
  std::vector<Token> tokens;
  std::vector<SrlTuple> tuples;

  // Tokens [span.start, span.end) joined by single spaces.
  std::string span_text(Span span) const;
  std::string text() const { return span_text({0, tokens.size()}); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct EvidenceSet {
  Sentence claim;
  std::vector<Sentence> evidence;

  const Sentence* find_evidence(std::string_view sentence_id) const;
  friend bool operator==(const EvidenceSet&, const EvidenceSet&) = default;
};

// Throws ValidationError naming the first offending field.
void validate(const Sentence& sentence, std::string_view where);
void validate(const EvidenceSet& set);

enum class Label { kSupported = 0, kRefuted = 1, kNei = 2 };
inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kSupported, Label::kRefuted, Label::kNei};

// "SUPPORTS"/"REFUTES" are accepted as aliases for the shared-task spelling.
std::string_view label_name(Label label);
Label label_from_name(std::string_view name);
inline std::size_t label_index(Label label) { return static_cast<std::size_t>(label); }

// (doc_id, sentence_index)
using EvidenceKey = std::pair<std::string, std::size_t>;
using EvidenceGroup = std::vector<EvidenceKey>;

struct Instance {
  std::string instance_id;
  std::string claim;
  Label label = Label::kNei;
  std::vector<EvidenceGroup> evidence_groups;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Prediction {
  std::string instance_id;
  Label label = Label::kNei;
  std::array<double, kNumLabels> probabilities{};
  std::vector<EvidenceKey> evidence;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::vector<std::string> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

}  // namespace evigraph

#endif  // EVIGRAPH_DATA_MODEL_H_
