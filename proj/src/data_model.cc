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

#include "evigraph/data_model.h"

#include <cctype>
#include <set>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::string_view piece = text.substr(i, j - i);
    while (!piece.empty() && is_punct(piece.front())) piece.remove_prefix(1);
    while (!piece.empty() && is_punct(piece.back())) piece.remove_suffix(1);
    if (!piece.empty()) {
      std::string word(piece);
      for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.push_back(std::move(word));
    }
    i = j;
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  for (std::string& w : tokenize_words(text)) {
    out.push_back(Token{std::move(w), out.size()});
  }
  return out;
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kVerb: return "verb";
    case Role::kArgument: return "argument";
    case Role::kLocation: return "location";
    case Role::kTemporal: return "temporal";
    case Role::kOther: return "other";
  }
  return "other";
}

Role role_from_name(std::string_view name) {
  if (name == "verb") return Role::kVerb;
  if (name == "argument") return Role::kArgument;
  if (name == "location") return Role::kLocation;
  if (name == "temporal") return Role::kTemporal;
  return Role::kOther;
}

std::string Sentence::span_text(Span span) const {
  std::string s;
  for (std::size_t i = span.start; i < span.end && i < tokens.size(); ++i) {
    if (i > span.start) s += ' ';
    s += tokens[i].text;
  }
  return s;
}

const Sentence* EvidenceSet::find_evidence(std::string_view sentence_id) const {
  for (const Sentence& s : evidence) {
    if (s.sentence_id == sentence_id) return &s;
  }
  return nullptr;
}

void validate(const Sentence& sentence, std::string_view where) {
  const std::string base(where);
  if (sentence.sentence_id.empty()) throw ValidationError(base + ".sentence_id", "empty");
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& t = sentence.tokens[i];
    const std::string field = base + ".tokens[" + std::to_string(i) + "]";
    if (t.text.empty()) throw ValidationError(field, "empty token text");
    if (t.index != i) throw ValidationError(field, "token indices must be consecutive from 0");
  }
  for (std::size_t k = 0; k < sentence.tuples.size(); ++k) {
    const SrlTuple& tuple = sentence.tuples[k];
    const std::string tfield = base + ".tuples[" + std::to_string(k) + "]";
    if (tuple.sentence_id != sentence.sentence_id) {
      throw ValidationError(tfield + ".sentence_id", "does not match enclosing sentence");
    }
    std::size_t verbs = 0;
    for (std::size_t a = 0; a < tuple.arguments.size(); ++a) {
      const SrlArgument& arg = tuple.arguments[a];
      const std::string afield = tfield + ".arguments[" + std::to_string(a) + "]";
      if (arg.span.start >= arg.span.end || arg.span.end > sentence.tokens.size()) {
        throw ValidationError(afield + ".span", "token_span out of range");
      }
      if (arg.text != sentence.span_text(arg.span)) {
        throw ValidationError(afield + ".text", "text does not equal the joined span tokens");
      }
      if (arg.role == Role::kVerb) ++verbs;
    }
    if (verbs != 1) {
      throw ValidationError(tfield + ".arguments", "expected exactly one verb, found " +
                                                       std::to_string(verbs));
    }
  }
}

void validate(const EvidenceSet& set) {
  validate(set.claim, "claim");
  std::set<std::string> ids{set.claim.sentence_id};
  for (std::size_t i = 0; i < set.evidence.size(); ++i) {
    const std::string where = "evidence[" + std::to_string(i) + "]";
    validate(set.evidence[i], where);
    if (!ids.insert(set.evidence[i].sentence_id).second) {
      throw ValidationError(where + ".sentence_id",
                            "duplicate sentence_id '" + set.evidence[i].sentence_id + "'");
    }
  }
}

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kSupported: return "SUPPORTED";
    case Label::kRefuted: return "REFUTED";
    case Label::kNei: return "NOT ENOUGH INFO";
  }
  return "NOT ENOUGH INFO";
}

Label label_from_name(std::string_view name) {
  if (name == "SUPPORTED" || name == "SUPPORTS") return Label::kSupported;
  if (name == "REFUTED" || name == "REFUTES") return Label::kRefuted;
  if (name == "NOT ENOUGH INFO" || name == "NEI") return Label::kNei;
  throw ValidationError("label", "unknown label '" + std::string(name) + "'");
}

}  // namespace evigraph
