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

#include "evigraph/json_io.h"

#include <fstream>
#include <sstream>

#include "evigraph/errors.h"

namespace evigraph {
namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(where + "." + key, "missing field");
  return *it;
}

std::string id_string(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
  throw ValidationError(where, "expected a string or integer id");
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::size_t index_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ValidationError(where, "expected a non-negative integer");
  }
  const long long x = v.get<long long>();
  if (x < 0) throw ValidationError(where, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

Sentence sentence_from_json(const Json& j, const std::string& where) {
  Sentence s;
  s.sentence_id = id_string(field(j, "sentence_id", where), where + ".sentence_id");
  s.source_doc = string_field(j, "source_doc", where);
  if (auto it = j.find("source_index"); it != j.end() && !it->is_null()) {
    s.source_index = index_value(*it, where + ".source_index");
  }
  const Json& tokens = field(j, "tokens", where);
  if (!tokens.is_array()) throw ValidationError(where + ".tokens", "expected an array");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].is_string()) {
      throw ValidationError(where + ".tokens[" + std::to_string(i) + "]", "expected a string");
    }
    s.tokens.push_back(Token{tokens[i].get<std::string>(), i});
  }
  const Json& tuples = field(j, "tuples", where);
  if (!tuples.is_array()) throw ValidationError(where + ".tuples", "expected an array");
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const std::string tw = where + ".tuples[" + std::to_string(k) + "]";
    SrlTuple t;
    t.tuple_id = id_string(field(tuples[k], "tuple_id", tw), tw + ".tuple_id");
    t.sentence_id = s.sentence_id;
    const Json& args = field(tuples[k], "arguments", tw);
    if (!args.is_array()) throw ValidationError(tw + ".arguments", "expected an array");
    for (std::size_t a = 0; a < args.size(); ++a) {
      const std::string aw = tw + ".arguments[" + std::to_string(a) + "]";
      SrlArgument arg;
      arg.role = role_from_name(string_field(args[a], "role", aw));
      arg.text = string_field(args[a], "text", aw);
      const Json& span = field(args[a], "span", aw);
      if (!span.is_array() || span.size() != 2) {
        throw ValidationError(aw + ".span", "expected [start, end]");
      }
      arg.span = Span{index_value(span[0], aw + ".span"), index_value(span[1], aw + ".span")};
      t.arguments.push_back(std::move(arg));
    }
    s.tuples.push_back(std::move(t));
  }
  return s;
}

Json sentence_to_json(const Sentence& s) {
  Json tokens = Json::array();
  for (const Token& t : s.tokens) tokens.push_back(t.text);
  Json tuples = Json::array();
  for (const SrlTuple& t : s.tuples) {
    Json args = Json::array();
    for (const SrlArgument& a : t.arguments) {
      args.push_back({{"role", std::string(role_name(a.role))},
                      {"text", a.text},
                      {"span", {a.span.start, a.span.end}}});
    }
    tuples.push_back({{"tuple_id", t.tuple_id}, {"arguments", std::move(args)}});
  }
  Json j = {{"sentence_id", s.sentence_id},
            {"source_doc", s.source_doc},
            {"tokens", std::move(tokens)},
            {"tuples", std::move(tuples)}};
  if (s.source_index) j["source_index"] = *s.source_index;
  return j;
}

EvidenceKey evidence_key_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string()) {
    throw ValidationError(where, "expected [doc_id, sentence_index]");
  }
  return {j[0].get<std::string>(), index_value(j[1], where)};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                         e.what(),
                     e.byte);
  }
}

void for_each_jsonl(std::string_view text,
                    const std::function<void(const Json&, std::size_t)>& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    const std::size_t line_start = pos;
    pos = eol + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Json value;
    try {
      value = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed JSON: " + e.what(),
                       line_start + (e.byte > 0 ? e.byte - 1 : 0), line_no);
    }
    try {
      fn(value, line_no);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.field(),
                            std::string(e.what()).substr(e.field().size() + 2));
    }
  }
}

EvidenceSet srl_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("document", "expected an object");
  auto v = doc.find("version");
  if (v == doc.end()) throw ValidationError("version", "missing field");
  if (!v->is_number_integer() || v->get<int>() != kSrlSchemaVersion) {
    throw ValidationError("version", "unsupported schema version");
  }
  EvidenceSet set;
  set.claim = sentence_from_json(field(doc, "claim", "document"), "claim");
  const Json& ev = field(doc, "evidence", "document");
  if (!ev.is_array()) throw ValidationError("evidence", "expected an array");
  for (std::size_t i = 0; i < ev.size(); ++i) {
    set.evidence.push_back(sentence_from_json(ev[i], "evidence[" + std::to_string(i) + "]"));
  }
  validate(set);
  return set;
}

EvidenceSet parse_srl_document(std::string_view json_text) {
  return srl_from_json(parse_json(json_text));
}

Json srl_to_json(const EvidenceSet& set) {
  Json evidence = Json::array();
  for (const Sentence& s : set.evidence) evidence.push_back(sentence_to_json(s));
  return {{"version", kSrlSchemaVersion},
          {"claim", sentence_to_json(set.claim)},
          {"evidence", std::move(evidence)}};
}

std::string serialize_srl_document(const EvidenceSet& set) {
  return srl_to_json(set).dump(2) + "\n";
}

std::vector<SrlRecord> load_srl_bundle(const std::filesystem::path& path) {
  std::vector<SrlRecord> out;
  for_each_jsonl(read_text_file(path), [&](const Json& j, std::size_t) {
    SrlRecord r;
    r.instance_id = id_string(field(j, "instance_id", "record"), "instance_id");
    r.evidence = srl_from_json(j);
    out.push_back(std::move(r));
  });
  return out;
}

std::string format_srl_bundle(std::span<const SrlRecord> records) {
  std::string out;
  for (const SrlRecord& r : records) {
    Json j = srl_to_json(r.evidence);
    j["instance_id"] = r.instance_id;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance x;
  x.instance_id = id_string(field(j, "instance_id", "instance"), "instance_id");
  x.claim = string_field(j, "claim", "instance");
  x.label = label_from_name(string_field(j, "label", "instance"));
  const Json& groups = field(j, "evidence_groups", "instance");
  if (!groups.is_array()) throw ValidationError("evidence_groups", "expected an array");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string gw = "evidence_groups[" + std::to_string(g) + "]";
    if (!groups[g].is_array()) throw ValidationError(gw, "expected an array");
    EvidenceGroup group;
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      group.push_back(evidence_key_from_json(groups[g][k], gw + "[" + std::to_string(k) + "]"));
    }
    x.evidence_groups.push_back(std::move(group));
  }
  return x;
}

Json instance_to_json(const Instance& x) {
  Json groups = Json::array();
  for (const EvidenceGroup& g : x.evidence_groups) {
    Json group = Json::array();
    for (const auto& [doc, idx] : g) group.push_back({doc, idx});
    groups.push_back(std::move(group));
  }
  return {{"instance_id", x.instance_id},
          {"claim", x.claim},
          {"label", std::string(label_name(x.label))},
          {"evidence_groups", std::move(groups)}};
}

std::vector<Instance> parse_dataset(std::string_view text) {
  std::vector<Instance> out;
  for_each_jsonl(text, [&](const Json& j, std::size_t) { out.push_back(instance_from_json(j)); });
  return out;
}

std::vector<Instance> load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_text_file(path));
}

std::string format_dataset(std::span<const Instance> instances) {
  std::string out;
  for (const Instance& x : instances) {
    out += instance_to_json(x).dump();
    out += '\n';
  }
  return out;
}

void write_dataset(const std::filesystem::path& path, std::span<const Instance> instances) {
  write_text_file(path, format_dataset(instances));
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  std::vector<Document> out;
  for_each_jsonl(read_text_file(path), [&](const Json& j, std::size_t) {
    Document d;
    d.doc_id = id_string(field(j, "doc_id", "document"), "doc_id");
    d.title = string_field(j, "title", "document");
    const Json& sents = field(j, "sentences", "document");
    if (!sents.is_array()) throw ValidationError("sentences", "expected an array");
    for (const Json& s : sents) {
      if (!s.is_string()) throw ValidationError("sentences", "expected strings");
      d.sentences.push_back(s.get<std::string>());
    }
    out.push_back(std::move(d));
  });
  return out;
}

std::string format_corpus(std::span<const Document> docs) {
  std::string out;
  for (const Document& d : docs) {
    out += Json{{"doc_id", d.doc_id}, {"title", d.title}, {"sentences", d.sentences}}.dump();
    out += '\n';
  }
  return out;
}

Json prediction_to_json(const Prediction& p) {
  Json ev = Json::array();
  for (const auto& [doc, idx] : p.evidence) ev.push_back({doc, idx});
  return {{"instance_id", p.instance_id},
          {"predicted_label", std::string(label_name(p.label))},
          {"probabilities", p.probabilities},
          {"predicted_evidence", std::move(ev)}};
}

Prediction prediction_from_json(const Json& j) {
  Prediction p;
  p.instance_id = id_string(field(j, "instance_id", "prediction"), "instance_id");
  p.label = label_from_name(string_field(j, "predicted_label", "prediction"));
  if (auto it = j.find("probabilities"); it != j.end()) {
    if (!it->is_array() || it->size() != kNumLabels) {
      throw ValidationError("probabilities", "expected 3 numbers");
    }
    for (std::size_t i = 0; i < kNumLabels; ++i) p.probabilities[i] = (*it)[i].get<double>();
  }
  const Json& ev = field(j, "predicted_evidence", "prediction");
  if (!ev.is_array()) throw ValidationError("predicted_evidence", "expected an array");
  for (std::size_t k = 0; k < ev.size(); ++k) {
    p.evidence.push_back(
        evidence_key_from_json(ev[k], "predicted_evidence[" + std::to_string(k) + "]"));
  }
  return p;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  for_each_jsonl(read_text_file(path),
                 [&](const Json& j, std::size_t) { out.push_back(prediction_from_json(j)); });
  return out;
}

std::string format_predictions(std::span<const Prediction> predictions) {
  std::string out;
  for (const Prediction& p : predictions) {
    out += prediction_to_json(p).dump();
    out += '\n';
  }
  return out;
}

}  // namespace evigraph
