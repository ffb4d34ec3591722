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

#include "evigraph/synth.h"

#include <array>
#include <map>
#include <set>

#include "evigraph/errors.h"
#include "evigraph/random.h"
#include "evigraph/retrieval.h"

namespace evigraph {
namespace {

constexpr std::array<const char*, 24> kSyllables = {
    "ka", "lo", "mi", "ren", "to", "va", "su", "bel", "dor", "ni", "qua", "ri",
    "zan", "pe", "mor", "ti", "gal", "un", "sha", "vek", "ol", "tra", "ny", "cos"};
constexpr std::array<const char*, 8> kEventNouns = {
    "riots", "festival", "strike", "flood", "treaty", "marathon", "uprising", "fair"};
constexpr std::array<const char*, 4> kKinds = {"county", "city", "port", "valley"};
// Opposite pairs: index i and i ^ 1.
constexpr std::array<const char*, 8> kAdjectives = {
    "largest", "smallest", "oldest", "newest", "richest", "poorest", "busiest", "quietest"};
constexpr std::array<const char*, 6> kCrowds = {
    "large crowds", "many visitors", "wide attention", "heavy criticism", "foreign press",
    "loud protests"};
constexpr std::size_t kRegions = 3;
constexpr std::size_t kEventNames = 80;

struct Segment {
  std::string text;
  std::optional<Role> role;
};

// Sentence text and its single SRL frame.
struct Template {
  std::vector<Segment> segments;

  std::string text() const {
    std::string s;
    for (const Segment& seg : segments) {
      if (!s.empty()) s += ' ';
      s += seg.text;
    }
    return s;
  }

  Sentence parse(const std::string& sentence_id, const std::string& doc,
                 std::optional<std::size_t> index) const {
    Sentence s;
    s.sentence_id = sentence_id;
    s.source_doc = doc;
    s.source_index = index;
    SrlTuple tuple;
    tuple.tuple_id = "0";
    tuple.sentence_id = sentence_id;
    for (const Segment& seg : segments) {
      const std::size_t start = s.tokens.size();
      std::size_t i = 0;
      while (i < seg.text.size()) {
        std::size_t j = seg.text.find(' ', i);
        if (j == std::string::npos) j = seg.text.size();
        s.tokens.push_back(Token{seg.text.substr(i, j - i), s.tokens.size()});
        i = j + 1;
      }
      if (seg.role) {
        tuple.arguments.push_back(SrlArgument{*seg.role, seg.text, Span{start, s.tokens.size()}});
      }
    }
    s.tuples.push_back(std::move(tuple));
    return s;
  }
};

class NameMaker {
 public:
  explicit NameMaker(Rng& rng) : rng_(rng) {}

  std::string make() {
    for (;;) {
      const std::size_t parts = 2 + rng_.index(2);
      std::string name;
      for (std::size_t i = 0; i < parts; ++i) name += kSyllables[rng_.index(kSyllables.size())];
      name[0] = static_cast<char>(name[0] - 'a' + 'A');
      if (used_.insert(name).second) return name;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& pool) {
  return pool[rng.index(N)];
}

std::string doc_id_for(const std::string& title) {
  std::string id = title;
  for (char& c : id) {
    if (c == ' ') c = '_';
  }
  return id;
}

struct World {
  std::vector<Document> corpus;
  std::map<std::string, std::vector<Template>> parses;  // doc_id -> per sentence
};

void add_document(World& w, const std::string& title, std::vector<Template> sentences) {
  Document d;
  d.doc_id = doc_id_for(title);
  d.title = title;
  for (const Template& t : sentences) d.sentences.push_back(t.text());
  w.parses[d.doc_id] = std::move(sentences);
  w.corpus.push_back(std::move(d));
}

struct Draft {
  Instance instance;
  Template claim;
};

struct Place {
  std::string name;
  std::string kind;
  std::string region;
  std::size_t adjective = 0;
};

// A closed world: one place per (kind, region) pair, each with a fixed
// superlative.
std::vector<Place> make_places(Rng& rng, NameMaker& names, const std::vector<std::string>& regions) {
  std::vector<Place> places;
  for (const char* kind : kKinds) {
    std::string kind_title = kind;
    kind_title[0] = static_cast<char>(kind_title[0] - 'a' + 'A');
    for (const std::string& region : regions) {
      places.push_back(
          Place{names.make() + " " + kind_title, kind, region, rng.index(kAdjectives.size())});
    }
  }
  return places;
}

Template describe(const Place& p) {
  return {{{p.name, Role::kArgument},
           {"is", Role::kVerb},
           {std::string("the ") + kAdjectives[p.adjective] + " " + p.kind + " in " + p.region,
            Role::kArgument},
           {".", std::nullopt}}};
}

Draft make_instance(World& w, Rng& rng, const std::string& event, const std::vector<Place>& places,
                    const std::string& id, Label label) {
  const Place& place = places[rng.index(places.size())];
  const Place* described = &place;
  while (label == Label::kNei && described == &place) {
    described = &places[rng.index(places.size())];
  }
  const std::size_t claim_adj =
      label == Label::kRefuted ? (described->adjective ^ 1) : described->adjective;

  const std::string year = std::to_string(1900 + rng.index(120));
  std::vector<Template> sentences = {
      {{{event, Role::kArgument}, {"occurred", Role::kVerb}, {"in " + place.name, Role::kLocation},
        {".", std::nullopt}}},
      describe(*described),
      {{{event, Role::kArgument}, {"drew", Role::kVerb}, {pick(rng, kCrowds), Role::kArgument},
        {".", std::nullopt}}},
      {{{event, Role::kArgument}, {"began", Role::kVerb}, {"in " + year, Role::kTemporal},
        {".", std::nullopt}}},
  };
  std::vector<std::size_t> order = {0, 1, 2, 3};
  rng.shuffle(order);
  std::vector<Template> shuffled;
  std::size_t bridge_at = 0, describe_at = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == 0) bridge_at = i;
    if (order[i] == 1) describe_at = i;
    shuffled.push_back(sentences[order[i]]);
  }
  add_document(w, event, std::move(shuffled));

  Draft d;
  d.instance.instance_id = id;
  d.instance.label = label;
  d.claim = Template{{{event, Role::kArgument},
                      {"happened", Role::kVerb},
                      {std::string("in the ") + kAdjectives[claim_adj] + " " + described->kind +
                           " in " + described->region,
                       Role::kLocation}}};
  d.instance.claim = d.claim.text();
  if (label != Label::kNei) {
    const std::string doc = doc_id_for(event);
    d.instance.evidence_groups.push_back({{doc, bridge_at}, {doc, describe_at}});
  }
  return d;
}

SrlRecord evidence_for(const World& w, const Draft& draft, const SynthOptions& options) {
  SrlRecord rec;
  rec.instance_id = draft.instance.instance_id;
  rec.evidence.claim = draft.claim.parse("claim", "", std::nullopt);
  const std::vector<ScoredDocument> docs =
      retrieve_documents(draft.instance.claim, w.corpus, options.top_docs);
  const std::vector<const Document*> resolved = resolve_documents(w.corpus, docs);
  const LexicalScorer scorer;
  for (const ScoredSentence& s :
       select_evidence(draft.instance.claim, resolved, options.top_sentences, scorer)) {
    const Template& t = w.parses.at(s.doc_id).at(s.sentence_index);
    rec.evidence.evidence.push_back(
        t.parse(s.doc_id + ":" + std::to_string(s.sentence_index), s.doc_id, s.sentence_index));
  }
  validate(rec.evidence);
  return rec;
}

std::vector<Label> balanced_labels(std::size_t n, Rng& rng) {
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(kAllLabels[i % kNumLabels]);
  rng.shuffle(labels);
  return labels;
}

}  // namespace

SynthData generate_synthetic(const SynthOptions& options) {
  Rng rng(options.seed);
  NameMaker names(rng);
  World world;

  std::vector<std::string> regions;
  for (std::size_t r = 0; r < kRegions; ++r) regions.push_back(names.make());

  const std::vector<Place> places = make_places(rng, names, regions);
  std::vector<std::string> event_names;
  for (std::size_t i = 0; i < kEventNames; ++i) event_names.push_back(names.make());
  std::set<std::string> events_used;
  auto next_event = [&] {
    for (;;) {
      std::string e = event_names[rng.index(event_names.size())] + " " + pick(rng, kEventNouns);
      if (events_used.insert(e).second) return e;
    }
  };

  std::vector<Draft> train_drafts, dev_drafts;
  const std::vector<Label> train_labels = balanced_labels(options.train, rng);
  const std::vector<Label> dev_labels = balanced_labels(options.dev, rng);
  char id[32];
  for (std::size_t i = 0; i < options.train; ++i) {
    std::snprintf(id, sizeof id, "train-%05zu", i);
    train_drafts.push_back(make_instance(world, rng, next_event(), places, id, train_labels[i]));
  }
  for (std::size_t i = 0; i < options.dev; ++i) {
    std::snprintf(id, sizeof id, "dev-%05zu", i);
    dev_drafts.push_back(make_instance(world, rng, next_event(), places, id, dev_labels[i]));
  }
  for (const Place& p : places) {
    const std::string residents = std::to_string(1000 * (1 + rng.index(90)));
    add_document(world, p.name,
                 {describe(p),
                  {{{p.name, Role::kArgument}, {"has", Role::kVerb},
                    {residents + " residents", Role::kArgument}, {".", std::nullopt}}}});
  }
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const std::string& region = regions[r];
    const std::string rivers = std::to_string(2 + rng.index(30));
    add_document(world, region,
                 {{{{region, Role::kArgument}, {"has", Role::kVerb},
                    {rivers + " rivers", Role::kArgument}, {".", std::nullopt}}},
                  {{{region, Role::kArgument}, {"borders", Role::kVerb},
                    {regions[(r + 1) % regions.size()], Role::kArgument}, {".", std::nullopt}}}});
  }

  SynthData out;
  for (const Draft& d : train_drafts) {
    out.train.push_back(d.instance);
    out.train_srl.push_back(evidence_for(world, d, options));
  }
  for (const Draft& d : dev_drafts) {
    out.dev.push_back(d.instance);
    out.dev_srl.push_back(evidence_for(world, d, options));
  }
  out.corpus = std::move(world.corpus);
  return out;
}

}  // namespace evigraph
