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

#ifndef EVIGRAPH_SYNTH_H_
#define EVIGRAPH_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "evigraph/config.h"
#include "evigraph/data_model.h"
#include "evigraph/json_io.h"

namespace evigraph {

struct SynthOptions {
  std::size_t train = 300;
  std::size_t dev = 60;
  std::uint64_t seed = 7;
  // Retrieval and selection settings used to build each instance's evidence.
  std::size_t top_docs = 10;
  std::size_t top_sentences = 5;
};

// A templated two-hop world. Every event article states where the event
// happened (bridge sentence) and describes that place (description sentence):
//   "<Event> occurred in <Place> ."
//   "<Place> is the <adj> <kind> in <Region> ."
// Claims read "<Event> happened in the <adj> <kind> in <Region>".
//   SUPPORTED  both hops agree with the claim
//   REFUTED    the description uses a different adjective
//   NEI        the description talks about another place, so the chain breaks
// Labels are balanced and shuffled. SRL parses come straight from the
// templates; each instance's evidence is whatever keyword retrieval plus
// lexical selection pick from the corpus.
struct SynthData {
  std::vector<Document> corpus;
  std::vector<Instance> train;
  std::vector<Instance> dev;
  std::vector<SrlRecord> train_srl;
  std::vector<SrlRecord> dev_srl;
};

SynthData generate_synthetic(const SynthOptions& options);

}  // namespace evigraph

#endif  // EVIGRAPH_SYNTH_H_
