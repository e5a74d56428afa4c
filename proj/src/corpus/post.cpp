// Copyright 2026 The hatelab Authors
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

#include "hatelab/corpus/post.hpp"

#include "hatelab/text/utf8.hpp"

namespace hatelab::corpus {

Json to_json(const CleanPost& post) {
  Json j;
  j["post_id"] = post.post_id;
  j["source_id"] = post.source_id;
  j["url"] = post.url;
  j["text"] = text::encode_utf8(post.text);
  j["was_zawgyi"] = post.was_zawgyi;
  j["syllable_count"] = post.syllable_count;
  j["tokens"] = Json::array();
  for (const auto& t : post.tokens) j["tokens"].push_back(text::encode_utf8(t));
  j["lexicon_hits"] = Json::array();
  for (const auto& h : post.lexicon_hits) {
    j["lexicon_hits"].push_back(
        {{"term", text::encode_utf8(h.term.term)}, {"source", h.term.source}, {"start", h.start}, {"end", h.end}});
  }
  return j;
}

CleanPost clean_post_from_json(const Json& j) {
  CleanPost post;
  post.post_id = j.at("post_id").get<std::string>();
  post.source_id = j.value("source_id", std::string());
  post.url = j.value("url", std::string());
  post.text = text::decode_utf8(j.at("text").get<std::string>());
  post.was_zawgyi = j.value("was_zawgyi", false);
  post.syllable_count = j.value("syllable_count", std::size_t{0});
  for (const auto& t : j.value("tokens", Json::array())) post.tokens.push_back(text::decode_utf8(t.get<std::string>()));
  for (const auto& h : j.value("lexicon_hits", Json::array())) {
    lexicon::TermHit hit;
    hit.term.term = text::decode_utf8(h.at("term").get<std::string>());
    hit.term.source = h.value("source", std::string());
    hit.start = h.at("start").get<std::size_t>();
    hit.end = h.at("end").get<std::size_t>();
    hit.post_id = post.post_id;
    post.lexicon_hits.push_back(std::move(hit));
  }
  return post;
}

}  // namespace hatelab::corpus
