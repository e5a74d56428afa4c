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

#include "hatelab/lexicon/matcher.hpp"

#include <algorithm>
#include <deque>

namespace hatelab::lexicon {

Matcher::Matcher(const Lexicon& lexicon) : lexicon_(lexicon), nodes_(1) {
  const auto& terms = lexicon_.terms();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    std::uint32_t node = 0;
    for (char32_t c : terms[t].term) {
      std::uint32_t nxt = edge(node, c);
      if (nxt == 0) {
        nxt = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
        auto& next = nodes_[node].next;
        auto it = std::lower_bound(next.begin(), next.end(), c,
                                   [](const auto& e, char32_t k) { return e.first < k; });
        next.insert(it, {c, nxt});
      }
      node = nxt;
    }
    nodes_[node].term = static_cast<std::int64_t>(t);
  }

  std::deque<std::uint32_t> queue;
  for (const auto& [c, child] : nodes_[0].next) queue.push_back(child);
  while (!queue.empty()) {
    const std::uint32_t node = queue.front();
    queue.pop_front();
    for (const auto& [c, child] : nodes_[node].next) {
      std::uint32_t f = nodes_[node].fail;
      std::uint32_t target = edge(f, c);
      while (target == 0 && f != 0) {
        f = nodes_[f].fail;
        target = edge(f, c);
      }
      nodes_[child].fail = target;
      nodes_[child].out_link = nodes_[target].term >= 0 ? target : nodes_[target].out_link;
      queue.push_back(child);
    }
  }
}

std::uint32_t Matcher::edge(std::uint32_t node, char32_t c) const {
  const auto& next = nodes_[node].next;
  auto it = std::lower_bound(next.begin(), next.end(), c, [](const auto& e, char32_t k) { return e.first < k; });
  return it != next.end() && it->first == c ? it->second : 0;
}

std::uint32_t Matcher::step(std::uint32_t node, char32_t c) const {
  while (true) {
    const std::uint32_t nxt = edge(node, c);
    if (nxt != 0 || node == 0) return nxt;
    node = nodes_[node].fail;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> Matcher::match_indices(std::u32string_view text) const {
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  const auto& terms = lexicon_.terms();
  std::uint32_t node = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    node = step(node, text[i]);
    for (std::uint32_t n = nodes_[node].term >= 0 ? node : nodes_[node].out_link; n != 0; n = nodes_[n].out_link) {
      const auto t = static_cast<std::size_t>(nodes_[n].term);
      hits.emplace_back(t, i + 1 - terms[t].term.size());
    }
  }
  std::sort(hits.begin(), hits.end(), [&](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return terms[x.first].term.size() > terms[y.first].term.size();
  });
  return hits;
}

std::vector<TermHit> Matcher::match(std::u32string_view text, std::string_view post_id) const {
  std::vector<TermHit> out;
  for (const auto& [t, start] : match_indices(text)) {
    const auto& term = lexicon_.terms()[t];
    out.push_back({term, start, start + term.term.size(), std::string(post_id)});
  }
  return out;
}

std::size_t Matcher::count(std::u32string_view text) const { return match_indices(text).size(); }

std::vector<TermHit> match_terms(const Matcher& matcher, std::u32string_view text, std::string_view post_id) {
  return matcher.match(text, post_id);
}

}  // namespace hatelab::lexicon
