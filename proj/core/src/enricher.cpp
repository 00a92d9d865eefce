// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/enricher.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <unordered_map>

namespace symtax {

namespace {
std::atomic<std::uint64_t> g_enrich_calls{0};
}

const std::set<std::string>& ego_out(const CitationGraph& graph, const std::string& u) {
  return graph.out_neighbors(u);
}

EnrichedList enrich(const CandidateList& candidates, const CitationGraph& graph, std::size_t cap,
                    std::optional<std::string_view> exclude_id) {
  g_enrich_calls.fetch_add(1, std::memory_order_relaxed);

  constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();
  struct Entry {
    std::size_t frequency = 0;
    std::size_t rank = kNoRank;
  };
  std::unordered_map<std::string, Entry> entries;
  for (std::size_t r = 0; r < candidates.size(); ++r) {
    auto& e = entries[candidates[r].id];
    ++e.frequency;
    e.rank = std::min(e.rank, r);
  }
  for (const auto& c : candidates) {
    for (const auto& v : ego_out(graph, c.id)) ++entries[v].frequency;
  }

  EnrichedList out;
  out.reserve(entries.size());
  for (const auto& [id, e] : entries) {
    if (exclude_id && id == *exclude_id) continue;
    out.push_back({id, e.frequency, e.rank == kNoRank ? Origin::kEgo : Origin::kPrefetched});
  }
  std::sort(out.begin(), out.end(), [&](const EnrichedCandidate& a, const EnrichedCandidate& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    const std::size_t ra = entries.at(a.id).rank;
    const std::size_t rb = entries.at(b.id).rank;
    if (ra != rb) return ra < rb;
    return a.id < b.id;
  });
  if (out.size() > cap) out.resize(cap);
  return out;
}

EnrichedList without_enrichment(const CandidateList& candidates) {
  EnrichedList out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back({c.id, 1, Origin::kPrefetched});
  return out;
}

std::vector<std::string> ids_of(const EnrichedList& list) {
  std::vector<std::string> ids;
  ids.reserve(list.size());
  for (const auto& c : list) ids.push_back(c.id);
  return ids;
}

std::uint64_t enrich_invocations() noexcept { return g_enrich_calls.load(std::memory_order_relaxed); }

}  // namespace symtax
