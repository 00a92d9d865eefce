// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "symtax/corpus.hpp"
#include "symtax/prefetch.hpp"

namespace symtax {

enum class Origin : std::uint8_t { kPrefetched, kEgo };

struct EnrichedCandidate {
  std::string id;
  std::size_t frequency = 0;
  Origin origin = Origin::kPrefetched;

  bool operator==(const EnrichedCandidate&) const = default;
};

using EnrichedList = std::vector<EnrichedCandidate>;

/// Out-neighbors of `u` (papers it cites). Incoming edges never contribute.
/// Throws ValidationError when `u` is not a vertex.
const std::set<std::string>& ego_out(const CitationGraph& graph, const std::string& u);

/// Union of the prefetched candidates with every candidate's outgoing ego
/// network. Frequency is the multiplicity of an id in that multiset union.
/// Ordered by frequency desc, then prefetch rank (prefetched ids first),
/// then id; truncated to `cap`. `exclude_id` is never returned.
EnrichedList enrich(const CandidateList& candidates, const CitationGraph& graph,
                    std::size_t cap = 300,
                    std::optional<std::string_view> exclude_id = std::nullopt);

/// Candidate list passed through unchanged (frequency 1, prefetched origin);
/// used when symbiosis is disabled.
EnrichedList without_enrichment(const CandidateList& candidates);

std::vector<std::string> ids_of(const EnrichedList& list);

/// Number of enrich() calls in this process. Instrumentation for ablations.
std::uint64_t enrich_invocations() noexcept;

}  // namespace symtax
