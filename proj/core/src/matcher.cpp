// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/matcher.hpp"

#include <algorithm>
#include <limits>

#include "symtax/common.hpp"

namespace symtax {

ShingleSet shingle(std::string_view title, std::size_t k) {
  if (k == 0) throw ValidationError("shingle size must be >= 1");
  const std::string norm = normalize_title(title);
  ShingleSet out;
  if (norm.empty()) return out;
  if (norm.size() < k) {
    out.push_back(norm);
    return out;
  }
  out.reserve(norm.size() - k + 1);
  for (std::size_t i = 0; i + k <= norm.size(); ++i) out.emplace_back(norm.substr(i, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinHashSignature minhash_signature(const ShingleSet& shingles, std::size_t num_hashes,
                                   std::uint64_t seed) {
  if (num_hashes == 0) throw ValidationError("signature length must be >= 1");
  if (shingles.empty()) throw ValidationError("cannot sign an empty shingle set");
  std::vector<std::uint64_t> slot_keys(num_hashes);
  for (std::size_t h = 0; h < num_hashes; ++h) {
    slot_keys[h] = mix64(seed ^ mix64(static_cast<std::uint64_t>(h) + 0x632be59bd9b4e019ULL));
  }
  MinHashSignature sig;
  sig.seed = seed;
  sig.slots.assign(num_hashes, std::numeric_limits<std::uint64_t>::max());
  for (const auto& s : shingles) {
    const std::uint64_t base = fnv1a64(s);
    for (std::size_t h = 0; h < num_hashes; ++h) {
      sig.slots[h] = std::min(sig.slots[h], mix64(base ^ slot_keys[h]));
    }
  }
  return sig;
}

double signature_agreement(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.slots.size() != b.slots.size() || a.slots.empty()) {
    throw ValidationError("signature lengths differ");
  }
  std::size_t eq = 0;
  for (std::size_t i = 0; i < a.slots.size(); ++i) eq += a.slots[i] == b.slots[i];
  return static_cast<double>(eq) / static_cast<double>(a.slots.size());
}

double jaccard(const ShingleSet& a, const ShingleSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double lcs_similarity(std::string_view a_raw, std::string_view b_raw) {
  const std::string a = normalize_title(a_raw);
  const std::string b = normalize_title(b_raw);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::vector<std::uint32_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::uint32_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(best) / static_cast<double>(std::max(a.size(), b.size()));
}

LshIndex::LshIndex(LshParams params) : params_(params), buckets_(params.bands) {
  if (params_.bands == 0 || params_.rows == 0) throw ValidationError("LSH bands and rows must be >= 1");
}

std::vector<std::uint64_t> LshIndex::band_keys(const MinHashSignature& sig) const {
  std::vector<std::uint64_t> keys(params_.bands);
  for (std::size_t b = 0; b < params_.bands; ++b) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(b));
    for (std::size_t r = 0; r < params_.rows; ++r) {
      h = mix64(h ^ sig.slots[b * params_.rows + r]);
    }
    keys[b] = h;
  }
  return keys;
}

std::vector<std::uint64_t> LshIndex::band_keys(std::string_view title) const {
  const auto sh = shingle(title, params_.shingle_k);
  if (sh.empty()) return {};
  return band_keys(minhash_signature(sh, params_.num_hashes(), params_.seed));
}

void LshIndex::add(const std::string& id, std::string_view title) {
  const auto keys = band_keys(title);
  if (keys.empty()) return;
  const auto slot = static_cast<std::uint32_t>(ids_.size());
  ids_.push_back(id);
  for (std::size_t b = 0; b < params_.bands; ++b) buckets_[b][keys[b]].push_back(slot);
}

std::vector<LshCandidate> LshIndex::query(std::string_view title, std::size_t limit) const {
  const auto keys = band_keys(title);
  if (keys.empty() || limit == 0) return {};
  std::unordered_map<std::uint32_t, std::size_t> shared;
  for (std::size_t b = 0; b < params_.bands; ++b) {
    auto it = buckets_[b].find(keys[b]);
    if (it == buckets_[b].end()) continue;
    for (auto slot : it->second) ++shared[slot];
  }
  std::vector<LshCandidate> out;
  out.reserve(shared.size());
  for (const auto& [slot, n] : shared) out.push_back({ids_[slot], n});
  auto better = [](const LshCandidate& x, const LshCandidate& y) {
    return x.shared_bands != y.shared_bands ? x.shared_bands > y.shared_bands : x.id < y.id;
  };
  if (out.size() > limit) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(limit), out.end(), better);
    out.resize(limit);
  } else {
    std::sort(out.begin(), out.end(), better);
  }
  return out;
}

std::vector<std::string> LshIndex::bucket(std::size_t band, std::uint64_t key) const {
  std::vector<std::string> out;
  if (band >= buckets_.size()) return out;
  auto it = buckets_[band].find(key);
  if (it == buckets_[band].end()) return out;
  for (auto slot : it->second) out.push_back(ids_[slot]);
  return out;
}

LshIndex build_lsh_index(const Corpus& corpus, LshParams params) {
  LshIndex index(params);
  for (const auto& p : corpus.papers()) index.add(p.id, p.title);
  return index;
}

std::optional<TitleMatch> match_title(std::string_view title, const LshIndex& index,
                                      const Corpus& corpus, double threshold,
                                      std::size_t candidate_limit) {
  std::optional<TitleMatch> best;
  for (const auto& cand : index.query(title, candidate_limit)) {
    const Paper* p = corpus.find(cand.id);
    if (!p) continue;
    const double sim = lcs_similarity(title, p->title);
    if (!best || sim > best->similarity || (sim == best->similarity && cand.id < best->id)) {
      best = TitleMatch{cand.id, sim};
    }
  }
  if (best && best->similarity >= threshold) return best;
  return std::nullopt;
}

}  // namespace symtax
