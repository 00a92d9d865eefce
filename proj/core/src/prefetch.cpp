// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/prefetch.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "binary_io.hpp"
#include "symtax/common.hpp"

namespace symtax {

namespace {

constexpr std::string_view kIndexMagic = "SYTXIDX1";
constexpr std::uint32_t kIndexVersion = 1;

// Orders (score desc, index asc); index order equals id order.
struct RankEntry {
  double score;
  std::size_t idx;
};

bool rank_before(const RankEntry& a, const RankEntry& b) {
  return a.score != b.score ? a.score > b.score : a.idx < b.idx;
}

void top_k(std::vector<RankEntry>& entries, std::size_t k) {
  if (k < entries.size()) {
    std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k),
                      entries.end(), rank_before);
    entries.resize(k);
  } else {
    std::sort(entries.begin(), entries.end(), rank_before);
  }
}

}  // namespace

std::string document_text(const Paper& paper) { return paper.title + " " + paper.abstract; }

std::string query_text(std::string_view context, const Paper& citing) {
  std::string q(context);
  q += ' ';
  q += citing.title;
  q += ' ';
  q += citing.abstract;
  return q;
}

DenseIndex::DenseIndex(std::vector<std::string> ids, std::size_t dim, std::vector<float> rows,
                       std::uint64_t fingerprint)
    : ids_(std::move(ids)), dim_(dim), rows_(std::move(rows)), fingerprint_(fingerprint) {
  if (rows_.size() != ids_.size() * dim_) throw ValidationError("index matrix has wrong size");
  norms_.resize(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    double s = 0.0;
    const float* r = row(i);
    for (std::size_t j = 0; j < dim_; ++j) s += static_cast<double>(r[j]) * r[j];
    norms_[i] = std::sqrt(s);
  }
}

std::string DenseIndex::serialize() const {
  detail::BinaryWriter w;
  w.put_bytes(kIndexMagic);
  w.put<std::uint32_t>(kIndexVersion);
  w.put<std::uint64_t>(dim_);
  w.put<std::uint64_t>(ids_.size());
  w.put<std::uint64_t>(fingerprint_);
  for (const auto& id : ids_) w.put_string(id);
  for (float f : rows_) w.put<float>(f);
  return w.data();
}

DenseIndex DenseIndex::deserialize(std::string_view bytes) {
  detail::BinaryReader r(bytes, "index");
  if (r.get_bytes(kIndexMagic.size()) != kIndexMagic) throw ValidationError("index: bad magic");
  if (r.get<std::uint32_t>() != kIndexVersion) throw ValidationError("index: unsupported version");
  const auto dim = r.get<std::uint64_t>();
  const auto n = r.get<std::uint64_t>();
  const auto fp = r.get<std::uint64_t>();
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) ids.push_back(r.get_string());
  std::vector<float> rows(n * dim);
  for (auto& f : rows) f = r.get<float>();
  if (!r.at_end()) throw ValidationError("index: trailing bytes");
  return DenseIndex(std::move(ids), dim, std::move(rows), fp);
}

void DenseIndex::save(const std::string& path) const { write_file(path, serialize()); }

DenseIndex DenseIndex::load(const std::string& path) { return deserialize(read_file(path)); }

DenseIndex build_dense_index(const Corpus& corpus, const EmbeddingProvider& provider) {
  const std::size_t dim = provider.dimension();
  std::vector<std::string> ids;
  std::vector<float> rows;
  ids.reserve(corpus.size());
  rows.reserve(corpus.size() * dim);
  for (const auto& p : corpus.papers()) {
    ids.push_back(p.id);
    const Embedding e = provider.embed(document_text(p));
    for (Eigen::Index j = 0; j < e.size(); ++j) rows.push_back(static_cast<float>(e[j]));
  }
  return DenseIndex(std::move(ids), dim, std::move(rows), provider.fingerprint());
}

PrefetchResult prefetch(const Embedding& query, const DenseIndex& index, std::size_t m,
                        std::optional<std::string_view> exclude_id) {
  if (static_cast<std::size_t>(query.size()) != index.dimension()) {
    throw ValidationError("query dimension " + std::to_string(query.size()) +
                          " does not match index dimension " + std::to_string(index.dimension()));
  }
  PrefetchResult out;
  if (m == 0) return out;
  const double qn = query.norm();
  std::vector<RankEntry> entries;
  entries.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (exclude_id && index.ids()[i] == *exclude_id) continue;
    double score = 0.0;
    const double rn = index.row_norm(i);
    if (qn > 0.0 && rn > 0.0) {
      const float* r = index.row(i);
      double dot = 0.0;
      for (std::size_t j = 0; j < index.dimension(); ++j) dot += query[static_cast<Eigen::Index>(j)] * r[j];
      score = dot / (qn * rn);
    }
    entries.push_back({score, i});
  }
  out.truncated_request = m > entries.size();
  top_k(entries, m);
  out.candidates.reserve(entries.size());
  for (const auto& e : entries) out.candidates.push_back({index.ids()[e.idx], e.score});
  return out;
}

PrefetchResult prefetch(std::string_view query_text, const DenseIndex& index,
                        const EmbeddingProvider& provider, std::size_t m,
                        std::optional<std::string_view> exclude_id) {
  if (provider.fingerprint() != index.fingerprint()) {
    throw ValidationError("index was built with a different embedder configuration");
  }
  return prefetch(provider.embed(query_text), index, m, exclude_id);
}

Bm25Index::Bm25Index(const Corpus& corpus) {
  ids_.reserve(corpus.size());
  doc_len_.reserve(corpus.size());
  double total = 0.0;
  for (const auto& p : corpus.papers()) {
    const auto doc = static_cast<std::uint32_t>(ids_.size());
    ids_.push_back(p.id);
    const auto toks = tokenize(document_text(p));
    doc_len_.push_back(static_cast<std::uint32_t>(toks.size()));
    total += static_cast<double>(toks.size());
    std::map<std::string, std::uint32_t> tf;
    for (const auto& t : toks) ++tf[t];
    for (const auto& [t, n] : tf) postings_[t].push_back({doc, n});
  }
  avgdl_ = ids_.empty() ? 0.0 : total / static_cast<double>(ids_.size());
}

double Bm25Index::idf(const std::string& term) const {
  auto it = postings_.find(term);
  const double df = it == postings_.end() ? 0.0 : static_cast<double>(it->second.size());
  const double n = static_cast<double>(ids_.size());
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<double> Bm25Index::score_all(std::string_view query, const Bm25Params& params) const {
  std::vector<double> scores(ids_.size(), 0.0);
  auto terms = tokenize(query);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  for (const auto& t : terms) {
    auto it = postings_.find(t);
    if (it == postings_.end()) continue;
    const double w = idf(t);
    for (const auto& post : it->second) {
      const double tf = post.tf;
      const double norm = 1.0 - params.b + params.b * static_cast<double>(doc_len_[post.doc]) / avgdl_;
      scores[post.doc] += w * (tf * (params.k1 + 1.0)) / (tf + params.k1 * norm);
    }
  }
  return scores;
}

CandidateList bm25_rank(std::string_view query, const Bm25Index& index, const Bm25Params& params,
                        std::size_t k, std::optional<std::string_view> exclude_id) {
  if (params.k1 < 0.0 || params.b < 0.0 || params.b > 1.0) {
    throw ValidationError("BM25 parameters out of range");
  }
  const auto scores = index.score_all(query, params);
  std::vector<RankEntry> entries;
  entries.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (exclude_id && index.ids()[i] == *exclude_id) continue;
    entries.push_back({scores[i], i});
  }
  top_k(entries, k);
  CandidateList out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({index.ids()[e.idx], e.score});
  return out;
}

}  // namespace symtax
