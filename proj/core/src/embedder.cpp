// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/embedder.hpp"

#include <cmath>
#include <cstdlib>

#include "symtax/common.hpp"

namespace symtax {

HashedTokenEmbedder::HashedTokenEmbedder(std::size_t dimension, std::uint64_t seed)
    : dim_(dimension), seed_(seed) {
  if (dim_ == 0) throw ValidationError("embedding dimension must be positive");
}

Embedding HashedTokenEmbedder::embed(std::string_view text) const {
  Embedding v = Embedding::Zero(static_cast<Eigen::Index>(dim_));
  std::map<std::string, int> counts;
  for (auto& tok : tokenize(text)) ++counts[std::move(tok)];
  for (const auto& [tok, n] : counts) {
    const std::uint64_t h = fnv1a64(tok);
    const std::uint64_t bucket = mix64(h ^ seed_) % dim_;
    const double sign = (mix64(h ^ ~seed_) >> 63) ? -1.0 : 1.0;
    v[static_cast<Eigen::Index>(bucket)] += sign * std::log1p(static_cast<double>(n));
  }
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

std::uint64_t HashedTokenEmbedder::fingerprint() const noexcept {
  return mix64(fnv1a64("hashed-token") ^ mix64(dim_) ^ mix64(seed_ + 1));
}

PrecomputedEmbedder::PrecomputedEmbedder(std::size_t dimension,
                                         std::map<std::string, Embedding> table)
    : dim_(dimension) {
  std::uint64_t fp = mix64(fnv1a64("precomputed") ^ dim_);
  for (auto& [k, v] : table) {
    if (static_cast<std::size_t>(v.size()) != dim_) {
      throw ValidationError("embedding for '" + k + "' has dimension " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim_));
    }
    fp = mix64(fp ^ fnv1a64(k));
    table_.emplace(k, std::move(v));
  }
  fingerprint_ = fp;
}

Embedding PrecomputedEmbedder::embed(std::string_view text) const {
  auto it = table_.find(text);
  if (it == table_.end()) {
    throw ValidationError("no precomputed embedding for key '" + std::string(text) + "'");
  }
  return it->second;
}

std::unique_ptr<PrecomputedEmbedder> parse_precomputed(const std::string& text) {
  std::map<std::string, Embedding> table;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected key<TAB>values");
    }
    std::string key = line.substr(0, tab);
    std::vector<double> vals;
    const char* p = line.c_str() + tab + 1;
    const char* stop = line.c_str() + line.size();
    while (p < stop) {
      char* next = nullptr;
      const double x = std::strtod(p, &next);
      if (next == p) {
        while (p < stop && (*p == ' ' || *p == '\t')) ++p;
        if (p == stop) break;
        throw ValidationError("line " + std::to_string(line_no) + ": bad number");
      }
      if (!std::isfinite(x)) throw ValidationError("line " + std::to_string(line_no) + ": non-finite value");
      vals.push_back(x);
      p = next;
    }
    if (vals.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty vector");
    if (dim == 0) dim = vals.size();
    if (vals.size() != dim) {
      throw ValidationError("line " + std::to_string(line_no) + ": dimension " +
                            std::to_string(vals.size()) + " differs from " + std::to_string(dim));
    }
    Embedding v = Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    if (!table.emplace(key, std::move(v)).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  if (table.empty()) throw ValidationError("precomputed embedding file is empty");
  return std::make_unique<PrecomputedEmbedder>(dim, std::move(table));
}

std::unique_ptr<PrecomputedEmbedder> load_precomputed(const std::string& path) {
  return parse_precomputed(read_file(path));
}

std::string format_embedding_table(const std::map<std::string, Embedding>& table) {
  std::string out;
  for (const auto& [k, v] : table) {
    out += k;
    out += '\t';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) out += ' ';
      out += format_double(v[i]);
    }
    out += '\n';
  }
  return out;
}

double cosine(const Embedding& a, const Embedding& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace symtax
