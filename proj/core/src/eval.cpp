// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/eval.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "symtax/common.hpp"

namespace symtax {

namespace {

// 1-based rank of the gold paper, 0 when absent.
std::size_t rank_of(std::span<const ScoredId> ranked, const std::string& gold_id) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].id == gold_id) return i + 1;
  }
  return 0;
}

}  // namespace

double recall_at_k(std::span<const ScoredId> ranked, const std::string& gold_id, std::size_t k) {
  if (k == 0) throw ValidationError("recall cutoff must be >= 1");
  const std::size_t r = rank_of(ranked, gold_id);
  return (r != 0 && r <= k) ? 1.0 : 0.0;
}

double mrr(std::span<const ScoredId> ranked, const std::string& gold_id) {
  const std::size_t r = rank_of(ranked, gold_id);
  return r == 0 ? 0.0 : 1.0 / static_cast<double>(r);
}

double ndcg_at_10(std::span<const ScoredId> ranked, const std::string& gold_id) {
  const std::size_t r = rank_of(ranked, gold_id);
  if (r == 0 || r > 10) return 0.0;
  return 1.0 / std::log2(1.0 + static_cast<double>(r));
}

void MetricAccumulator::add(std::span<const ScoredId> ranked, const std::string& gold_id) {
  sum_.recall_at_5 += recall_at_k(ranked, gold_id, 5);
  sum_.recall_at_10 += recall_at_k(ranked, gold_id, 10);
  sum_.recall_at_20 += recall_at_k(ranked, gold_id, 20);
  sum_.recall_at_50 += recall_at_k(ranked, gold_id, 50);
  sum_.ndcg_at_10 += ndcg_at_10(ranked, gold_id);
  sum_.mrr += mrr(ranked, gold_id);
  ++n_;
}

MetricReport MetricAccumulator::finish() const {
  if (n_ == 0) throw ValidationError("evaluation needs at least one test query");
  const double n = static_cast<double>(n_);
  MetricReport r;
  r.recall_at_5 = sum_.recall_at_5 / n;
  r.recall_at_10 = sum_.recall_at_10 / n;
  r.recall_at_20 = sum_.recall_at_20 / n;
  r.recall_at_50 = sum_.recall_at_50 / n;
  r.ndcg_at_10 = sum_.ndcg_at_10 / n;
  r.mrr = sum_.mrr / n;
  r.queries = n_;
  return r;
}

AblationConfig parse_ablation(const std::string& spec) {
  AblationConfig a;
  std::stringstream ss(spec);
  std::string flag;
  while (std::getline(ss, flag, ',')) {
    const auto b = flag.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    flag = flag.substr(b, flag.find_last_not_of(" \t") - b + 1);
    if (flag == "none") continue;
    if (flag == "no_symbiosis") {
      a.no_symbiosis = true;
    } else if (flag == "no_taxonomy") {
      a.no_taxonomy = true;
    } else if (flag == "euclidean") {
      a.euclidean = true;
    } else if (flag == "with_section") {
      a.with_section = true;
    } else if (flag == "prefetch_only") {
      a.prefetch_only = true;
    } else {
      throw ValidationError("unknown ablation flag '" + flag +
                            "' (expected no_symbiosis|no_taxonomy|euclidean|with_section|prefetch_only)");
    }
  }
  return a;
}

std::string to_string(const AblationConfig& a) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(a.no_symbiosis, "no_symbiosis");
  add(a.no_taxonomy, "no_taxonomy");
  add(a.euclidean, "euclidean");
  add(a.with_section, "with_section");
  add(a.prefetch_only, "prefetch_only");
  return out.empty() ? "none" : out;
}

std::string report_to_json(const MetricReport& r, const AblationConfig& ablation) {
  nlohmann::ordered_json j;
  j["ablation"] = to_string(ablation);
  j["queries"] = r.queries;
  j["recall@5"] = r.recall_at_5;
  j["recall@10"] = r.recall_at_10;
  j["recall@20"] = r.recall_at_20;
  j["recall@50"] = r.recall_at_50;
  j["ndcg@10"] = r.ndcg_at_10;
  j["mrr"] = r.mrr;
  return j.dump() + "\n";
}

std::string report_to_text(const MetricReport& r, const AblationConfig& ablation) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-28s %7s %7s %7s %7s %7s %7s %7s\n", "ablation", "R@5", "R@10",
                "R@20", "R@50", "NDCG", "MRR", "queries");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-28s %7.4f %7.4f %7.4f %7.4f %7.4f %7.4f %7zu\n",
                to_string(ablation).c_str(), r.recall_at_5, r.recall_at_10, r.recall_at_20,
                r.recall_at_50, r.ndcg_at_10, r.mrr, r.queries);
  out += buf;
  return out;
}

}  // namespace symtax
