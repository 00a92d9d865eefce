// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace symtax {

struct Paper {
  std::string id;
  std::string title;
  std::string abstract;
  std::string category;  // flat arXiv class, e.g. "cs.CV"; may be empty
  std::optional<std::string> pub_date;
};

/// One citation placeholder: the citation sentence with one adjoining
/// sentence on each side, linking a citing paper to the paper it cites.
struct CitationContext {
  std::string context_id;
  std::string citing_id;
  std::string cited_id;
  std::string text;
  std::optional<std::string> section_heading;
};

/// Papers keyed by id. Iteration order (papers()) is ascending id.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Paper> papers);

  std::size_t size() const noexcept { return papers_.size(); }
  bool empty() const noexcept { return papers_.empty(); }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  const Paper& at(const std::string& id) const;
  const Paper* find(const std::string& id) const;
  const std::vector<Paper>& papers() const noexcept { return papers_; }

 private:
  std::vector<Paper> papers_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ContextSet {
  std::vector<CitationContext> contexts;
  std::size_t dropped_unknown_cited = 0;
  std::size_t dropped_unknown_citing = 0;
  std::size_t dropped_self_citation = 0;

  std::size_t dropped() const noexcept {
    return dropped_unknown_cited + dropped_unknown_citing + dropped_self_citation;
  }
};

/// Directed citation network (citing -> cited). Parallel edges collapse.
class CitationGraph {
 public:
  void add_vertex(const std::string& id);
  /// Returns false for a duplicate edge. Self-loops are rejected.
  bool add_edge(const std::string& from, const std::string& to);

  bool contains(const std::string& id) const { return out_.count(id) != 0; }
  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  /// Throws ValidationError for an unknown vertex.
  const std::set<std::string>& out_neighbors(const std::string& id) const;
  const std::set<std::string>& in_neighbors(const std::string& id) const;

  const std::map<std::string, std::set<std::string>>& adjacency() const noexcept { return out_; }

  bool operator==(const CitationGraph& other) const { return out_ == other.out_; }

 private:
  std::map<std::string, std::set<std::string>> out_;
  std::map<std::string, std::set<std::string>> in_;
  std::size_t edges_ = 0;
};

struct SplitSpec {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
  std::uint64_t seed = 12;
};

struct ContextSplit {
  std::vector<CitationContext> train;
  std::vector<CitationContext> val;
  std::vector<CitationContext> test;
};

struct GraphStats {
  std::size_t vertices = 0;
  std::size_t directed_edges = 0;
  std::size_t undirected_edges = 0;
  double avg_local_clustering = 0.0;
  double avg_degree = 0.0;
  std::map<std::string, std::size_t> category_histogram;
};

/// Parses one-JSON-object-per-line paper records. Blank lines are skipped.
Corpus parse_papers(const std::string& jsonl);
Corpus load_papers(const std::string& path);

ContextSet parse_contexts(const std::string& jsonl, const Corpus& corpus);
ContextSet load_contexts(const std::string& path, const Corpus& corpus);

CitationGraph build_citation_graph(const std::vector<CitationContext>& contexts);
/// Same edge set, but every corpus paper is a vertex even when it has no edges.
CitationGraph build_citation_graph(const std::vector<CitationContext>& contexts,
                                   const Corpus& corpus);

/// Random partition at context granularity: floor(train), floor(val), rest.
ContextSplit split_contexts(const std::vector<CitationContext>& contexts, const SplitSpec& spec);

/// Clustering and degree on the undirected projection. The category
/// histogram is filled only when a corpus is supplied.
GraphStats graph_stats(const CitationGraph& graph, const Corpus* corpus = nullptr);

std::string to_jsonl(const std::vector<Paper>& papers);
std::string to_jsonl(const std::vector<CitationContext>& contexts);
std::string stats_to_json(const GraphStats& stats);
std::string stats_to_text(const GraphStats& stats);

}  // namespace symtax
