// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "symtax/common.hpp"

namespace symtax {

using nlohmann::json;

Corpus::Corpus(std::vector<Paper> papers) : papers_(std::move(papers)) {
  std::sort(papers_.begin(), papers_.end(),
            [](const Paper& a, const Paper& b) { return a.id < b.id; });
  index_.reserve(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    if (papers_[i].id.empty()) throw ValidationError("paper with empty id");
    if (!index_.emplace(papers_[i].id, i).second) {
      throw ValidationError("duplicate paper id '" + papers_[i].id + "'");
    }
  }
}

const Paper& Corpus::at(const std::string& id) const {
  const Paper* p = find(id);
  if (!p) throw ValidationError("unknown paper id '" + id + "'");
  return *p;
}

const Paper* Corpus::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &papers_[it->second];
}

void CitationGraph::add_vertex(const std::string& id) {
  out_.try_emplace(id);
  in_.try_emplace(id);
}

bool CitationGraph::add_edge(const std::string& from, const std::string& to) {
  if (from == to) throw ValidationError("self-loop on '" + from + "'");
  add_vertex(from);
  add_vertex(to);
  if (!out_[from].insert(to).second) return false;
  in_[to].insert(from);
  ++edges_;
  return true;
}

const std::set<std::string>& CitationGraph::out_neighbors(const std::string& id) const {
  auto it = out_.find(id);
  if (it == out_.end()) throw ValidationError("unknown vertex '" + id + "'");
  return it->second;
}

const std::set<std::string>& CitationGraph::in_neighbors(const std::string& id) const {
  auto it = in_.find(id);
  if (it == in_.end()) throw ValidationError("unknown vertex '" + id + "'");
  return it->second;
}

namespace {

// Iterates non-blank lines, handing (1-based line number, text) to fn.
template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) fn(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

json parse_line(std::size_t line_no, std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError("line " + std::to_string(line_no) + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object()) {
    throw ValidationError("line " + std::to_string(line_no) + ": expected a JSON object");
  }
  return j;
}

std::string required_string(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ValidationError("line " + std::to_string(line_no) + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ValidationError("line " + std::to_string(line_no) + ": field '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_papers(const std::string& jsonl) {
  std::vector<Paper> papers;
  std::unordered_map<std::string, std::size_t> first_line;
  for_each_line(jsonl, [&](std::size_t line_no, std::string_view line) {
    const json j = parse_line(line_no, line);
    Paper p;
    p.id = required_string(j, "id", line_no);
    if (p.id.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty id");
    p.title = optional_string(j, "title", line_no).value_or("");
    p.abstract = optional_string(j, "abstract", line_no).value_or("");
    p.category = optional_string(j, "category", line_no).value_or("");
    p.pub_date = optional_string(j, "pub_date", line_no);
    auto [it, inserted] = first_line.emplace(p.id, line_no);
    if (!inserted) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate id '" + p.id +
                            "' (first seen on line " + std::to_string(it->second) + ")");
    }
    papers.push_back(std::move(p));
  });
  return Corpus(std::move(papers));
}

Corpus load_papers(const std::string& path) { return parse_papers(read_file(path)); }

ContextSet parse_contexts(const std::string& jsonl, const Corpus& corpus) {
  ContextSet set;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_line(jsonl, [&](std::size_t line_no, std::string_view line) {
    const json j = parse_line(line_no, line);
    CitationContext c;
    c.context_id = required_string(j, "context_id", line_no);
    c.citing_id = required_string(j, "citing_id", line_no);
    c.cited_id = required_string(j, "cited_id", line_no);
    c.text = required_string(j, "text", line_no);
    c.section_heading = optional_string(j, "section_heading", line_no);
    if (c.text.empty()) {
      throw ValidationError("line " + std::to_string(line_no) + ": empty context text");
    }
    auto [it, inserted] = seen.emplace(c.context_id, line_no);
    if (!inserted) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate context_id '" +
                            c.context_id + "' (first seen on line " + std::to_string(it->second) + ")");
    }
    if (c.citing_id == c.cited_id) {
      ++set.dropped_self_citation;
    } else if (!corpus.contains(c.cited_id)) {
      ++set.dropped_unknown_cited;
    } else if (!corpus.contains(c.citing_id)) {
      ++set.dropped_unknown_citing;
    } else {
      set.contexts.push_back(std::move(c));
    }
  });
  return set;
}

ContextSet load_contexts(const std::string& path, const Corpus& corpus) {
  return parse_contexts(read_file(path), corpus);
}

CitationGraph build_citation_graph(const std::vector<CitationContext>& contexts) {
  CitationGraph g;
  for (const auto& c : contexts) g.add_edge(c.citing_id, c.cited_id);
  return g;
}

CitationGraph build_citation_graph(const std::vector<CitationContext>& contexts,
                                   const Corpus& corpus) {
  CitationGraph g;
  for (const auto& p : corpus.papers()) g.add_vertex(p.id);
  for (const auto& c : contexts) g.add_edge(c.citing_id, c.cited_id);
  return g;
}

ContextSplit split_contexts(const std::vector<CitationContext>& contexts, const SplitSpec& spec) {
  for (double f : {spec.train, spec.val, spec.test}) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("split fraction outside [0,1]");
  }
  if (std::abs(spec.train + spec.val + spec.test - 1.0) > 1e-9) {
    throw ValidationError("split fractions must sum to 1");
  }
  const std::size_t n = contexts.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);

  const auto n_train = std::min(n, static_cast<std::size_t>(std::floor(spec.train * static_cast<double>(n) + 1e-9)));
  const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::floor(spec.val * static_cast<double>(n) + 1e-9)));

  ContextSplit out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = contexts[order[i]];
    if (i < n_train) {
      out.train.push_back(c);
    } else if (i < n_train + n_val) {
      out.val.push_back(c);
    } else {
      out.test.push_back(c);
    }
  }
  return out;
}

GraphStats graph_stats(const CitationGraph& graph, const Corpus* corpus) {
  GraphStats st;
  st.vertices = graph.vertex_count();
  st.directed_edges = graph.edge_count();
  if (corpus) {
    for (const auto& p : corpus->papers()) {
      if (graph.contains(p.id)) ++st.category_histogram[p.category.empty() ? "(none)" : p.category];
    }
  }
  if (st.vertices == 0) return st;

  std::map<std::string, std::set<std::string>> undirected;
  for (const auto& [u, outs] : graph.adjacency()) {
    undirected[u];
    for (const auto& v : outs) {
      undirected[u].insert(v);
      undirected[v].insert(u);
    }
  }
  std::size_t degree_sum = 0;
  double clustering_sum = 0.0;
  for (const auto& [u, nbrs] : undirected) {
    degree_sum += nbrs.size();
    if (nbrs.size() < 2) continue;
    std::size_t links = 0;
    for (auto a = nbrs.begin(); a != nbrs.end(); ++a) {
      const auto& na = undirected[*a];
      for (auto b = std::next(a); b != nbrs.end(); ++b) {
        if (na.count(*b)) ++links;
      }
    }
    const double k = static_cast<double>(nbrs.size());
    clustering_sum += 2.0 * static_cast<double>(links) / (k * (k - 1.0));
  }
  st.undirected_edges = degree_sum / 2;
  st.avg_local_clustering = clustering_sum / static_cast<double>(st.vertices);
  st.avg_degree = static_cast<double>(degree_sum) / static_cast<double>(st.vertices);
  return st;
}

std::string to_jsonl(const std::vector<Paper>& papers) {
  std::string out;
  for (const auto& p : papers) {
    json j{{"id", p.id}, {"title", p.title}, {"abstract", p.abstract}, {"category", p.category}};
    if (p.pub_date) j["pub_date"] = *p.pub_date;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_jsonl(const std::vector<CitationContext>& contexts) {
  std::string out;
  for (const auto& c : contexts) {
    json j{{"context_id", c.context_id},
           {"citing_id", c.citing_id},
           {"cited_id", c.cited_id},
           {"text", c.text}};
    if (c.section_heading) j["section_heading"] = *c.section_heading;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string stats_to_json(const GraphStats& st) {
  json hist = json::object();
  for (const auto& [k, v] : st.category_histogram) hist[k] = v;
  json j{{"papers", st.vertices},
         {"directed_edges", st.directed_edges},
         {"undirected_edges", st.undirected_edges},
         {"avg_local_clustering", st.avg_local_clustering},
         {"avg_degree", st.avg_degree},
         {"category_histogram", hist}};
  return j.dump(2) + "\n";
}

std::string stats_to_text(const GraphStats& st) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %10s %10s %8s %8s\n", "Dataset", "# Papers", "# Edges", "LCC",
                "Deg");
  os << line;
  std::snprintf(line, sizeof(line), "%-10s %10zu %10zu %8.3f %8.2f\n", "corpus", st.vertices,
                st.directed_edges, st.avg_local_clustering, st.avg_degree);
  os << line;
  if (!st.category_histogram.empty()) {
    os << "\ncategory histogram\n";
    for (const auto& [k, v] : st.category_histogram) {
      std::snprintf(line, sizeof(line), "  %-12s %8zu\n", k.c_str(), v);
      os << line;
    }
  }
  return os.str();
}

}  // namespace symtax
