// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/taxonomy.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "symtax/common.hpp"

namespace symtax {

using nlohmann::json;

AcmTree::AcmTree(std::map<std::string, AcmNode> nodes) : nodes_(std::move(nodes)) {
  for (const auto& [id, node] : nodes_) {
    if (node.parent && !nodes_.count(*node.parent)) {
      throw ValidationError("ACM node '" + id + "' has unknown parent '" + *node.parent + "'");
    }
  }
  for (const auto& [id, node] : nodes_) {
    std::set<std::string> seen{id};
    const AcmNode* cur = &node;
    while (cur->parent) {
      if (!seen.insert(*cur->parent).second) {
        throw ValidationError("cycle in ACM tree through '" + id + "'");
      }
      cur = &nodes_.at(*cur->parent);
    }
  }
}

const AcmNode& AcmTree::at(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw ValidationError("unknown ACM node '" + id + "'");
  return it->second;
}

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(what) + ": malformed JSON (" + e.what() + ")");
  }
}

}  // namespace

Taxonomy parse_taxonomy(const std::string& mapping_json, const std::string& tree_json) {
  const json tj = parse_json(tree_json, "ACM tree");
  if (!tj.is_object()) throw ValidationError("ACM tree: expected a JSON object");
  std::map<std::string, AcmNode> nodes;
  for (const auto& [id, v] : tj.items()) {
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
      throw ValidationError("ACM tree: node '" + id + "' needs a string 'name'");
    }
    AcmNode n{id, v["name"].get<std::string>(), std::nullopt};
    if (v.contains("parent") && !v["parent"].is_null()) {
      if (!v["parent"].is_string()) throw ValidationError("ACM tree: bad parent for '" + id + "'");
      n.parent = v["parent"].get<std::string>();
    }
    nodes.emplace(id, std::move(n));
  }

  Taxonomy tax;
  tax.tree = AcmTree(std::move(nodes));

  const json mj = parse_json(mapping_json, "mapping");
  if (!mj.is_object()) throw ValidationError("mapping: expected a JSON object");
  if (mj.empty()) throw ValidationError("mapping: no classes defined");
  for (const auto& [label, v] : mj.items()) {
    TaxonomyClass cls;
    cls.label = label;
    cls.name = label;
    const json* ids = &v;
    if (v.is_object()) {
      if (v.contains("name") && v["name"].is_string()) cls.name = v["name"].get<std::string>();
      if (!v.contains("acm")) throw ValidationError("mapping: class '" + label + "' lacks 'acm'");
      ids = &v["acm"];
    }
    if (!ids->is_array()) throw ValidationError("mapping: class '" + label + "' must list ACM ids");
    for (const auto& a : *ids) {
      if (!a.is_string()) throw ValidationError("mapping: class '" + label + "' has a non-string id");
      const auto acm = a.get<std::string>();
      if (!tax.tree.contains(acm)) {
        throw ValidationError("mapping: class '" + label + "' references unknown ACM node '" + acm + "'");
      }
      cls.acm_ids.push_back(acm);
    }
    if (cls.acm_ids.empty()) throw ValidationError("mapping: class '" + label + "' maps to no ACM node");
    if (tax.tree.contains(label)) {
      throw ValidationError("mapping: class label '" + label + "' collides with an ACM id");
    }
    tax.classes.emplace(label, std::move(cls));
  }
  return tax;
}

Taxonomy load_taxonomy(const std::string& mapping_path, const std::string& tree_path) {
  return parse_taxonomy(read_file(mapping_path), read_file(tree_path));
}

std::string mapping_to_json(const Taxonomy& taxonomy) {
  json j = json::object();
  for (const auto& [label, cls] : taxonomy.classes) {
    j[label] = json{{"name", cls.name}, {"acm", cls.acm_ids}};
  }
  return j.dump(2) + "\n";
}

std::string tree_to_json(const AcmTree& tree) {
  json j = json::object();
  for (const auto& [id, n] : tree.nodes()) {
    j[id] = json{{"name", n.name}, {"parent", n.parent ? json(*n.parent) : json(nullptr)}};
  }
  return j.dump(2) + "\n";
}

void validate_categories(const Taxonomy& taxonomy, const Corpus& corpus) {
  for (const auto& p : corpus.papers()) {
    if (!p.category.empty() && !taxonomy.has_class(p.category)) {
      throw ValidationError("paper '" + p.id + "' has category '" + p.category +
                            "' missing from the taxonomy mapping");
    }
  }
}

FusionMode parse_fusion_mode(const std::string& s) {
  if (s == "vector") return FusionMode::kVector;
  if (s == "graph") return FusionMode::kGraph;
  throw ValidationError("unknown fusion mode '" + s + "' (expected vector|graph)");
}

const char* to_string(FusionMode mode) noexcept {
  return mode == FusionMode::kVector ? "vector" : "graph";
}

const Embedding& FusedClassEmbeddings::at(const std::string& label) const {
  auto it = vectors.find(label);
  if (it == vectors.end()) throw ValidationError("no fused embedding for class '" + label + "'");
  return it->second;
}

FusedClassEmbeddings vector_fusion(const Taxonomy& taxonomy, const EmbeddingProvider& provider) {
  FusedClassEmbeddings out;
  out.mode = FusionMode::kVector;
  out.dimension = provider.dimension();
  for (const auto& [label, cls] : taxonomy.classes) {
    Embedding sum = provider.embed(cls.name);
    for (const auto& acm : cls.acm_ids) sum += provider.embed(taxonomy.tree.at(acm).name);
    sum /= static_cast<double>(1 + cls.acm_ids.size());
    out.vectors.emplace(label, std::move(sum));
  }
  return out;
}

TaxonomyGraph build_fusion_graph(const Taxonomy& taxonomy, const EmbeddingProvider& provider) {
  TaxonomyGraph g;
  std::map<std::string, std::size_t> acm_index;
  for (const auto& [id, node] : taxonomy.tree.nodes()) {
    acm_index.emplace(id, g.node_ids.size());
    g.node_ids.push_back(id);
    g.is_class.push_back(false);
  }
  for (const auto& [label, cls] : taxonomy.classes) {
    g.node_ids.push_back(label);
    g.is_class.push_back(true);
  }

  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto link = [&](std::size_t a, std::size_t b) {
    edges.emplace(a, b);
    edges.emplace(b, a);
  };
  for (const auto& [id, node] : taxonomy.tree.nodes()) {
    if (node.parent) link(acm_index.at(*node.parent), acm_index.at(id));
  }
  std::size_t class_row = taxonomy.tree.size();
  for (const auto& [label, cls] : taxonomy.classes) {
    for (const auto& acm : cls.acm_ids) link(class_row, acm_index.at(acm));
    ++class_row;
  }
  g.edges.assign(edges.begin(), edges.end());

  const auto n = static_cast<Eigen::Index>(g.node_ids.size());
  g.init.resize(n, static_cast<Eigen::Index>(provider.dimension()));
  Eigen::Index row = 0;
  for (const auto& [id, node] : taxonomy.tree.nodes()) g.init.row(row++) = provider.embed(node.name).transpose();
  for (const auto& [label, cls] : taxonomy.classes) g.init.row(row++) = provider.embed(cls.name).transpose();
  return g;
}

Eigen::MatrixXd propagate(const TaxonomyGraph& graph, double alpha, std::size_t iters,
                          std::vector<double>* step_norms) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("propagation alpha must be in (0, 1]");
  const std::size_t n = graph.size();
  if (static_cast<std::size_t>(graph.init.rows()) != n) {
    throw ValidationError("fusion graph init rows do not match node count");
  }
  std::vector<std::vector<std::size_t>> nbrs(n);
  {
    std::set<std::pair<std::size_t, std::size_t>> uniq(graph.edges.begin(), graph.edges.end());
    for (const auto& [a, b] : uniq) {
      if (a >= n || b >= n) throw ValidationError("fusion graph edge out of range");
      if (a != b) nbrs[a].push_back(b);
    }
  }
  std::vector<double> inv_sqrt_deg(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt_deg[i] = 1.0 / std::sqrt(1.0 + static_cast<double>(nbrs[i].size()));

  const Eigen::MatrixXd& z0 = graph.init;
  Eigen::MatrixXd z = z0;
  Eigen::MatrixXd next(z.rows(), z.cols());
  for (std::size_t k = 0; k < iters; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ri = static_cast<Eigen::Index>(i);
      Eigen::RowVectorXd acc = z.row(ri) * (inv_sqrt_deg[i] * inv_sqrt_deg[i]);
      for (std::size_t j : nbrs[i]) acc += z.row(static_cast<Eigen::Index>(j)) * (inv_sqrt_deg[i] * inv_sqrt_deg[j]);
      next.row(ri) = (1.0 - alpha) * acc + alpha * z0.row(ri);
    }
    if (step_norms) step_norms->push_back((next - z).norm());
    z.swap(next);
  }
  return z;
}

FusedClassEmbeddings graph_fusion(const TaxonomyGraph& graph, double alpha, std::size_t iters) {
  const Eigen::MatrixXd z = propagate(graph, alpha, iters);
  FusedClassEmbeddings out;
  out.mode = FusionMode::kGraph;
  out.dimension = static_cast<std::size_t>(z.cols());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (graph.is_class[i]) out.vectors.emplace(graph.node_ids[i], z.row(static_cast<Eigen::Index>(i)).transpose());
  }
  return out;
}

FusedClassEmbeddings fuse(const Taxonomy& taxonomy, const EmbeddingProvider& provider,
                          FusionMode mode, double alpha, std::size_t iters) {
  if (mode == FusionMode::kVector) return vector_fusion(taxonomy, provider);
  return graph_fusion(build_fusion_graph(taxonomy, provider), alpha, iters);
}

std::string serialize_fused(const FusedClassEmbeddings& fused) {
  std::string out = std::string("#mode\t") + to_string(fused.mode) + "\n";
  out += format_embedding_table(fused.vectors);
  return out;
}

FusedClassEmbeddings parse_fused(const std::string& text) {
  const std::string prefix = "#mode\t";
  if (text.compare(0, prefix.size(), prefix) != 0) throw ValidationError("fused embeddings: missing #mode line");
  const auto eol = text.find('\n');
  if (eol == std::string::npos) throw ValidationError("fused embeddings: no vectors");
  FusedClassEmbeddings out;
  out.mode = parse_fusion_mode(text.substr(prefix.size(), eol - prefix.size()));
  const auto table = parse_precomputed(text.substr(eol + 1));
  out.dimension = table->dimension();
  for (const auto& [key, v] : table->table()) out.vectors.emplace(key, v);
  return out;
}

void save_fused(const FusedClassEmbeddings& fused, const std::string& path) {
  write_file(path, serialize_fused(fused));
}

FusedClassEmbeddings load_fused(const std::string& path) { return parse_fused(read_file(path)); }

}  // namespace symtax
