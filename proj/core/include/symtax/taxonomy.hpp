// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symtax/corpus.hpp"
#include "symtax/embedder.hpp"

namespace symtax {

struct AcmNode {
  std::string id;
  std::string name;
  std::optional<std::string> parent;  // nullopt for a root
};

/// Rooted forest of ACM concepts keyed by id (e.g. "I.4").
class AcmTree {
 public:
  AcmTree() = default;
  /// Throws ValidationError on a dangling parent or a cycle.
  explicit AcmTree(std::map<std::string, AcmNode> nodes);

  bool contains(const std::string& id) const { return nodes_.count(id) != 0; }
  const AcmNode& at(const std::string& id) const;
  const std::map<std::string, AcmNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  std::map<std::string, AcmNode> nodes_;
};

/// A flat arXiv class and the ACM concepts it maps onto.
struct TaxonomyClass {
  std::string label;  // "cs.CV"
  std::string name;   // "Computer Vision"
  std::vector<std::string> acm_ids;
};

struct Taxonomy {
  std::map<std::string, TaxonomyClass> classes;
  AcmTree tree;

  bool has_class(const std::string& label) const { return classes.count(label) != 0; }
};

/// mapping_json: {"cs.CV": ["I.2.10", ...]} or {"cs.CV": {"name": ..., "acm": [...]}}.
/// tree_json: {"I.4": {"name": ..., "parent": "I" | null}}.
Taxonomy parse_taxonomy(const std::string& mapping_json, const std::string& tree_json);
Taxonomy load_taxonomy(const std::string& mapping_path, const std::string& tree_path);

std::string mapping_to_json(const Taxonomy& taxonomy);
std::string tree_to_json(const AcmTree& tree);

/// Throws ValidationError naming the first paper whose category is unmapped.
void validate_categories(const Taxonomy& taxonomy, const Corpus& corpus);

enum class FusionMode { kVector, kGraph };

FusionMode parse_fusion_mode(const std::string& s);
const char* to_string(FusionMode mode) noexcept;

/// One dense vector per arXiv class.
struct FusedClassEmbeddings {
  FusionMode mode = FusionMode::kVector;
  std::size_t dimension = 0;
  std::map<std::string, Embedding> vectors;

  bool contains(const std::string& label) const { return vectors.count(label) != 0; }
  /// Throws ValidationError for an unknown class.
  const Embedding& at(const std::string& label) const;
};

/// Mean of the class-name embedding and the embeddings of each mapped ACM
/// concept name.
FusedClassEmbeddings vector_fusion(const Taxonomy& taxonomy, const EmbeddingProvider& provider);

/// ACM nodes plus injected arXiv class nodes. Edges are stored in both
/// directions: ACM parent<->child and class<->mapped concept.
struct TaxonomyGraph {
  std::vector<std::string> node_ids;
  std::vector<bool> is_class;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // directed (from, to)
  Eigen::MatrixXd init;  // one row per node

  std::size_t size() const noexcept { return node_ids.size(); }
};

TaxonomyGraph build_fusion_graph(const Taxonomy& taxonomy, const EmbeddingProvider& provider);

/// Personalized-PageRank style propagation Z <- (1-alpha) Â Z + alpha Z0 with
/// Â = D^-1/2 (A + I) D^-1/2. Returns all node rows. When `step_norms` is
/// given it receives ||Z^{k+1} - Z^k||_F for each iteration.
Eigen::MatrixXd propagate(const TaxonomyGraph& graph, double alpha, std::size_t iters,
                          std::vector<double>* step_norms = nullptr);

/// Rows of the class nodes after propagation.
FusedClassEmbeddings graph_fusion(const TaxonomyGraph& graph, double alpha = 0.1,
                                  std::size_t iters = 10);

FusedClassEmbeddings fuse(const Taxonomy& taxonomy, const EmbeddingProvider& provider,
                          FusionMode mode, double alpha = 0.1, std::size_t iters = 10);

/// `label<TAB>values` lines; the mode travels in a leading "#mode" line.
std::string serialize_fused(const FusedClassEmbeddings& fused);
FusedClassEmbeddings parse_fused(const std::string& text);
void save_fused(const FusedClassEmbeddings& fused, const std::string& path);
FusedClassEmbeddings load_fused(const std::string& path);

}  // namespace symtax
