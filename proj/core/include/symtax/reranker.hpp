// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symtax/corpus.hpp"
#include "symtax/embedder.hpp"
#include "symtax/hypermath.hpp"
#include "symtax/prefetch.hpp"
#include "symtax/taxonomy.hpp"

namespace symtax {

struct RerankerConfig {
  std::size_t text_dim = 768;     // joint query/candidate embedding width
  std::size_t fused_dim = 768;    // fused class embedding width (projection input)
  std::size_t proj_hidden = 512;  // projection hidden width
  std::size_t proj_dim = 512;     // ball dimension
  std::size_t head_hidden = 128;  // scoring head hidden width
  double margin = 0.1;
  GeometryMode geometry = GeometryMode::kPaperAtan;
  bool use_taxonomy = true;
  bool use_section = false;

  bool operator==(const RerankerConfig&) const = default;
};

/// Feed-forward scorer over [text relevance ; separation]:
///   z = w2 . tanh(w1 f + b1) + b2
struct ScoringHead {
  Matrix w1;  // hidden x (text_dim + 1)
  Vector b1;
  Vector w2;
  double b2 = 0.0;

  static ScoringHead initialize(std::size_t input, std::size_t hidden, Rng& rng);
  static ScoringHead zeros(std::size_t input, std::size_t hidden);

  Vector hidden(const Vector& features) const;
  double forward(const Vector& features) const;
  void backward(const Vector& features, const Vector& hidden_act, double upstream,
                ScoringHead& grad, Vector* feature_grad) const;

  bool operator==(const ScoringHead& o) const {
    return w1 == o.w1 && b1 == o.b1 && w2 == o.w2 && b2 == o.b2;
  }
};

struct RerankerModel {
  RerankerConfig config;
  ProjectionNet projection;  // shared by query and candidate
  ScoringHead head;

  static RerankerModel initialize(const RerankerConfig& config, std::uint64_t seed);
  static RerankerModel zeros(const RerankerConfig& config);

  /// Versioned little-endian binary: header (dims, geometry, flags, margin)
  /// then float64 tensors row-major in declaration order.
  std::string serialize() const;
  static RerankerModel deserialize(std::string_view bytes);
  void save(const std::string& path) const;
  static RerankerModel load(const std::string& path);

  bool operator==(const RerankerModel&) const = default;
};

/// Everything the reranker knows about the citing side of one placeholder.
struct QueryBundle {
  std::string citing_id;
  std::string context;
  std::string title;
  std::string abstract;
  std::string category;
  std::optional<std::string> section_heading;
};

QueryBundle make_query(const CitationContext& context, const Corpus& corpus);

/// Context (optionally prefixed by the section heading), title, abstract.
std::string reranker_query_text(const QueryBundle& q, bool use_section);

/// Joint text: query text, " [SEP] ", candidate title, space, candidate abstract.
std::string joint_text(const QueryBundle& q, const Paper& candidate, bool use_section);

Embedding text_relevance(const QueryBundle& q, const Paper& candidate,
                         const EmbeddingProvider& provider, bool use_section);

/// Separation between the projected class embeddings of two categories
/// (0 when taxonomy is disabled).
double taxonomy_separation(const RerankerModel& model, const std::string& query_category,
                           const std::string& candidate_category, const FusedClassEmbeddings& fused);

double sigmoid(double z) noexcept;

/// Recommendation score in (0, 1).
double score(const RerankerModel& model, const QueryBundle& q, const Paper& candidate,
             const FusedClassEmbeddings& fused, const EmbeddingProvider& provider);

/// Score from precomputed text relevance; used by training and the oracle tests.
double score_features(const RerankerModel& model, const Embedding& text_rel,
                      const std::string& query_category, const std::string& candidate_category,
                      const FusedClassEmbeddings& fused);

double triplet_loss(double r_pos, double r_neg, double margin) noexcept;

struct Triplet {
  std::size_t query = 0;  // index into the caller's query list
  std::string positive;
  std::string negative;

  bool operator==(const Triplet&) const = default;
};

/// Up to `n_neg` triplets whose negatives are drawn uniformly without
/// replacement from `candidates` minus the gold paper.
std::vector<Triplet> mine_triplets(std::size_t query, const CandidateList& candidates,
                                   const std::string& gold_id, std::size_t n_neg, Rng& rng);

/// Inputs of one triplet with the text features already embedded.
struct TripletFeatures {
  Embedding text_pos;
  Embedding text_neg;
  std::string query_category;
  std::string pos_category;
  std::string neg_category;
};

struct ModelGradient {
  ProjectionNet projection;
  ScoringHead head;

  static ModelGradient zeros_like(const RerankerModel& model);
  void scale(double s);
};

/// Mean triplet loss over the batch; when `grad` is non-null it receives
/// the gradient of that mean w.r.t. every model parameter.
double batch_loss(const RerankerModel& model, std::span<const TripletFeatures> batch,
                  const FusedClassEmbeddings& fused, ModelGradient* grad);

struct TrainOptions {
  std::size_t epochs = 20;
  double learning_rate = 1e-3;
  double weight_decay = 1e-5;
  std::size_t batch_size = 32;
  std::size_t negatives = 4;
  std::uint64_t seed = 12;
};

/// One training query: its bundle, the cited paper, and the candidate pool
/// negatives are sampled from.
struct TrainingQuery {
  QueryBundle query;
  std::string gold_id;
  CandidateList candidates;
};

struct TrainResult {
  std::vector<double> epoch_loss;  // mean triplet loss per epoch
  std::size_t triplets_per_epoch = 0;
};

/// Minibatch SGD with weight decay on the triplet objective. Negatives are
/// re-mined every epoch. Throws NumericError on a non-finite loss.
TrainResult train(RerankerModel& model, std::span<const TrainingQuery> queries, const Corpus& corpus,
                  const FusedClassEmbeddings& fused, const EmbeddingProvider& provider,
                  const TrainOptions& options);

using RankedList = std::vector<ScoredId>;

/// Scores every candidate and sorts by score desc, ties by id asc.
RankedList rerank(const RerankerModel& model, const QueryBundle& q,
                  std::span<const std::string> candidate_ids, const Corpus& corpus,
                  const FusedClassEmbeddings& fused, const EmbeddingProvider& provider);

}  // namespace symtax
