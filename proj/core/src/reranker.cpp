// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/reranker.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "binary_io.hpp"

namespace symtax {

// ---------------------------------------------------------------------------
// Scoring head

ScoringHead ScoringHead::initialize(std::size_t input, std::size_t hidden, Rng& rng) {
  ScoringHead h = zeros(input, hidden);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(input));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (Eigen::Index r = 0; r < h.w1.rows(); ++r)
    for (Eigen::Index c = 0; c < h.w1.cols(); ++c) h.w1(r, c) = rng.uniform(-s1, s1);
  for (Eigen::Index i = 0; i < h.w2.size(); ++i) h.w2[i] = rng.uniform(-s2, s2);
  return h;
}

ScoringHead ScoringHead::zeros(std::size_t input, std::size_t hidden) {
  const auto in = static_cast<Eigen::Index>(input);
  const auto hd = static_cast<Eigen::Index>(hidden);
  return ScoringHead{Matrix::Zero(hd, in), Vector::Zero(hd), Vector::Zero(hd), 0.0};
}

Vector ScoringHead::hidden(const Vector& features) const {
  if (features.size() != w1.cols()) {
    throw ValidationError("scoring head input has dimension " + std::to_string(features.size()) +
                          ", expected " + std::to_string(w1.cols()));
  }
  return (w1 * features + b1).array().tanh().matrix();
}

double ScoringHead::forward(const Vector& features) const { return w2.dot(hidden(features)) + b2; }

void ScoringHead::backward(const Vector& features, const Vector& hidden_act, double upstream,
                           ScoringHead& grad, Vector* feature_grad) const {
  grad.w2 += upstream * hidden_act;
  grad.b2 += upstream;
  const Vector g_pre = (upstream * w2.array() * (1.0 - hidden_act.array().square())).matrix();
  grad.w1.noalias() += g_pre * features.transpose();
  grad.b1 += g_pre;
  if (feature_grad) *feature_grad = w1.transpose() * g_pre;
}

// ---------------------------------------------------------------------------
// Model construction and checkpoints

namespace {

void check_config(const RerankerConfig& c) {
  if (c.text_dim == 0 || c.fused_dim == 0 || c.proj_hidden == 0 || c.proj_dim == 0 ||
      c.head_hidden == 0) {
    throw ValidationError("reranker dimensions must be positive");
  }
  if (!(c.margin > 0.0)) throw ValidationError("triplet margin must be positive");
}

constexpr std::string_view kCheckpointMagic = "SYTXCKPT";
constexpr std::uint32_t kCheckpointVersion = 1;
constexpr std::uint32_t kFlagTaxonomy = 1u << 0;
constexpr std::uint32_t kFlagSection = 1u << 1;

std::uint32_t geometry_code(GeometryMode m) {
  switch (m) {
    case GeometryMode::kPaperAtan:
      return 0;
    case GeometryMode::kArtanh:
      return 1;
    case GeometryMode::kEuclidean:
      return 2;
  }
  return 0;
}

GeometryMode geometry_from_code(std::uint32_t c) {
  switch (c) {
    case 0:
      return GeometryMode::kPaperAtan;
    case 1:
      return GeometryMode::kArtanh;
    case 2:
      return GeometryMode::kEuclidean;
    default:
      throw ValidationError("checkpoint: unknown geometry code");
  }
}

void put_matrix(detail::BinaryWriter& w, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) w.put<double>(m(r, c));
}

void put_vector(detail::BinaryWriter& w, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) w.put<double>(v[i]);
}

void get_matrix(detail::BinaryReader& r, Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = r.get<double>();
}

void get_vector(detail::BinaryReader& r, Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = r.get<double>();
}

}  // namespace

RerankerModel RerankerModel::initialize(const RerankerConfig& config, std::uint64_t seed) {
  check_config(config);
  Rng proj_rng(derive_seed(seed, "init.projection"));
  Rng head_rng(derive_seed(seed, "init.head"));
  return RerankerModel{
      config,
      ProjectionNet::initialize(config.fused_dim, config.proj_hidden, config.proj_dim, proj_rng),
      ScoringHead::initialize(config.text_dim + 1, config.head_hidden, head_rng)};
}

RerankerModel RerankerModel::zeros(const RerankerConfig& config) {
  check_config(config);
  return RerankerModel{config,
                       ProjectionNet::zeros(config.fused_dim, config.proj_hidden, config.proj_dim),
                       ScoringHead::zeros(config.text_dim + 1, config.head_hidden)};
}

std::string RerankerModel::serialize() const {
  detail::BinaryWriter w;
  w.put_bytes(kCheckpointMagic);
  w.put<std::uint32_t>(kCheckpointVersion);
  w.put<std::uint64_t>(config.text_dim);
  w.put<std::uint64_t>(config.fused_dim);
  w.put<std::uint64_t>(config.proj_hidden);
  w.put<std::uint64_t>(config.proj_dim);
  w.put<std::uint64_t>(config.head_hidden);
  w.put<std::uint32_t>(geometry_code(config.geometry));
  w.put<std::uint32_t>((config.use_taxonomy ? kFlagTaxonomy : 0u) |
                       (config.use_section ? kFlagSection : 0u));
  w.put<double>(config.margin);
  put_matrix(w, projection.w1);
  put_vector(w, projection.b1);
  put_matrix(w, projection.w2);
  put_vector(w, projection.b2);
  put_matrix(w, head.w1);
  put_vector(w, head.b1);
  put_vector(w, head.w2);
  w.put<double>(head.b2);
  return w.data();
}

RerankerModel RerankerModel::deserialize(std::string_view bytes) {
  detail::BinaryReader r(bytes, "checkpoint");
  if (r.get_bytes(kCheckpointMagic.size()) != kCheckpointMagic) {
    throw ValidationError("checkpoint: bad magic");
  }
  if (r.get<std::uint32_t>() != kCheckpointVersion) throw ValidationError("checkpoint: unsupported version");
  RerankerConfig c;
  c.text_dim = r.get<std::uint64_t>();
  c.fused_dim = r.get<std::uint64_t>();
  c.proj_hidden = r.get<std::uint64_t>();
  c.proj_dim = r.get<std::uint64_t>();
  c.head_hidden = r.get<std::uint64_t>();
  c.geometry = geometry_from_code(r.get<std::uint32_t>());
  const auto flags = r.get<std::uint32_t>();
  c.use_taxonomy = (flags & kFlagTaxonomy) != 0;
  c.use_section = (flags & kFlagSection) != 0;
  c.margin = r.get<double>();
  // Guard against absurd headers before allocating.
  const std::uint64_t params = c.fused_dim * c.proj_hidden + c.proj_hidden * c.proj_dim +
                               (c.text_dim + 1) * c.head_hidden;
  if (params * 8 > bytes.size()) throw ValidationError("checkpoint: truncated file");
  RerankerModel m = zeros(c);
  get_matrix(r, m.projection.w1);
  get_vector(r, m.projection.b1);
  get_matrix(r, m.projection.w2);
  get_vector(r, m.projection.b2);
  get_matrix(r, m.head.w1);
  get_vector(r, m.head.b1);
  get_vector(r, m.head.w2);
  m.head.b2 = r.get<double>();
  if (!r.at_end()) throw ValidationError("checkpoint: trailing bytes");
  return m;
}

void RerankerModel::save(const std::string& path) const { write_file(path, serialize()); }

RerankerModel RerankerModel::load(const std::string& path) { return deserialize(read_file(path)); }

// ---------------------------------------------------------------------------
// Scoring

QueryBundle make_query(const CitationContext& context, const Corpus& corpus) {
  const Paper& citing = corpus.at(context.citing_id);
  return QueryBundle{citing.id,    context.text,     citing.title,
                     citing.abstract, citing.category, context.section_heading};
}

std::string reranker_query_text(const QueryBundle& q, bool use_section) {
  std::string out;
  if (use_section && q.section_heading && !q.section_heading->empty()) {
    out += *q.section_heading;
    out += ' ';
  }
  out += q.context;
  out += ' ';
  out += q.title;
  out += ' ';
  out += q.abstract;
  return out;
}

std::string joint_text(const QueryBundle& q, const Paper& candidate, bool use_section) {
  return reranker_query_text(q, use_section) + " [SEP] " + candidate.title + " " + candidate.abstract;
}

Embedding text_relevance(const QueryBundle& q, const Paper& candidate,
                         const EmbeddingProvider& provider, bool use_section) {
  return provider.embed(joint_text(q, candidate, use_section));
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

Vector class_point(const RerankerModel& model, const std::string& category,
                   const FusedClassEmbeddings& fused) {
  Vector u = model.projection.forward(fused.at(category));
  return is_hyperbolic(model.config.geometry) ? project_to_ball(u) : u;
}

Vector features_with(const Embedding& text_rel, double s) {
  Vector f(text_rel.size() + 1);
  f.head(text_rel.size()) = text_rel;
  f[text_rel.size()] = s;
  return f;
}

}  // namespace

double taxonomy_separation(const RerankerModel& model, const std::string& query_category,
                           const std::string& candidate_category,
                           const FusedClassEmbeddings& fused) {
  if (!model.config.use_taxonomy) return 0.0;
  return separation(class_point(model, query_category, fused),
                    class_point(model, candidate_category, fused), model.config.geometry);
}

double score_features(const RerankerModel& model, const Embedding& text_rel,
                      const std::string& query_category, const std::string& candidate_category,
                      const FusedClassEmbeddings& fused) {
  if (static_cast<std::size_t>(text_rel.size()) != model.config.text_dim) {
    throw ValidationError("text relevance has dimension " + std::to_string(text_rel.size()) +
                          ", model expects " + std::to_string(model.config.text_dim));
  }
  const double s = taxonomy_separation(model, query_category, candidate_category, fused);
  return sigmoid(model.head.forward(features_with(text_rel, s)));
}

double score(const RerankerModel& model, const QueryBundle& q, const Paper& candidate,
             const FusedClassEmbeddings& fused, const EmbeddingProvider& provider) {
  return score_features(model, text_relevance(q, candidate, provider, model.config.use_section),
                        q.category, candidate.category, fused);
}

double triplet_loss(double r_pos, double r_neg, double margin) noexcept {
  return std::max(r_neg - r_pos + margin, 0.0);
}

std::vector<Triplet> mine_triplets(std::size_t query, const CandidateList& candidates,
                                   const std::string& gold_id, std::size_t n_neg, Rng& rng) {
  std::vector<const std::string*> eligible;
  eligible.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (c.id != gold_id) eligible.push_back(&c.id);
  }
  const std::size_t take = std::min(n_neg, eligible.size());
  std::vector<Triplet> out;
  out.reserve(take);
  // Partial Fisher-Yates: the first `take` slots become a uniform sample.
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(eligible.size() - i));
    std::swap(eligible[i], eligible[j]);
    out.push_back({query, gold_id, *eligible[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gradients

ModelGradient ModelGradient::zeros_like(const RerankerModel& model) {
  const auto& c = model.config;
  return ModelGradient{ProjectionNet::zeros(c.fused_dim, c.proj_hidden, c.proj_dim),
                       ScoringHead::zeros(c.text_dim + 1, c.head_hidden)};
}

void ModelGradient::scale(double s) {
  projection.w1 *= s;
  projection.b1 *= s;
  projection.w2 *= s;
  projection.b2 *= s;
  head.w1 *= s;
  head.b1 *= s;
  head.w2 *= s;
  head.b2 *= s;
}

double batch_loss(const RerankerModel& model, std::span<const TripletFeatures> batch,
                  const FusedClassEmbeddings& fused, ModelGradient* grad) {
  if (batch.empty()) return 0.0;
  const auto& cfg = model.config;
  const bool taxonomy = cfg.use_taxonomy;
  const bool hyperbolic = is_hyperbolic(cfg.geometry);
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  // Every category's projection is evaluated once per batch; its gradient is
  // accumulated at the ball point and pushed through the network once.
  struct ClassCache {
    const Embedding* input;
    Vector hidden;
    Vector raw;
    Vector point;
    Vector point_grad;
  };
  std::map<std::string, ClassCache> classes;
  auto lookup = [&](const std::string& cat) -> ClassCache& {
    auto it = classes.find(cat);
    if (it != classes.end()) return it->second;
    ClassCache c;
    c.input = &fused.at(cat);
    c.hidden = model.projection.hidden(*c.input);
    c.raw = model.projection.w2 * c.hidden + model.projection.b2;
    c.point = hyperbolic ? project_to_ball(c.raw) : c.raw;
    c.point_grad = Vector::Zero(c.raw.size());
    return classes.emplace(cat, std::move(c)).first->second;
  };

  double total = 0.0;
  Vector feature_grad;
  for (const auto& t : batch) {
    if (static_cast<std::size_t>(t.text_pos.size()) != cfg.text_dim ||
        static_cast<std::size_t>(t.text_neg.size()) != cfg.text_dim) {
      throw ValidationError("triplet text features have the wrong dimension");
    }
    double s_pos = 0.0;
    double s_neg = 0.0;
    ClassCache* q = nullptr;
    ClassCache* p = nullptr;
    ClassCache* n = nullptr;
    if (taxonomy) {
      q = &lookup(t.query_category);
      p = &lookup(t.pos_category);
      n = &lookup(t.neg_category);
      s_pos = separation(q->point, p->point, cfg.geometry);
      s_neg = separation(q->point, n->point, cfg.geometry);
    }
    const Vector f_pos = features_with(t.text_pos, s_pos);
    const Vector f_neg = features_with(t.text_neg, s_neg);
    const Vector h_pos = model.head.hidden(f_pos);
    const Vector h_neg = model.head.hidden(f_neg);
    const double r_pos = sigmoid(model.head.w2.dot(h_pos) + model.head.b2);
    const double r_neg = sigmoid(model.head.w2.dot(h_neg) + model.head.b2);
    const double loss = triplet_loss(r_pos, r_neg, cfg.margin);
    total += loss;
    if (!grad || !(r_neg - r_pos + cfg.margin > 0.0)) continue;

    const double gz_pos = -r_pos * (1.0 - r_pos) * inv_b;
    const double gz_neg = r_neg * (1.0 - r_neg) * inv_b;
    model.head.backward(f_pos, h_pos, gz_pos, grad->head, taxonomy ? &feature_grad : nullptr);
    if (taxonomy) {
      auto [gq, gc] = separation_backward(q->point, p->point, cfg.geometry, feature_grad[feature_grad.size() - 1]);
      q->point_grad += gq;
      p->point_grad += gc;
    }
    model.head.backward(f_neg, h_neg, gz_neg, grad->head, taxonomy ? &feature_grad : nullptr);
    if (taxonomy) {
      auto [gq, gc] = separation_backward(q->point, n->point, cfg.geometry, feature_grad[feature_grad.size() - 1]);
      q->point_grad += gq;
      n->point_grad += gc;
    }
  }

  if (grad && taxonomy) {
    for (auto& [cat, c] : classes) {
      const Vector g_raw = hyperbolic ? project_to_ball_backward(c.raw, c.point_grad) : c.point_grad;
      model.projection.backward(*c.input, c.hidden, g_raw, grad->projection);
    }
  }
  return total * inv_b;
}

// ---------------------------------------------------------------------------
// Training

namespace {

void sgd_step(Matrix& param, const Matrix& g, double lr, double wd) { param -= lr * (g + wd * param); }
void sgd_step(Vector& param, const Vector& g, double lr, double wd) { param -= lr * (g + wd * param); }

void apply_update(RerankerModel& m, const ModelGradient& g, double lr, double wd) {
  sgd_step(m.projection.w1, g.projection.w1, lr, wd);
  sgd_step(m.projection.b1, g.projection.b1, lr, wd);
  sgd_step(m.projection.w2, g.projection.w2, lr, wd);
  sgd_step(m.projection.b2, g.projection.b2, lr, wd);
  sgd_step(m.head.w1, g.head.w1, lr, wd);
  sgd_step(m.head.b1, g.head.b1, lr, wd);
  sgd_step(m.head.w2, g.head.w2, lr, wd);
  m.head.b2 -= lr * (g.head.b2 + wd * m.head.b2);
}

void zero(ModelGradient& g) {
  g.projection.w1.setZero();
  g.projection.b1.setZero();
  g.projection.w2.setZero();
  g.projection.b2.setZero();
  g.head.w1.setZero();
  g.head.b1.setZero();
  g.head.w2.setZero();
  g.head.b2 = 0.0;
}

}  // namespace

TrainResult train(RerankerModel& model, std::span<const TrainingQuery> queries, const Corpus& corpus,
                  const FusedClassEmbeddings& fused, const EmbeddingProvider& provider,
                  const TrainOptions& options) {
  if (options.batch_size == 0) throw ValidationError("batch size must be >= 1");
  if (!(options.learning_rate > 0.0) || options.weight_decay < 0.0) {
    throw ValidationError("learning rate must be positive and weight decay non-negative");
  }
  TrainResult result;
  if (options.epochs == 0 || queries.empty()) return result;

  const bool use_section = model.config.use_section;
  std::vector<Embedding> positive_text;
  positive_text.reserve(queries.size());
  for (const auto& q : queries) {
    positive_text.push_back(text_relevance(q.query, corpus.at(q.gold_id), provider, use_section));
  }

  Rng rng(derive_seed(options.seed, "triplets"));
  ModelGradient grad = ModelGradient::zeros_like(model);
  std::vector<TripletFeatures> batch;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::vector<Triplet> triplets;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      auto mined = mine_triplets(qi, queries[qi].candidates, queries[qi].gold_id, options.negatives, rng);
      triplets.insert(triplets.end(), mined.begin(), mined.end());
    }
    rng.shuffle(triplets);
    result.triplets_per_epoch = triplets.size();
    if (triplets.empty()) {
      result.epoch_loss.push_back(0.0);
      continue;
    }

    double epoch_total = 0.0;
    for (std::size_t start = 0; start < triplets.size(); start += options.batch_size) {
      const std::size_t end = std::min(triplets.size(), start + options.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        const auto& t = triplets[i];
        const auto& q = queries[t.query];
        const Paper& neg = corpus.at(t.negative);
        batch.push_back(TripletFeatures{positive_text[t.query],
                                        text_relevance(q.query, neg, provider, use_section),
                                        q.query.category, corpus.at(t.positive).category,
                                        neg.category});
      }
      zero(grad);
      const double loss = batch_loss(model, batch, fused, &grad);
      if (!std::isfinite(loss)) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(epoch + 1) +
                           ", batch starting at triplet " + std::to_string(start));
      }
      epoch_total += loss * static_cast<double>(end - start);
      apply_update(model, grad, options.learning_rate, options.weight_decay);
    }
    result.epoch_loss.push_back(epoch_total / static_cast<double>(triplets.size()));
  }
  return result;
}

RankedList rerank(const RerankerModel& model, const QueryBundle& q,
                  std::span<const std::string> candidate_ids, const Corpus& corpus,
                  const FusedClassEmbeddings& fused, const EmbeddingProvider& provider) {
  const auto& cfg = model.config;
  // Class points depend only on the category, so each is projected once.
  std::map<std::string, Vector> points;
  auto point = [&](const std::string& cat) -> const Vector& {
    auto it = points.find(cat);
    if (it == points.end()) it = points.emplace(cat, class_point(model, cat, fused)).first;
    return it->second;
  };
  RankedList out;
  out.reserve(candidate_ids.size());
  for (const auto& id : candidate_ids) {
    const Paper& c = corpus.at(id);
    const Embedding e = text_relevance(q, c, provider, cfg.use_section);
    if (static_cast<std::size_t>(e.size()) != cfg.text_dim) {
      throw ValidationError("text relevance has dimension " + std::to_string(e.size()) +
                            ", model expects " + std::to_string(cfg.text_dim));
    }
    const double s = cfg.use_taxonomy ? separation(point(q.category), point(c.category), cfg.geometry) : 0.0;
    out.push_back({id, sigmoid(model.head.forward(features_with(e, s)))});
  }
  std::sort(out.begin(), out.end(), [](const ScoredId& a, const ScoredId& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  return out;
}

}  // namespace symtax
