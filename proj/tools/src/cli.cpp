// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax_cli/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symtax/corpus.hpp"
#include "symtax/enricher.hpp"
#include "symtax/eval.hpp"
#include "symtax/matcher.hpp"
#include "symtax/pipeline.hpp"
#include "symtax/prefetch.hpp"
#include "symtax/reranker.hpp"
#include "symtax/synthetic.hpp"
#include "symtax/taxonomy.hpp"

namespace symtax::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

std::string in_work(const RunConfig& c, const char* name) { return (fs::path(c.work_dir) / name).string(); }

template <typename T>
void read_key(const json& obj, const char* key, T& field, const char* scope) {
  if (!obj.contains(key)) return;
  try {
    field = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: bad value for '") + scope + key + "'");
  }
}

void check_keys(const json& obj, const std::set<std::string>& known, const std::string& scope) {
  if (!obj.is_object()) throw ValidationError("config: '" + scope + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ValidationError("config: unknown key '" + scope + key + "'");
  }
}

}  // namespace

RunConfig RunConfig::parse(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON (") + e.what() + ")");
  }
  check_keys(j,
             {"papers", "contexts", "mapping", "acm_tree", "work_dir", "index", "fused", "checkpoint",
              "embedder", "prefetch_m", "enrich_cap", "fusion", "fusion_alpha", "fusion_iters",
              "geometry", "margin", "model", "train", "split", "ablation", "seed"},
             "");
  RunConfig c;
  read_key(j, "papers", c.papers, "");
  read_key(j, "contexts", c.contexts, "");
  read_key(j, "mapping", c.mapping, "");
  read_key(j, "acm_tree", c.acm_tree, "");
  read_key(j, "work_dir", c.work_dir, "");
  read_key(j, "index", c.index, "");
  read_key(j, "fused", c.fused, "");
  read_key(j, "checkpoint", c.checkpoint, "");
  if (j.contains("embedder")) {
    const auto& e = j["embedder"];
    check_keys(e, {"kind", "dim", "seed", "table"}, "embedder.");
    read_key(e, "kind", c.embedder, "embedder.");
    read_key(e, "dim", c.embedding_dim, "embedder.");
    read_key(e, "seed", c.embedding_seed, "embedder.");
    read_key(e, "table", c.embedding_table, "embedder.");
  }
  read_key(j, "prefetch_m", c.prefetch_m, "");
  read_key(j, "enrich_cap", c.enrich_cap, "");
  read_key(j, "fusion", c.fusion, "");
  read_key(j, "fusion_alpha", c.fusion_alpha, "");
  read_key(j, "fusion_iters", c.fusion_iters, "");
  read_key(j, "geometry", c.geometry, "");
  read_key(j, "margin", c.margin, "");
  if (j.contains("model")) {
    const auto& m = j["model"];
    check_keys(m, {"proj_hidden", "proj_dim", "head_hidden"}, "model.");
    read_key(m, "proj_hidden", c.proj_hidden, "model.");
    read_key(m, "proj_dim", c.proj_dim, "model.");
    read_key(m, "head_hidden", c.head_hidden, "model.");
  }
  if (j.contains("train")) {
    const auto& t = j["train"];
    check_keys(t, {"epochs", "learning_rate", "weight_decay", "batch_size", "negatives"}, "train.");
    read_key(t, "epochs", c.epochs, "train.");
    read_key(t, "learning_rate", c.learning_rate, "train.");
    read_key(t, "weight_decay", c.weight_decay, "train.");
    read_key(t, "batch_size", c.batch_size, "train.");
    read_key(t, "negatives", c.negatives, "train.");
  }
  if (j.contains("split")) {
    const auto& s = j["split"];
    check_keys(s, {"train", "val", "test"}, "split.");
    read_key(s, "train", c.split_train, "split.");
    read_key(s, "val", c.split_val, "split.");
    read_key(s, "test", c.split_test, "split.");
  }
  read_key(j, "ablation", c.ablation, "");
  read_key(j, "seed", c.seed, "");

  for (auto* p : {&c.papers, &c.contexts, &c.mapping, &c.acm_tree, &c.work_dir, &c.index, &c.fused,
                  &c.checkpoint, &c.embedding_table}) {
    *p = resolve(base_dir, *p);
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  const auto base = fs::path(path).parent_path().string();
  return parse(read_file(path), base.empty() ? "." : base);
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["papers"] = papers;
  j["contexts"] = contexts;
  j["mapping"] = mapping;
  j["acm_tree"] = acm_tree;
  j["work_dir"] = work_dir;
  if (!index.empty()) j["index"] = index;
  if (!fused.empty()) j["fused"] = fused;
  if (!checkpoint.empty()) j["checkpoint"] = checkpoint;
  ordered_json e;
  e["kind"] = embedder;
  e["dim"] = embedding_dim;
  e["seed"] = embedding_seed;
  if (!embedding_table.empty()) e["table"] = embedding_table;
  j["embedder"] = e;
  j["prefetch_m"] = prefetch_m;
  j["enrich_cap"] = enrich_cap;
  j["fusion"] = fusion;
  j["fusion_alpha"] = fusion_alpha;
  j["fusion_iters"] = fusion_iters;
  j["geometry"] = geometry;
  j["margin"] = margin;
  j["model"] = ordered_json{{"proj_hidden", proj_hidden}, {"proj_dim", proj_dim}, {"head_hidden", head_hidden}};
  j["train"] = ordered_json{{"epochs", epochs},
                            {"learning_rate", learning_rate},
                            {"weight_decay", weight_decay},
                            {"batch_size", batch_size},
                            {"negatives", negatives}};
  j["split"] = ordered_json{{"train", split_train}, {"val", split_val}, {"test", split_test}};
  j["ablation"] = ablation;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

void RunConfig::finalize() {
  if (index.empty()) index = in_work(*this, "index.bin");
  if (fused.empty()) fused = in_work(*this, "fused.tsv");
  if (checkpoint.empty()) checkpoint = in_work(*this, "model.ckpt");
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("config: ") + what);
  };
  require(embedder == "hashed" || embedder == "precomputed", "embedder.kind must be hashed|precomputed");
  require(embedder != "precomputed" || !embedding_table.empty(), "embedder.table is required for precomputed");
  require(embedding_dim >= 1, "embedder.dim must be >= 1");
  require(prefetch_m >= 1, "prefetch_m must be >= 1");
  require(enrich_cap >= 1, "enrich_cap must be >= 1");
  require(fusion_alpha > 0.0 && fusion_alpha <= 1.0, "fusion_alpha must be in (0, 1]");
  require(margin > 0.0, "margin must be > 0");
  require(proj_hidden >= 1 && proj_dim >= 1 && head_hidden >= 1, "model widths must be >= 1");
  require(learning_rate > 0.0, "train.learning_rate must be > 0");
  require(weight_decay >= 0.0, "train.weight_decay must be >= 0");
  require(batch_size >= 1, "train.batch_size must be >= 1");
  require(split_train >= 0.0 && split_val >= 0.0 && split_test >= 0.0, "split fractions must be >= 0");
  parse_fusion_mode(fusion);
  parse_geometry_mode(geometry);
  parse_ablation(ablation);
}

std::string RunConfig::train_split() const { return in_work(*this, "train.jsonl"); }
std::string RunConfig::val_split() const { return in_work(*this, "val.jsonl"); }
std::string RunConfig::test_split() const { return in_work(*this, "test.jsonl"); }

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& c) {
  if (c.embedder == "precomputed") {
    return load_precomputed(c.embedding_table);
  }
  return std::make_unique<HashedTokenEmbedder>(c.embedding_dim, c.embedding_seed);
}

RunConfig standard_synthetic_config() {
  RunConfig c;
  c.papers = "papers.jsonl";
  c.contexts = "contexts.jsonl";
  c.mapping = "mapping.json";
  c.acm_tree = "acm_tree.json";
  c.work_dir = "work";
  // A 200-paper corpus keeps the candidate pool at the same 1:3 ratio as
  // 100 prefetched / 300 enriched, but small enough that enrichment matters.
  c.prefetch_m = 20;
  c.enrich_cap = 60;
  c.learning_rate = 0.1;
  return c;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> papers, contexts, mapping, acm_tree, work_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> prefetch_m, enrich_cap, epochs;
  std::optional<double> learning_rate, margin;
  std::optional<std::string> geometry, fusion, ablation;
};

void add_config_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Run configuration JSON");
  cmd->add_option("--papers", o.papers, "Papers JSONL (overrides config)");
  cmd->add_option("--contexts", o.contexts, "Contexts JSONL (overrides config)");
  cmd->add_option("--mapping", o.mapping, "Class-to-ACM mapping JSON");
  cmd->add_option("--acm-tree", o.acm_tree, "ACM tree JSON");
  cmd->add_option("--work-dir", o.work_dir, "Directory for derived artifacts");
  cmd->add_option("--seed", o.seed, "Global seed");
  cmd->add_option("--prefetch-m", o.prefetch_m, "Prefetched candidates per query");
  cmd->add_option("--enrich-cap", o.enrich_cap, "Enriched candidate cap");
  cmd->add_option("--epochs", o.epochs, "Training epochs");
  cmd->add_option("--lr", o.learning_rate, "Learning rate");
  cmd->add_option("--margin", o.margin, "Triplet margin");
  cmd->add_option("--geometry", o.geometry, "paper-atan | artanh | euclidean");
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  if (o.papers) c.papers = *o.papers;
  if (o.contexts) c.contexts = *o.contexts;
  if (o.mapping) c.mapping = *o.mapping;
  if (o.acm_tree) c.acm_tree = *o.acm_tree;
  if (o.work_dir) c.work_dir = *o.work_dir;
  if (o.seed) c.seed = *o.seed;
  if (o.prefetch_m) c.prefetch_m = *o.prefetch_m;
  if (o.enrich_cap) c.enrich_cap = *o.enrich_cap;
  if (o.epochs) c.epochs = *o.epochs;
  if (o.learning_rate) c.learning_rate = *o.learning_rate;
  if (o.margin) c.margin = *o.margin;
  if (o.geometry) c.geometry = *o.geometry;
  if (o.fusion) c.fusion = *o.fusion;
  if (o.ablation) c.ablation = *o.ablation;
  c.finalize();
  return c;
}

void require_path(const std::string& path, const char* what) {
  if (path.empty()) throw ValidationError(std::string("no ") + what + " path configured");
}

Corpus work_corpus(const RunConfig& c) { return load_papers(in_work(c, "papers.jsonl")); }

std::vector<CitationContext> work_contexts(const std::string& path, const Corpus& corpus) {
  return load_contexts(path, corpus).contexts;
}

/// Built artifacts shared by train, recommend and evaluate.
struct Workspace {
  Corpus corpus;
  CitationGraph graph;
  DenseIndex index;
  std::unique_ptr<EmbeddingProvider> provider;
  FusedClassEmbeddings fused;

  explicit Workspace(const RunConfig& c)
      : corpus(work_corpus(c)),
        graph(build_citation_graph(work_contexts(in_work(c, "contexts.jsonl"), corpus), corpus)),
        index(DenseIndex::load(c.index)),
        provider(make_provider(c)),
        fused(load_fused(c.fused)) {}

  Pipeline pipeline(const RunConfig& c, const RerankerModel& model, const AblationConfig& ablation) const {
    return Pipeline{corpus, graph, index, *provider, fused, model, {c.prefetch_m, c.enrich_cap, ablation}};
  }
};

int cmd_synth(const std::string& out_dir, std::uint64_t seed, std::size_t clusters, std::size_t per_cluster,
              double intra, std::ostream& out) {
  SyntheticSpec spec;
  spec.seed = seed;
  spec.n_clusters = clusters;
  spec.papers_per_cluster = per_cluster;
  spec.intra_cluster_probability = intra;
  const auto corpus = generate_synthetic(spec);
  fs::create_directories(out_dir);
  write_synthetic(corpus, out_dir);
  RunConfig run = standard_synthetic_config();
  run.seed = seed;
  write_file((fs::path(out_dir) / "run.json").string(), run.to_json());
  out << "synthetic corpus: " << corpus.papers.size() << " papers, " << corpus.contexts.size()
      << " contexts, " << clusters << " clusters -> " << out_dir << "\n";
  return kExitOk;
}

int cmd_ingest(const RunConfig& c, bool stats_only, std::ostream& out) {
  require_path(c.papers, "papers");
  require_path(c.contexts, "contexts");
  const Corpus corpus = load_papers(c.papers);
  const ContextSet ctx = load_contexts(c.contexts, corpus);
  if (!c.mapping.empty() && !c.acm_tree.empty()) validate_categories(load_taxonomy(c.mapping, c.acm_tree), corpus);
  const GraphStats stats = graph_stats(build_citation_graph(ctx.contexts, corpus), &corpus);
  if (stats_only) {
    out << stats_to_json(stats) << stats_to_text(stats);
    return kExitOk;
  }
  const auto split =
      split_contexts(ctx.contexts, SplitSpec{c.split_train, c.split_val, c.split_test, derive_seed(c.seed, "split")});
  fs::create_directories(c.work_dir);
  write_file(in_work(c, "papers.jsonl"), to_jsonl(corpus.papers()));
  write_file(in_work(c, "contexts.jsonl"), to_jsonl(ctx.contexts));
  write_file(c.train_split(), to_jsonl(split.train));
  write_file(c.val_split(), to_jsonl(split.val));
  write_file(c.test_split(), to_jsonl(split.test));
  write_file(in_work(c, "stats.json"), stats_to_json(stats));
  write_file(in_work(c, "stats.txt"), stats_to_text(stats));
  out << stats_to_text(stats);
  out << "contexts: " << ctx.contexts.size() << " kept, " << ctx.dropped_self_citation << " self-citations, "
      << ctx.dropped_unknown_cited << " unknown cited, " << ctx.dropped_unknown_citing
      << " unknown citing dropped\n";
  out << "split: " << split.train.size() << " train, " << split.val.size() << " val, " << split.test.size()
      << " test -> " << c.work_dir << "\n";
  return kExitOk;
}

int cmd_build_index(const RunConfig& c, std::ostream& out) {
  const Corpus corpus = work_corpus(c);
  const auto provider = make_provider(c);
  const DenseIndex index = build_dense_index(corpus, *provider);
  if (const auto dir = fs::path(c.index).parent_path(); !dir.empty()) fs::create_directories(dir);
  index.save(c.index);
  out << "indexed " << index.size() << " papers (dim " << index.dimension() << ") -> " << c.index << "\n";
  return kExitOk;
}

int cmd_fuse(const RunConfig& c, std::ostream& out) {
  require_path(c.mapping, "mapping");
  require_path(c.acm_tree, "acm_tree");
  const Taxonomy tax = load_taxonomy(c.mapping, c.acm_tree);
  const auto provider = make_provider(c);
  const auto fused = fuse(tax, *provider, parse_fusion_mode(c.fusion), c.fusion_alpha, c.fusion_iters);
  if (const auto dir = fs::path(c.fused).parent_path(); !dir.empty()) fs::create_directories(dir);
  save_fused(fused, c.fused);
  out << "fused " << fused.vectors.size() << " classes (" << to_string(fused.mode) << ", dim " << fused.dimension
      << ") -> " << c.fused << "\n";
  return kExitOk;
}

int cmd_train(const RunConfig& c, const std::string& out_path, std::ostream& out) {
  const Workspace ws(c);
  const auto train_contexts = work_contexts(c.train_split(), ws.corpus);
  const AblationConfig ablation = parse_ablation(c.ablation);

  RerankerConfig rc;
  rc.text_dim = ws.provider->dimension();
  rc.fused_dim = ws.fused.dimension;
  rc.proj_hidden = c.proj_hidden;
  rc.proj_dim = c.proj_dim;
  rc.head_hidden = c.head_hidden;
  rc.margin = c.margin;
  rc.geometry = parse_geometry_mode(c.geometry);
  RerankerModel model = apply_ablation(RerankerModel::initialize(rc, c.seed), ablation);

  const auto queries = training_queries(ws.pipeline(c, model, ablation), train_contexts);
  TrainOptions opts;
  opts.epochs = c.epochs;
  opts.learning_rate = c.learning_rate;
  opts.weight_decay = c.weight_decay;
  opts.batch_size = c.batch_size;
  opts.negatives = c.negatives;
  opts.seed = c.seed;
  const TrainResult result = train(model, queries, ws.corpus, ws.fused, *ws.provider, opts);

  const std::string path = out_path.empty() ? c.checkpoint : out_path;
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  model.save(path);

  ordered_json j;
  j["queries"] = queries.size();
  j["triplets_per_epoch"] = result.triplets_per_epoch;
  j["epoch_loss"] = result.epoch_loss;
  out << j.dump() << "\n";
  char line[64];
  for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
    std::snprintf(line, sizeof line, "epoch %3zu  loss %.6f\n", e + 1, result.epoch_loss[e]);
    out << line;
  }
  out << "checkpoint -> " << path << "\n";
  return kExitOk;
}

QueryBundle parse_query(const std::string& text, const Corpus& corpus) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("query: malformed JSON (") + e.what() + ")");
  }
  check_keys(j, {"citing_id", "context", "title", "abstract", "category", "section_heading"}, "query.");
  QueryBundle q;
  read_key(j, "citing_id", q.citing_id, "query.");
  read_key(j, "context", q.context, "query.");
  if (q.context.empty()) throw ValidationError("query: 'context' is required");
  if (const Paper* p = corpus.find(q.citing_id)) {
    q.title = p->title;
    q.abstract = p->abstract;
    q.category = p->category;
  }
  read_key(j, "title", q.title, "query.");
  read_key(j, "abstract", q.abstract, "query.");
  read_key(j, "category", q.category, "query.");
  if (j.contains("section_heading")) {
    std::string s;
    read_key(j, "section_heading", s, "query.");
    q.section_heading = s;
  }
  return q;
}

int cmd_recommend(const RunConfig& c, const std::string& model_path, const std::string& query_path, std::size_t k,
                  std::ostream& out) {
  const AblationConfig ablation = parse_ablation(c.ablation);
  const RerankerModel model =
      apply_ablation(RerankerModel::load(model_path.empty() ? c.checkpoint : model_path), ablation);
  const Workspace ws(c);
  const QueryBundle q = parse_query(read_file(query_path), ws.corpus);
  if (model.config.use_taxonomy && !ablation.prefetch_only && q.category.empty()) {
    throw ValidationError("query: 'category' is required when the taxonomy feature is on");
  }
  const RankedList ranked = recommend(ws.pipeline(c, model, ablation), q);
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    ordered_json line;
    line["rank"] = i + 1;
    line["id"] = ranked[i].id;
    line["score"] = ranked[i].score;
    line["title"] = ws.corpus.at(ranked[i].id).title;
    out << line.dump() << "\n";
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& c, const std::string& model_path, const std::string& test_path,
                 const std::string& report_prefix, std::ostream& out) {
  const AblationConfig ablation = parse_ablation(c.ablation);
  const RerankerModel model =
      apply_ablation(RerankerModel::load(model_path.empty() ? c.checkpoint : model_path), ablation);
  const Workspace ws(c);
  const auto test = work_contexts(test_path.empty() ? c.test_split() : test_path, ws.corpus);
  const MetricReport report = evaluate(ws.pipeline(c, model, ablation), test);
  const std::string as_json = report_to_json(report, ablation);
  const std::string as_text = report_to_text(report, ablation);
  if (!report_prefix.empty()) {
    write_file(report_prefix + ".json", as_json);
    write_file(report_prefix + ".txt", as_text);
  }
  out << as_json << as_text;
  return kExitOk;
}

int cmd_match_titles(const std::string& papers_path, const std::string& queries_path, double threshold,
                     std::ostream& out) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ValidationError("threshold must be in [0, 1]");
  const Corpus corpus = load_papers(papers_path);
  const LshIndex index = build_lsh_index(corpus);
  std::istringstream lines(read_file(queries_path));
  std::string title;
  char sim[32];
  while (std::getline(lines, title)) {
    if (!title.empty() && title.back() == '\r') title.pop_back();
    if (title.find_first_not_of(" \t") == std::string::npos) continue;
    const auto m = match_title(title, index, corpus, threshold);
    std::snprintf(sim, sizeof sim, "%.4f", m ? m->similarity : 0.0);
    out << title << '\t' << (m ? m->id : std::string("NONE")) << '\t' << sim << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symtax: local citation recommendation (prefetch, enrich, taxonomy-aware rerank)", "symtax"};
  app.require_subcommand(1);

  Overrides o;
  std::string out_dir;
  std::uint64_t synth_seed = 12;
  std::size_t clusters = 4, per_cluster = 50;
  double intra = 0.9;
  bool stats_only = false;
  std::string model_path, query_path, test_path, report_prefix, ckpt_out;
  std::size_t k = 10;
  std::string papers_path, queries_path;
  double threshold = 0.9;

  auto* synth = app.add_subcommand("synth", "Generate a clustered synthetic corpus and run.json");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Seed");
  synth->add_option("--clusters", clusters, "Number of clusters");
  synth->add_option("--papers-per-cluster", per_cluster, "Papers per cluster");
  synth->add_option("--intra", intra, "Intra-cluster citation probability");

  auto* ingest = app.add_subcommand("ingest", "Validate inputs, split contexts, report graph statistics");
  add_config_options(ingest, o);
  ingest->add_flag("--stats-only", stats_only, "Print statistics without writing anything");

  auto* build_index = app.add_subcommand("build-index", "Embed every paper into the dense prefetch index");
  add_config_options(build_index, o);

  auto* fuse_cmd = app.add_subcommand("fuse", "Fuse class and ACM concept embeddings");
  add_config_options(fuse_cmd, o);
  fuse_cmd->add_option("--mode", o.fusion, "vector | graph");

  auto* train_cmd = app.add_subcommand("train", "Train the reranker on the training split");
  add_config_options(train_cmd, o);
  train_cmd->add_option("--out", ckpt_out, "Checkpoint path");
  train_cmd->add_option("--ablation", o.ablation, "Comma-separated ablation flags");

  auto* recommend_cmd = app.add_subcommand("recommend", "Rank candidates for one query");
  add_config_options(recommend_cmd, o);
  recommend_cmd->add_option("--model", model_path, "Checkpoint path");
  recommend_cmd->add_option("--query", query_path, "Query JSON")->required();
  recommend_cmd->add_option("--k", k, "Number of results")->check(CLI::PositiveNumber);
  recommend_cmd->add_option("--ablation", o.ablation, "Comma-separated ablation flags");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate on test contexts");
  add_config_options(evaluate_cmd, o);
  evaluate_cmd->add_option("--model", model_path, "Checkpoint path");
  evaluate_cmd->add_option("--test", test_path, "Test contexts JSONL");
  evaluate_cmd->add_option("--ablation", o.ablation, "Comma-separated ablation flags");
  evaluate_cmd->add_option("--out", report_prefix, "Also write <prefix>.json and <prefix>.txt");

  auto* match_cmd = app.add_subcommand("match-titles", "Resolve free-text titles to corpus ids");
  match_cmd->add_option("--index", papers_path, "Papers JSONL to match against")->required();
  match_cmd->add_option("--queries", queries_path, "One title per line")->required();
  match_cmd->add_option("--threshold", threshold, "Minimum LCS similarity");

  std::vector<const char*> argv{"symtax"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*synth) return cmd_synth(out_dir, synth_seed, clusters, per_cluster, intra, out);
    if (*match_cmd) return cmd_match_titles(papers_path, queries_path, threshold, out);
    const RunConfig c = resolve_config(o);
    if (*ingest) return cmd_ingest(c, stats_only, out);
    if (*build_index) return cmd_build_index(c, out);
    if (*fuse_cmd) return cmd_fuse(c, out);
    if (*train_cmd) return cmd_train(c, ckpt_out, out);
    if (*recommend_cmd) return cmd_recommend(c, model_path, query_path, k, out);
    if (*evaluate_cmd) return cmd_evaluate(c, model_path, test_path, report_prefix, out);
  } catch (const MissingArtifactError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissing;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace symtax::cli
