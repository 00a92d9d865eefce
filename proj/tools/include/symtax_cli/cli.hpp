// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "symtax/embedder.hpp"

namespace symtax::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitMissing = 2;
inline constexpr int kExitNumeric = 3;

/// Everything a workflow step needs. Relative paths in a config file are
/// resolved against the directory holding that file.
struct RunConfig {
  std::string papers;
  std::string contexts;
  std::string mapping;
  std::string acm_tree;
  std::string work_dir = "work";
  std::string index;       // default: <work_dir>/index.bin
  std::string fused;       // default: <work_dir>/fused.tsv
  std::string checkpoint;  // default: <work_dir>/model.ckpt

  std::string embedder = "hashed";  // hashed | precomputed
  std::size_t embedding_dim = 768;
  std::uint64_t embedding_seed = 0;
  std::string embedding_table;  // precomputed only

  std::size_t prefetch_m = 100;
  std::size_t enrich_cap = 300;
  std::string fusion = "graph";
  double fusion_alpha = 0.1;
  std::size_t fusion_iters = 10;
  std::string geometry = "paper-atan";
  double margin = 0.1;
  std::size_t proj_hidden = 512;
  std::size_t proj_dim = 512;
  std::size_t head_hidden = 128;

  std::size_t epochs = 20;
  double learning_rate = 1e-3;
  double weight_decay = 1e-5;
  std::size_t batch_size = 32;
  std::size_t negatives = 4;

  double split_train = 0.8;
  double split_val = 0.1;
  double split_test = 0.1;

  std::string ablation = "none";
  std::uint64_t seed = 12;

  /// Throws ValidationError on unknown keys or out-of-range values.
  static RunConfig parse(const std::string& json_text, const std::string& base_dir);
  static RunConfig load(const std::string& path);
  std::string to_json() const;

  /// Fills the derived artifact paths and checks every numeric range.
  void finalize();

  std::string train_split() const;
  std::string val_split() const;
  std::string test_split() const;
};

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& config);

/// Standard desk-scale configuration written by `synth` next to its corpus.
RunConfig standard_synthetic_config();

/// Entry point shared by the executable and the tests. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symtax::cli
