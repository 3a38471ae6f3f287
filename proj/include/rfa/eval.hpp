// Copyright 2026 The RFA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Node classification protocol: repeated train/test splits, logistic
// regression on frozen embeddings, micro/macro F1, and the normalized
// time/quality trade-off score.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rfa/matrix.hpp"

namespace rfa {

enum class LabelKind { kMulticlass, kMultilabel };

LabelKind parse_label_kind(const std::string& s);

// Per-node label sets. Multiclass nodes carry exactly one label; multilabel
// nodes carry a sorted set, and an empty set marks an unlabeled node.
struct LabelSet {
  LabelKind kind = LabelKind::kMulticlass;
  std::size_t num_classes = 0;
  std::vector<std::vector<int>> labels;

  std::size_t size() const { return labels.size(); }
  bool labeled(std::size_t i) const { return !labels[i].empty(); }

  static LabelSet multiclass(std::span<const int> per_node);
  void validate() const;
};

// Reads `node_id label` (multiclass) or `node_id l1,l2,...` (multilabel)
// lines and aligns them with `row_ids`, the external id of each embedding
// row. Label values are compacted to 0..C-1 in ascending order. Throws
// DomainError listing the first rows without a label (multiclass) or, unless
// `ignore_unknown_ids` is set, the first label lines whose id has no row.
LabelSet load_labels(const std::string& path, LabelKind kind,
                     std::span<const std::int64_t> row_ids, bool ignore_unknown_ids = false);
void save_labels(const std::string& path, std::span<const int> labels,
                 std::span<const std::int64_t> row_ids);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Multiclass: each class contributes ceil(ratio * count) shuffled members to
// train. Multilabel: a uniform ceil(ratio * labeled) subset. Both sorted.
Split split(const LabelSet& labels, double train_ratio, std::uint64_t seed);

struct ClassifierOptions {
  double l2 = 1e-4;
  double grad_tol = 1e-5;
  int max_epochs = 500;
};

// Linear scores W x + b. Softmax over classes for multiclass, independent
// sigmoids (one-vs-rest) for multilabel.
struct Classifier {
  LabelKind kind = LabelKind::kMulticlass;
  Eigen::MatrixXd weights;  // classes x dim
  Eigen::VectorXd bias;     // classes
  int epochs = 0;           // largest epoch count over the sub-problems

  std::size_t dim() const { return static_cast<std::size_t>(weights.cols()); }
  std::size_t num_classes() const { return static_cast<std::size_t>(weights.rows()); }
};

// Minimizes mean cross-entropy + (l2 / 2) ||W||^2 from zero weights by
// full-batch gradient descent with backtracking line search.
Classifier fit_classifier(const EmbeddingMatrix& z, const LabelSet& labels,
                          std::span<const std::size_t> train,
                          const ClassifierOptions& options = {});

// Raw scores (logits) for one row.
Eigen::VectorXd class_scores(const Classifier& c, std::span<const double> row);

// Index of the maximum score; lowest index on ties.
int argmax_class(std::span<const double> scores);
// The k highest scoring classes, ascending by id; lower ids win ties.
std::vector<int> top_k_classes(std::span<const double> scores, std::size_t k);

// Multiclass: argmax. Multilabel: top-k with k the node's true label count.
std::vector<std::vector<int>> predict(const Classifier& c, const EmbeddingMatrix& z,
                                      std::span<const std::size_t> ids,
                                      const LabelSet& labels);

struct F1 {
  double micro = 0.0;
  double macro = 0.0;
};

// Pooled (micro) and per-label averaged (macro) F1. Labels with neither
// support nor predictions are left out of the macro mean.
F1 f1_scores(std::span<const std::vector<int>> predicted,
             std::span<const std::vector<int>> truth, std::size_t num_classes);

struct ProtocolOptions {
  int trials = 10;
  double train_ratio = 0.2;
  std::uint64_t seed = 0;
  ClassifierOptions classifier;
};

struct EvalReport {
  double micro_mean = 0.0;
  double micro_std = 0.0;
  double macro_mean = 0.0;
  double macro_std = 0.0;
  int trials = 0;
  double train_ratio = 0.0;
  double inference_time_sec = 0.0;
  std::vector<F1> per_trial;

  std::string to_json() const;
};

// Runs `trials` independent split/fit/predict/score rounds and aggregates
// means and population standard deviations.
EvalReport run_protocol(const EmbeddingMatrix& z, const LabelSet& labels,
                        const ProtocolOptions& options = {});

// Normalized trade-off score per method: ((t_max - t) / (t_max - t_min)) *
// ((q - q_min) / (q_max - q_min)). Needs at least two methods and a non-zero
// range on both axes.
std::vector<double> ntos(std::span<const double> times, std::span<const double> qualities);

struct MethodResult {
  std::string method;
  double time_sec = 0.0;
  double metric = 0.0;
};

// CSV `method,time_sec,metric`, optional header line.
std::vector<MethodResult> load_results_csv(const std::string& path);

}  // namespace rfa
