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

#include "rfa/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <string_view>
#include <unordered_map>

#include "json.hpp"
#include "rfa/error.hpp"

namespace rfa {

LabelKind parse_label_kind(const std::string& s) {
  if (s == "multiclass") return LabelKind::kMulticlass;
  if (s == "multilabel") return LabelKind::kMultilabel;
  throw DomainError("unknown label kind '" + s + "' (expected multiclass or multilabel)");
}

LabelSet LabelSet::multiclass(std::span<const int> per_node) {
  LabelSet out;
  out.kind = LabelKind::kMulticlass;
  out.labels.reserve(per_node.size());
  int max_label = -1;
  for (int l : per_node) {
    if (l < 0) throw DomainError("class ids must be non-negative");
    out.labels.push_back({l});
    max_label = std::max(max_label, l);
  }
  out.num_classes = static_cast<std::size_t>(max_label + 1);
  return out;
}

void LabelSet::validate() const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& set = labels[i];
    if (kind == LabelKind::kMulticlass && set.size() != 1) {
      throw DomainError("multiclass node " + std::to_string(i) + " needs exactly one label");
    }
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] < 0 || static_cast<std::size_t>(set[k]) >= num_classes) {
        throw DomainError("label out of range at node " + std::to_string(i));
      }
      if (k > 0 && set[k - 1] >= set[k]) {
        throw DomainError("label set of node " + std::to_string(i) + " is not sorted/unique");
      }
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size() && k < 5; ++k) {
    out += (k ? ", " : "") + std::to_string(ids[k]);
  }
  if (ids.size() > 5) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

LabelSet load_labels(const std::string& path, LabelKind kind,
                     std::span<const std::int64_t> row_ids, bool ignore_unknown_ids) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open label file '" + path + "'");

  std::unordered_map<std::int64_t, std::size_t> row_of;
  for (std::size_t r = 0; r < row_ids.size(); ++r) row_of.emplace(row_ids[r], r);

  std::vector<std::vector<int>> raw(row_ids.size());
  std::vector<std::int64_t> unknown;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto sep = view.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError("expected `node_id label`", line_no);
    std::int64_t id = 0;
    if (!parse_number(view.substr(0, sep), id)) throw ParseError("bad node id", line_no);
    std::string_view rest = trim(view.substr(sep));
    if (rest.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("labels must be comma-separated without spaces", line_no);
    }

    std::vector<int> values;
    while (true) {
      const auto comma = rest.find(',');
      int v = 0;
      if (!parse_number(rest.substr(0, comma), v)) throw ParseError("bad label value", line_no);
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (kind == LabelKind::kMulticlass && values.size() != 1) {
      throw ParseError("multiclass labels take a single value", line_no);
    }

    const auto it = row_of.find(id);
    if (it == row_of.end()) {
      unknown.push_back(id);
      continue;
    }
    auto& dst = raw[it->second];
    if (kind == LabelKind::kMulticlass && !dst.empty() && dst.front() != values.front()) {
      throw ParseError("conflicting labels for node " + std::to_string(id), line_no);
    }
    dst.insert(dst.end(), values.begin(), values.end());
  }
  if (!unknown.empty() && !ignore_unknown_ids) {
    throw DomainError("label file has ids without an embedding row: " + join_ids(unknown));
  }

  std::vector<int> distinct;
  for (const auto& set : raw) distinct.insert(distinct.end(), set.begin(), set.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  LabelSet out;
  out.kind = kind;
  out.num_classes = distinct.size();
  out.labels.resize(raw.size());
  std::vector<std::int64_t> missing;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    for (int v : raw[r]) {
      out.labels[r].push_back(
          static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()));
    }
    auto& set = out.labels[r];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (kind == LabelKind::kMulticlass && set.empty()) missing.push_back(row_ids[r]);
  }
  if (!missing.empty()) {
    throw DomainError("embedding rows without a label: " + join_ids(missing));
  }
  return out;
}

void save_labels(const std::string& path, std::span<const int> labels,
                 std::span<const std::int64_t> row_ids) {
  if (labels.size() != row_ids.size()) throw DomainError("label count does not match ids");
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  for (std::size_t i = 0; i < labels.size(); ++i) out << row_ids[i] << ' ' << labels[i] << '\n';
  if (!out) throw DomainError("write failed for '" + path + "'");
}

Split split(const LabelSet& labels, double train_ratio, std::uint64_t seed) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    throw DomainError("train ratio must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  // The epsilon keeps products such as 0.2 * 50 from rounding up to 11.
  auto take = [train_ratio](std::size_t count) {
    const auto want = static_cast<std::size_t>(
        std::ceil(train_ratio * static_cast<double>(count) - 1e-9));
    return std::clamp<std::size_t>(want, 1, count - 1);
  };

  Split out;
  if (labels.kind == LabelKind::kMulticlass) {
    std::vector<std::vector<std::size_t>> members(labels.num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels.labeled(i)) members[static_cast<std::size_t>(labels.labels[i].front())].push_back(i);
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
      auto& m = members[c];
      if (m.size() < 2) {
        throw DomainError("class " + std::to_string(c) + " has fewer than 2 labeled nodes");
      }
      std::shuffle(m.begin(), m.end(), rng);
      const std::size_t k = take(m.size());
      out.train.insert(out.train.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k));
      out.test.insert(out.test.end(), m.begin() + static_cast<std::ptrdiff_t>(k), m.end());
    }
  } else {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels.labeled(i)) nodes.push_back(i);
    }
    if (nodes.size() < 2) throw DomainError("need at least 2 labeled nodes to split");
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const std::size_t k = take(nodes.size());
    out.train.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k));
    out.test.assign(nodes.begin() + static_cast<std::ptrdiff_t>(k), nodes.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

namespace {

// Gradient descent with Armijo backtracking. `objective(theta, grad)` returns
// the loss and fills `grad` when it is non-null. Returns the epochs used.
template <typename Objective>
int minimize(const Objective& objective, Eigen::VectorXd& theta, const ClassifierOptions& opt) {
  constexpr double kArmijo = 1e-4;
  Eigen::VectorXd grad(theta.size());
  Eigen::VectorXd candidate(theta.size());
  double loss = objective(theta, &grad);
  double step = 1.0;
  int epoch = 0;
  for (; epoch < opt.max_epochs; ++epoch) {
    const double grad_sq = grad.squaredNorm();
    if (std::sqrt(grad_sq) <= opt.grad_tol) break;
    step = std::min(step * 2.0, 1e4);
    double next_loss = 0.0;
    while (true) {
      candidate = theta - step * grad;
      next_loss = objective(candidate, nullptr);
      if (next_loss <= loss - kArmijo * step * grad_sq) break;
      step *= 0.5;
      if (step < 1e-16) return epoch;
    }
    theta.swap(candidate);
    loss = objective(theta, &grad);
  }
  return epoch;
}

Eigen::MatrixXd gather_rows(const EmbeddingMatrix& z, std::span<const std::size_t> ids) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(z.cols()));
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const auto row = z.row(ids[r]);
    for (std::size_t j = 0; j < z.cols(); ++j) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  return x;
}

double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }
double sigmoid(double t) {
  return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

}  // namespace

Classifier fit_classifier(const EmbeddingMatrix& z, const LabelSet& labels,
                          std::span<const std::size_t> train, const ClassifierOptions& options) {
  if (train.empty()) throw DomainError("training set is empty");
  if (labels.size() != z.rows()) throw DomainError("label count does not match embedding rows");
  for (double v : z.data()) {
    if (!std::isfinite(v)) throw DomainError("embeddings contain non-finite values");
  }

  const Eigen::MatrixXd x = gather_rows(z, train);
  const Eigen::Index m = x.rows();
  const Eigen::Index d = x.cols();
  const auto classes = static_cast<Eigen::Index>(labels.num_classes);
  const double inv_m = 1.0 / static_cast<double>(m);
  const double l2 = options.l2;

  Classifier c;
  c.kind = labels.kind;
  c.weights = Eigen::MatrixXd::Zero(classes, d);
  c.bias = Eigen::VectorXd::Zero(classes);

  if (labels.kind == LabelKind::kMulticlass) {
    std::vector<int> y(static_cast<std::size_t>(m));
    std::vector<bool> seen(labels.num_classes, false);
    for (Eigen::Index r = 0; r < m; ++r) {
      y[static_cast<std::size_t>(r)] = labels.labels[train[static_cast<std::size_t>(r)]].front();
      seen[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])] = true;
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (!seen[k]) throw DomainError("class " + std::to_string(k) + " is absent from training ids");
    }

    // theta = [vec(W) (column-major, classes x d); b]
    auto objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd* grad) {
      const Eigen::Map<const Eigen::MatrixXd> w(theta.data(), classes, d);
      const auto b = theta.tail(classes);
      Eigen::MatrixXd logits = x * w.transpose();
      logits.rowwise() += b.transpose();
      double loss = 0.0;
      for (Eigen::Index r = 0; r < m; ++r) {
        auto row = logits.row(r);
        const double top = row.maxCoeff();
        row.array() = (row.array() - top).exp();
        const double total = row.sum();
        loss += std::log(total) + top - (std::log(row(y[static_cast<std::size_t>(r)])) + top);
        row /= total;  // now probabilities
        row(y[static_cast<std::size_t>(r)]) -= 1.0;
      }
      loss = loss * inv_m + 0.5 * l2 * w.squaredNorm();
      if (grad) {
        Eigen::Map<Eigen::MatrixXd> gw(grad->data(), classes, d);
        gw.noalias() = inv_m * logits.transpose() * x;
        gw += l2 * w;
        grad->tail(classes) = inv_m * logits.colwise().sum().transpose();
      }
      return loss;
    };
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(classes * d + classes);
    c.epochs = minimize(objective, theta, options);
    c.weights = Eigen::Map<const Eigen::MatrixXd>(theta.data(), classes, d);
    c.bias = theta.tail(classes);
    return c;
  }

  // One-vs-rest: an independent binary problem per label.
  for (Eigen::Index k = 0; k < classes; ++k) {
    Eigen::VectorXd target(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto& set = labels.labels[train[static_cast<std::size_t>(r)]];
      target(r) = std::binary_search(set.begin(), set.end(), static_cast<int>(k)) ? 1.0 : 0.0;
    }
    auto objective = [&](const Eigen::VectorXd& theta, Eigen::VectorXd* grad) {
      const auto w = theta.head(d);
      const double b = theta(d);
      const Eigen::VectorXd t = (x * w).array() + b;
      double loss = 0.0;
      Eigen::VectorXd resid(m);
      for (Eigen::Index r = 0; r < m; ++r) {
        loss += softplus(t(r)) - target(r) * t(r);
        resid(r) = sigmoid(t(r)) - target(r);
      }
      loss = loss * inv_m + 0.5 * l2 * w.squaredNorm();
      if (grad) {
        grad->head(d).noalias() = inv_m * x.transpose() * resid;
        grad->head(d) += l2 * w;
        (*grad)(d) = inv_m * resid.sum();
      }
      return loss;
    };
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
    c.epochs = std::max(c.epochs, minimize(objective, theta, options));
    c.weights.row(k) = theta.head(d).transpose();
    c.bias(k) = theta(d);
  }
  return c;
}

Eigen::VectorXd class_scores(const Classifier& c, std::span<const double> row) {
  if (row.size() != c.dim()) throw DomainError("embedding dimension does not match classifier");
  const Eigen::Map<const Eigen::VectorXd> v(row.data(), static_cast<Eigen::Index>(row.size()));
  return c.weights * v + c.bias;
}

int argmax_class(std::span<const double> scores) {
  if (scores.empty()) throw DomainError("no scores");
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

std::vector<int> top_k_classes(std::span<const double> scores, std::size_t k) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::vector<int>> predict(const Classifier& c, const EmbeddingMatrix& z,
                                      std::span<const std::size_t> ids,
                                      const LabelSet& labels) {
  if (z.cols() != c.dim()) throw DomainError("embedding dimension does not match classifier");
  std::vector<std::vector<int>> out;
  out.reserve(ids.size());
  for (std::size_t i : ids) {
    const Eigen::VectorXd s = class_scores(c, z.row(i));
    const std::span<const double> scores(s.data(), static_cast<std::size_t>(s.size()));
    if (c.kind == LabelKind::kMulticlass) {
      out.push_back({argmax_class(scores)});
    } else {
      out.push_back(top_k_classes(scores, labels.labels[i].size()));
    }
  }
  return out;
}

F1 f1_scores(std::span<const std::vector<int>> predicted,
             std::span<const std::vector<int>> truth, std::size_t num_classes) {
  if (predicted.size() != truth.size()) throw DomainError("prediction/truth size mismatch");
  if (truth.empty()) throw DomainError("empty test set");

  std::vector<std::size_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto& p = predicted[i];
    const auto& t = truth[i];
    for (int l : p) {
      if (l < 0 || static_cast<std::size_t>(l) >= num_classes) throw DomainError("label out of range");
      if (std::find(t.begin(), t.end(), l) != t.end()) {
        ++tp[static_cast<std::size_t>(l)];
      } else {
        ++fp[static_cast<std::size_t>(l)];
      }
    }
    for (int l : t) {
      if (l < 0 || static_cast<std::size_t>(l) >= num_classes) throw DomainError("label out of range");
      if (std::find(p.begin(), p.end(), l) == p.end()) ++fn[static_cast<std::size_t>(l)];
    }
  }

  auto f1 = [](std::size_t t, std::size_t f_pos, std::size_t f_neg) {
    const std::size_t denom = 2 * t + f_pos + f_neg;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(t) / static_cast<double>(denom);
  };
  F1 out;
  std::size_t all_tp = 0, all_fp = 0, all_fn = 0, counted = 0;
  double macro_sum = 0.0;
  for (std::size_t l = 0; l < num_classes; ++l) {
    all_tp += tp[l];
    all_fp += fp[l];
    all_fn += fn[l];
    if (tp[l] + fp[l] + fn[l] == 0) continue;
    macro_sum += f1(tp[l], fp[l], fn[l]);
    ++counted;
  }
  out.micro = f1(all_tp, all_fp, all_fn);
  out.macro = counted == 0 ? 0.0 : macro_sum / static_cast<double>(counted);
  return out;
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["micro_f1"] = {{"mean", micro_mean}, {"std", micro_std}};
  j["macro_f1"] = {{"mean", macro_mean}, {"std", macro_std}};
  j["trials"] = trials;
  j["train_ratio"] = train_ratio;
  j["inference_time_sec"] = inference_time_sec;
  auto& per = j["per_trial"] = nlohmann::json::array();
  for (const auto& t : per_trial) per.push_back({{"micro", t.micro}, {"macro", t.macro}});
  return j.dump(2);
}

EvalReport run_protocol(const EmbeddingMatrix& z, const LabelSet& labels,
                        const ProtocolOptions& options) {
  if (options.trials < 1) throw DomainError("trials must be >= 1");
  labels.validate();
  if (labels.size() != z.rows()) throw DomainError("label count does not match embedding rows");

  // Trial t draws its seed from position t of one master stream.
  std::mt19937_64 master(options.seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(options.trials));
  for (auto& s : seeds) s = master();

  EvalReport report;
  report.trials = options.trials;
  report.train_ratio = options.train_ratio;
  report.per_trial.resize(seeds.size());
  for (std::size_t t = 0; t < seeds.size(); ++t) {
    const Split s = split(labels, options.train_ratio, seeds[t]);
    const Classifier c = fit_classifier(z, labels, s.train, options.classifier);
    const auto predicted = predict(c, z, s.test, labels);
    std::vector<std::vector<int>> truth;
    truth.reserve(s.test.size());
    for (std::size_t i : s.test) truth.push_back(labels.labels[i]);
    report.per_trial[t] = f1_scores(predicted, truth, labels.num_classes);
  }

  const double n = static_cast<double>(seeds.size());
  for (const auto& t : report.per_trial) {
    report.micro_mean += t.micro;
    report.macro_mean += t.macro;
  }
  report.micro_mean /= n;
  report.macro_mean /= n;
  for (const auto& t : report.per_trial) {
    report.micro_std += (t.micro - report.micro_mean) * (t.micro - report.micro_mean);
    report.macro_std += (t.macro - report.macro_mean) * (t.macro - report.macro_mean);
  }
  report.micro_std = std::sqrt(report.micro_std / n);
  report.macro_std = std::sqrt(report.macro_std / n);
  return report;
}

std::vector<double> ntos(std::span<const double> times, std::span<const double> qualities) {
  if (times.size() != qualities.size()) throw DomainError("time/quality count mismatch");
  if (times.size() < 2) throw DomainError("NToS needs at least two methods");
  const auto [t_min, t_max] = std::minmax_element(times.begin(), times.end());
  const auto [q_min, q_max] = std::minmax_element(qualities.begin(), qualities.end());
  const double t_range = *t_max - *t_min;
  const double q_range = *q_max - *q_min;
  if (!(t_range > 0.0)) throw DomainError("all methods have the same time");
  if (!(q_range > 0.0)) throw DomainError("all methods have the same quality");

  std::vector<double> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out[k] = ((*t_max - times[k]) / t_range) * ((qualities[k] - *q_min) / q_range);
  }
  return out;
}

std::vector<MethodResult> load_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open results file '" + path + "'");
  std::vector<MethodResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("expected `method,time_sec,metric`", line_no);
    }
    MethodResult r;
    r.method = std::string(trim(view.substr(0, c1)));
    const bool ok = parse_number(view.substr(c1 + 1, c2 - c1 - 1), r.time_sec) &&
                    parse_number(view.substr(c2 + 1), r.metric);
    if (!ok) {
      if (out.empty() && line_no == 1) continue;  // header
      throw ParseError("time and metric must be numbers", line_no);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rfa
