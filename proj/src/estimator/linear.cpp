#include "uisdial/estimator/linear.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <Eigen/Sparse>
#include <spdlog/spdlog.h>

#include "uisdial/evaluation/metrics.h"
#include "uisdial/text/text.h"

namespace uisdial::estimator {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::vector<std::string> feature_names(const EstimationRequest& request, int context_window) {
  std::vector<std::string> names;
  const auto words = text::word_tokens(request.target);
  for (std::size_t i = 0; i < words.size(); ++i) {
    names.push_back("u:" + words[i]);
    if (i + 1 < words.size()) names.push_back("b:" + words[i] + " " + words[i + 1]);
  }
  if (const auto* sys = last_system_turn(request, context_window)) {
    for (const auto& w : text::word_tokens(sys->text)) names.push_back("s:" + w);
  }
  if (request.turn_index > 0) {
    names.push_back("t:" + std::to_string(std::min(request.turn_index, 11)));
  }
  if (request.s1_pattern) names.push_back("p:" + std::string(to_string(*request.s1_pattern)));
  return names;
}

std::vector<std::uint32_t> extract_features(const EstimationRequest& request, int context_window) {
  std::vector<std::uint32_t> indices;
  for (const auto& name : feature_names(request, context_window)) {
    indices.push_back(static_cast<std::uint32_t>(fnv1a64(name) & (kFeatureDim - 1)));
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

double LinearModel::predict(const EstimationRequest& request) const {
  double value = bias;
  for (auto index : extract_features(request, context_window)) {
    const auto it = std::lower_bound(weights.begin(), weights.end(), index,
                                     [](const auto& w, std::uint32_t i) { return w.first < i; });
    if (it != weights.end() && it->first == index) value += it->second;
  }
  return std::clamp(value, kScoreMin, kScoreMax);
}

nlohmann::json LinearModel::to_json() const {
  nlohmann::json j;
  j["format"] = "uisdial-linear";
  j["format_version"] = 1;
  j["kind"] = to_string(kind);
  j["dim"] = kFeatureDim;
  j["hash"] = "fnv1a64";
  j["bias"] = bias;
  j["l2"] = l2;
  j["seed"] = seed;
  j["context_window"] = context_window;
  j["weights"] = nlohmann::json::array();
  for (const auto& [index, w] : weights) j["weights"].push_back({index, w});
  return j;
}

LinearModel LinearModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "uisdial-linear" ||
        j.at("dim").get<std::uint32_t>() != kFeatureDim || j.at("hash").get<std::string>() != "fnv1a64") {
      throw ValidationError("linear model has an incompatible format, dimension or hash");
    }
    LinearModel m;
    m.kind = parse_uis_kind(j.at("kind").get<std::string>());
    m.bias = j.at("bias").get<double>();
    m.l2 = j.at("l2").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.context_window = j.at("context_window").get<int>();
    for (const auto& w : j.at("weights")) {
      m.weights.emplace_back(w.at(0).get<std::uint32_t>(), w.at(1).get<double>());
    }
    if (!std::is_sorted(m.weights.begin(), m.weights.end())) {
      throw ValidationError("linear model weights must be sorted by index");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed linear model: ") + e.what());
  }
}

EstimationRequest request_from_record(const corpus::AnnotatedUtterance& record, UisKind kind,
                                      int context_window) {
  return make_request(kind, record.text, record.context, context_window, record.turn_index,
                      record.s1_pattern);
}

namespace {

struct Design {
  std::vector<std::vector<std::uint32_t>> rows;  // compact column ids
  std::vector<std::uint32_t> columns;            // compact id -> hashed index
  std::vector<double> targets;
};

Design build_design(const std::vector<corpus::AnnotatedUtterance>& records, UisKind kind,
                    int window) {
  Design d;
  std::map<std::uint32_t, std::uint32_t> column_of;
  for (const auto& r : records) {
    for (auto index : extract_features(request_from_record(r, kind, window), window)) {
      column_of.emplace(index, 0);
    }
  }
  std::uint32_t next = 0;
  for (auto& [index, col] : column_of) {
    col = next++;
    d.columns.push_back(index);
  }
  for (const auto& r : records) {
    std::vector<std::uint32_t> row;
    for (auto index : extract_features(request_from_record(r, kind, window), window)) {
      row.push_back(column_of.at(index));
    }
    d.rows.push_back(std::move(row));
    d.targets.push_back(r.score(kind));
  }
  return d;
}

// Solves [X'X + l2 I, X'1; 1'X, n] [w; b] = [X'y; sum y].
LinearModel fit(const Design& d, UisKind kind, double l2, const TrainConfig& config) {
  const auto p = static_cast<Eigen::Index>(d.columns.size());
  const Eigen::Index bias_col = p;
  std::map<std::pair<Eigen::Index, Eigen::Index>, double> entries;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    const auto& row = d.rows[i];
    const double y = d.targets[i];
    for (auto a : row) {
      for (auto b : row) entries[{a, b}] += 1.0;
      entries[{a, bias_col}] += 1.0;
      entries[{bias_col, a}] += 1.0;
      rhs[a] += y;
    }
    entries[{bias_col, bias_col}] += 1.0;
    rhs[bias_col] += y;
  }
  for (Eigen::Index c = 0; c < p; ++c) entries[{c, c}] += l2;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& [rc, v] : entries) triplets.emplace_back(rc.first, rc.second, v);
  Eigen::SparseMatrix<double> normal(p + 1, p + 1);
  normal.setFromTriplets(triplets.begin(), triplets.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(normal);
  if (solver.info() != Eigen::Success) throw EstimatorError("normal equations are singular");
  const Eigen::VectorXd solution = solver.solve(rhs);

  LinearModel m;
  m.kind = kind;
  m.l2 = l2;
  m.seed = config.seed;
  m.context_window = config.context_window;
  m.bias = solution[bias_col];
  for (Eigen::Index c = 0; c < p; ++c) {
    m.weights.emplace_back(d.columns[static_cast<std::size_t>(c)], solution[c]);
  }
  return m;
}

std::pair<double, double> score_model(const LinearModel& m,
                                      const std::vector<corpus::AnnotatedUtterance>& records) {
  std::vector<evaluation::Prediction> predictions;
  double sq = 0.0;
  for (const auto& r : records) {
    const double est = m.predict(request_from_record(r, m.kind, m.context_window));
    const int gold = r.score(m.kind);
    predictions.push_back({est, gold});
    sq += (est - gold) * (est - gold);
  }
  return {evaluation::acc_metrics(predictions).acc, sq / static_cast<double>(records.size())};
}

}  // namespace

TrainResult train_linear(const std::vector<corpus::AnnotatedUtterance>& train,
                         const std::vector<corpus::AnnotatedUtterance>& dev, UisKind kind,
                         const TrainConfig& config) {
  if (train.empty()) throw ValidationError("cannot train on an empty train set");
  if (config.l2_grid.empty()) throw ValidationError("l2 grid is empty");
  for (double l2 : config.l2_grid) {
    if (!(l2 > 0.0)) throw ValidationError("l2 values must be positive");
  }

  TrainResult result;
  const int first = train.front().score(kind);
  const bool constant = std::all_of(train.begin(), train.end(),
                                    [&](const auto& r) { return r.score(kind) == first; });
  if (constant) {
    spdlog::warn("all {} training labels for {} equal {}; using a constant predictor", train.size(),
                 to_string(kind), first);
    result.constant_labels = true;
    result.model.kind = kind;
    result.model.bias = first;
    result.model.l2 = config.l2_grid.front();
    result.model.seed = config.seed;
    result.model.context_window = config.context_window;
    return result;
  }

  const auto& selection = dev.empty() ? train : dev;
  const Design design = build_design(train, kind, config.context_window);
  std::optional<LinearModel> best;
  GridPoint best_point;
  for (double l2 : config.l2_grid) {
    LinearModel m = fit(design, kind, l2, config);
    const auto [acc, mse] = score_model(m, selection);
    result.grid.push_back({l2, acc, mse});
    if (!best || acc > best_point.selection_acc ||
        (acc == best_point.selection_acc && mse < best_point.selection_mse)) {
      best = std::move(m);
      best_point = result.grid.back();
    }
  }
  result.model = std::move(*best);
  return result;
}

nlohmann::json LinearBundle::to_json() const {
  nlohmann::json j;
  j["format"] = "uisdial-linear-bundle";
  j["format_version"] = 1;
  j["models"] = nlohmann::json::array();
  for (const auto& m : models) {
    if (m) j["models"].push_back(m->to_json());
  }
  return j;
}

LinearBundle LinearBundle::from_json(const nlohmann::json& j) {
  LinearBundle bundle;
  if (!j.contains("models")) throw ValidationError("linear bundle has no models");
  for (const auto& item : j.at("models")) {
    auto m = LinearModel::from_json(item);
    bundle.models[index_of(m.kind)] = std::move(m);
  }
  return bundle;
}

std::string LinearBundle::serialize() const { return to_json().dump() + "\n"; }

LinearBundle LinearBundle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model '" + path + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model '" + path + "': " + e.what());
  }
}

void LinearBundle::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model '" + path + "'");
  out << serialize();
}

LinearEstimator::LinearEstimator(LinearBundle bundle) : bundle_(std::move(bundle)) {
  for (auto kind : kAllKinds) {
    if (!bundle_.models[index_of(kind)]) {
      throw ValidationError("linear bundle lacks a model for " + std::string(to_string(kind)));
    }
  }
}

UisScore LinearEstimator::estimate(const EstimationRequest& request) const {
  return UisScore(request.kind, bundle_.models[index_of(request.kind)]->predict(request));
}

}  // namespace uisdial::estimator
