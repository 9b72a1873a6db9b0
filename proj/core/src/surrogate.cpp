// Copyright 2026 The Surro Authors
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

#include "surro/surrogate.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <spdlog/spdlog.h>

#include "surro/csv.hpp"
#include "surro/error.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

using json = nlohmann::json;

Penalty penalty_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRidge:
      return Penalty::kL2;
    case ModelKind::kLasso:
      return Penalty::kL1;
    default:
      return Penalty::kNone;
  }
}

ModelKind kind_for(Penalty penalty) {
  switch (penalty) {
    case Penalty::kL1:
      return ModelKind::kLasso;
    case Penalty::kL2:
      return ModelKind::kRidge;
    default:
      return ModelKind::kOls;
  }
}

Penalty parse_penalty(const std::string& s) {
  for (auto p : {Penalty::kNone, Penalty::kL1, Penalty::kL2}) {
    if (s == to_string(p)) return p;
  }
  throw DataError("unknown penalty " + s);
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }
std::vector<double> to_vector(const Eigen::RowVectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json standardizer_json(const Standardizer& s) {
  return {{"mean", to_vector(s.mean())}, {"std", to_vector(s.scale())}};
}

Standardizer standardizer_from(const json& j) {
  return Standardizer(vector_from(j.at("mean")).transpose(), vector_from(j.at("std")).transpose());
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_vector(Eigen::VectorXd(m.row(i).transpose())));
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto row = j.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != cols) throw DataError("training matrix row has wrong width");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGpr:
      return "gpr";
    case ModelKind::kOls:
      return "ols";
    case ModelKind::kRidge:
      return "ridge";
    case ModelKind::kLasso:
      return "lasso";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "lr") return ModelKind::kOls;
  for (auto k : {ModelKind::kGpr, ModelKind::kOls, ModelKind::kRidge, ModelKind::kLasso}) {
    if (lower == to_string(k)) return k;
  }
  throw InvalidArgument("unknown model kind: " + std::string(name));
}

json SurrogateSpec::to_json() const {
  json j{{"kind", std::string(to_string(kind))}};
  if (kind == ModelKind::kGpr) {
    j["kernel"] = std::string(to_string(family));
    j["ard"] = ard;
    j["restarts"] = restarts;
    j["max_iterations"] = optimizer.max_iterations;
    j["gradient_tolerance"] = optimizer.gradient_tolerance;
  } else if (kind != ModelKind::kOls) {
    if (lambda) {
      j["lambda"] = *lambda;
    } else {
      j["lambda_grid"] = lambda_grid;
      j["grid_folds"] = grid_folds;
    }
  }
  return j;
}

TrainedModel TrainedModel::train(const SurrogateSpec& spec, const Dataset& data, std::uint64_t seed) {
  if (data.rows() < 2) throw InvalidArgument("training needs at least 2 rows");
  if (data.outputs.cols() < 1) throw InvalidArgument("training data has no output columns");

  TrainedModel model;
  model.kind_ = spec.kind;
  model.input_names_ = data.input_names;
  model.output_names_ = data.output_names;
  model.x_scaler_ = Standardizer::fit(data.inputs, data.input_names);
  model.y_scaler_ = Standardizer::fit(data.outputs, data.output_names, ZeroVariance::kUnitScale);
  const Eigen::MatrixXd Z = model.x_scaler_.transform(data.inputs);
  const Eigen::MatrixXd T = model.y_scaler_.transform(data.outputs);

  for (Eigen::Index o = 0; o < T.cols(); ++o) {
    const std::uint64_t output_seed = derive_seed(seed, static_cast<std::uint64_t>(o));
    const Eigen::VectorXd y = T.col(o);
    if (spec.kind == ModelKind::kGpr) {
      FitOptions options;
      options.restarts = spec.restarts;
      options.seed = output_seed;
      options.optimizer = spec.optimizer;
      const KernelSpec kernel{spec.family, spec.ard, static_cast<int>(Z.cols())};
      model.models_.emplace_back(fit(kernel, Z, y, options));
      spdlog::debug("trained GP for {}", data.output_names[static_cast<std::size_t>(o)]);
    } else {
      const Penalty penalty = penalty_for(spec.kind);
      double lambda = 0.0;
      if (penalty != Penalty::kNone) {
        if (spec.lambda) {
          lambda = *spec.lambda;
        } else {
          model.grid_.push_back(grid_search_lambda(Z, y, penalty, spec.lambda_grid, spec.grid_folds, output_seed));
          lambda = model.grid_.back().best_lambda;
        }
      }
      model.models_.emplace_back(fit_linear(Z, y, penalty, lambda));
    }
  }
  return model;
}

Eigen::MatrixXd TrainedModel::predict_mean(const Eigen::MatrixXd& inputs) const {
  if (inputs.cols() != x_scaler_.dim()) {
    throw InvalidArgument("input has " + std::to_string(inputs.cols()) + " columns, model expects " +
                          std::to_string(x_scaler_.dim()));
  }
  const Eigen::MatrixXd Z = x_scaler_.transform(inputs);
  Eigen::MatrixXd mean(inputs.rows(), static_cast<Eigen::Index>(models_.size()));
  for (std::size_t o = 0; o < models_.size(); ++o) {
    const auto col = static_cast<Eigen::Index>(o);
    mean.col(col) = std::visit(
        [&](const auto& m) -> Eigen::VectorXd {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FittedGP>) {
            return m.predict_mean(Z);
          } else {
            return m.predict(Z);
          }
        },
        models_[o]);
  }
  return y_scaler_.inverse(mean);
}

TrainedModel::Prediction TrainedModel::predict(const Eigen::MatrixXd& inputs, bool include_noise) const {
  Prediction out;
  out.mean = predict_mean(inputs);
  out.stddev = Eigen::MatrixXd::Zero(inputs.rows(), out.mean.cols());
  const Eigen::MatrixXd Z = x_scaler_.transform(inputs);
  for (std::size_t o = 0; o < models_.size(); ++o) {
    if (const auto* gp = std::get_if<FittedGP>(&models_[o])) {
      const Posterior post = gp->predict(Z, include_noise);
      const auto col = static_cast<Eigen::Index>(o);
      out.stddev.col(col) = post.stddev() * y_scaler_.scale()[col];
      out.clamped += post.clamped;
    }
  }
  return out;
}

json TrainedModel::to_json(const json& config) const {
  json doc;
  doc["version"] = std::string(kind_ == ModelKind::kGpr ? kGpModelVersion : kLinearModelVersion);
  doc["config"] = config;
  doc["inputs"] = input_names_;
  doc["outputs"] = output_names_;
  doc["input_standardizer"] = standardizer_json(x_scaler_);
  doc["output_standardizer"] = standardizer_json(y_scaler_);
  json models = json::array();
  for (std::size_t o = 0; o < models_.size(); ++o) {
    json m{{"output", output_names_[o]}};
    if (const auto* gp = std::get_if<FittedGP>(&models_[o])) {
      if (!doc.contains("X_train")) doc["X_train"] = matrix_json(gp->X());
      const auto& hp = gp->hyperparameters();
      m["kernel"] = gp->spec().to_json();
      m["log_hyperparameters"] = {{"log_lengthscales", to_vector(hp.log_lengthscales)},
                                  {"log_sigma_f", hp.log_sigma_f},
                                  {"log_sigma_n", hp.log_sigma_n}};
      m["jitter_used"] = gp->jitter();
      m["log_likelihood"] = gp->log_likelihood();
      m["y_train"] = to_vector(gp->y());
    } else {
      const auto& lm = std::get<LinearModel>(models_[o]);
      m["penalty"] = std::string(to_string(lm.penalty));
      m["lambda"] = lm.lambda;
      m["coefficients"] = to_vector(lm.coefficients);
      m["intercept"] = lm.intercept;
    }
    models.push_back(std::move(m));
  }
  doc["models"] = std::move(models);
  return doc;
}

TrainedModel TrainedModel::from_json(const json& doc) {
  try {
    const auto version = doc.at("version").get<std::string>();
    const bool is_gp = version == kGpModelVersion;
    if (!is_gp && version != kLinearModelVersion) throw DataError("unsupported model version " + version);

    TrainedModel model;
    model.input_names_ = doc.at("inputs").get<std::vector<std::string>>();
    model.output_names_ = doc.at("outputs").get<std::vector<std::string>>();
    model.x_scaler_ = standardizer_from(doc.at("input_standardizer"));
    model.y_scaler_ = standardizer_from(doc.at("output_standardizer"));
    const auto d = static_cast<Eigen::Index>(model.input_names_.size());
    if (model.x_scaler_.dim() != d || model.y_scaler_.dim() != static_cast<Eigen::Index>(model.output_names_.size())) {
      throw DataError("standardizer sizes do not match column lists");
    }
    const auto& models = doc.at("models");
    if (models.size() != model.output_names_.size()) throw DataError("one model per output expected");

    Eigen::MatrixXd X;
    if (is_gp) {
      model.kind_ = ModelKind::kGpr;
      X = matrix_from(doc.at("X_train"), d);
    }
    for (const auto& m : models) {
      if (is_gp) {
        const KernelSpec spec = KernelSpec::from_json(m.at("kernel"));
        if (spec.dim != d) throw DataError("kernel dimension does not match inputs");
        const auto& h = m.at("log_hyperparameters");
        Hyperparameters hp;
        hp.log_lengthscales = vector_from(h.at("log_lengthscales"));
        hp.log_sigma_f = h.at("log_sigma_f").get<double>();
        hp.log_sigma_n = h.at("log_sigma_n").get<double>();
        Eigen::VectorXd y = vector_from(m.at("y_train"));
        if (y.size() != X.rows()) throw DataError("y_train length does not match X_train");
        model.models_.emplace_back(FittedGP(spec, hp, X, std::move(y), m.at("jitter_used").get<double>()));
      } else {
        LinearModel lm;
        lm.penalty = parse_penalty(m.at("penalty").get<std::string>());
        lm.lambda = m.at("lambda").get<double>();
        lm.coefficients = vector_from(m.at("coefficients"));
        lm.intercept = m.at("intercept").get<double>();
        if (lm.coefficients.size() != d) throw DataError("coefficient count does not match inputs");
        model.kind_ = kind_for(lm.penalty);
        model.models_.emplace_back(std::move(lm));
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

void TrainedModel::save(const std::filesystem::path& path, const json& config) const {
  auto out = csv::open_output(path);
  out << to_json(config).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

}  // namespace surro
