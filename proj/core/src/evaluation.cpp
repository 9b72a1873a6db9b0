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

#include "surro/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "surro/csv.hpp"
#include "surro/error.hpp"
#include "surro/parallel.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

std::span<const double> span_of(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

CvScores scores_of(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred) {
  const Metrics m = compute_metrics(span_of(truth), span_of(pred));
  return {m.r2, m.mae, m.rmse, m.mape};
}

}  // namespace

MetricReport evaluate_holdout(const TrainedModel& model, const Dataset& train, const Dataset& test) {
  const Eigen::MatrixXd fit = model.predict_mean(train.inputs);
  const Eigen::MatrixXd pred = model.predict_mean(test.inputs);
  MetricReport report;
  for (Eigen::Index o = 0; o < test.outputs.cols(); ++o) {
    const Eigen::VectorXd yt = test.outputs.col(o), yp = pred.col(o);
    const Eigen::VectorXd ft = train.outputs.col(o), fp = fit.col(o);
    const Metrics m = compute_metrics(span_of(yt), span_of(yp));
    OutputReport row;
    row.output = model.output_names()[static_cast<std::size_t>(o)];
    row.r2_train = r_squared(span_of(ft), span_of(fp));
    row.r2_test = m.r2;
    row.mae = m.mae;
    row.rmse = m.rmse;
    row.mape = m.mape;
    row.max_ape = m.max_ape;
    report.push_back(row);
  }
  return report;
}

void write_report_csv(const std::filesystem::path& path, const MetricReport& report,
                      const std::vector<std::string>& comments) {
  auto out = csv::open_output(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "output,r2_train,r2_test,mae,rmse,mape,max_ape\n";
  for (const auto& r : report) {
    out << csv::join({r.output, csv::format_double(r.r2_train), csv::format_double(r.r2_test),
                      csv::format_double(r.mae), csv::format_double(r.rmse), csv::format_double(r.mape),
                      csv::format_double(r.max_ape)})
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

CvResult repeated_kfold(const SurrogateSpec& spec, const Dataset& data, int k, int repeats, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("cross-validation needs k >= 2");
  if (repeats < 1) throw InvalidArgument("cross-validation needs repeats >= 1");
  const Eigen::Index n = data.rows();
  if (n < k) throw InvalidArgument("fewer rows than folds");
  if (n - (n + k - 1) / k < 2) throw InvalidArgument("training folds would hold fewer than 2 rows");

  const auto n_out = static_cast<std::size_t>(data.outputs.cols());
  const auto ku = static_cast<std::size_t>(k);
  const auto ru = static_cast<std::size_t>(repeats);

  std::vector<std::vector<std::vector<Eigen::Index>>> folds(ru);
  for (std::size_t r = 0; r < ru; ++r) folds[r] = make_folds(n, k, derive_seed(seed, r));

  // Out-of-fold predictions for every (repeat, fold) unit.
  std::vector<Eigen::MatrixXd> predictions(ru * ku);
  parallel_for(ru * ku, [&](std::size_t unit) {
    const std::size_t r = unit / ku, f = unit % ku;
    const auto& held = folds[r][f];
    std::vector<char> is_held(static_cast<std::size_t>(n), 0);
    for (auto i : held) is_held[static_cast<std::size_t>(i)] = 1;
    std::vector<Eigen::Index> train;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!is_held[static_cast<std::size_t>(i)]) train.push_back(i);
    }
    const auto model =
        TrainedModel::train(spec, data.select_rows(train), derive_seed(derive_seed(seed, r), 1000 + f));
    predictions[unit] = model.predict_mean(data.select_rows(held).inputs);
  });

  CvResult result;
  result.k = k;
  result.repeats = repeats;
  result.fits = ru * ku;
  result.outputs = data.output_names;
  for (const auto& fold : folds[0]) result.fold_sizes.push_back(fold.size());
  result.pooled = std::any_of(folds[0].begin(), folds[0].end(), [](const auto& f) { return f.size() < 2; });

  result.per_repeat.assign(ru, std::vector<CvScores>(n_out));
  for (std::size_t r = 0; r < ru; ++r) {
    for (std::size_t o = 0; o < n_out; ++o) {
      const auto col = static_cast<Eigen::Index>(o);
      if (result.pooled) {
        Eigen::VectorXd truth(n), pred(n);
        Eigen::Index pos = 0;
        for (std::size_t f = 0; f < ku; ++f) {
          for (std::size_t i = 0; i < folds[r][f].size(); ++i, ++pos) {
            truth[pos] = data.outputs(folds[r][f][i], col);
            pred[pos] = predictions[r * ku + f](static_cast<Eigen::Index>(i), col);
          }
        }
        result.per_repeat[r][o] = scores_of(truth, pred);
        continue;
      }
      CvScores sum;
      for (std::size_t f = 0; f < ku; ++f) {
        const auto& held = folds[r][f];
        Eigen::VectorXd truth(static_cast<Eigen::Index>(held.size()));
        for (std::size_t i = 0; i < held.size(); ++i) truth[static_cast<Eigen::Index>(i)] = data.outputs(held[i], col);
        const Eigen::VectorXd pred = predictions[r * ku + f].col(col);
        const CvScores s = scores_of(truth, pred);
        sum.r2 += s.r2;
        sum.mae += s.mae;
        sum.rmse += s.rmse;
        sum.mape += s.mape;
      }
      const double kd = static_cast<double>(k);
      result.per_repeat[r][o] = {sum.r2 / kd, sum.mae / kd, sum.rmse / kd, sum.mape / kd};
    }
  }

  result.mean.assign(n_out, {});
  result.stddev.assign(n_out, {});
  for (std::size_t o = 0; o < n_out; ++o) {
    auto field = [&](double CvScores::*member, double CvScores::*target) {
      double mean = 0.0;
      for (std::size_t r = 0; r < ru; ++r) mean += result.per_repeat[r][o].*member;
      mean /= static_cast<double>(ru);
      double ss = 0.0;
      for (std::size_t r = 0; r < ru; ++r) {
        const double d = result.per_repeat[r][o].*member - mean;
        ss += d * d;
      }
      result.mean[o].*target = mean;
      result.stddev[o].*target = ru > 1 ? std::sqrt(ss / static_cast<double>(ru - 1)) : 0.0;
    };
    field(&CvScores::r2, &CvScores::r2);
    field(&CvScores::mae, &CvScores::mae);
    field(&CvScores::rmse, &CvScores::rmse);
    field(&CvScores::mape, &CvScores::mape);
  }
  return result;
}

void write_cv_csv(const std::filesystem::path& repeats_path, const std::filesystem::path& summary_path,
                  const CvResult& result, const std::vector<std::string>& comments) {
  {
    auto out = csv::open_output(repeats_path);
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "repeat,output,r2,mae,rmse,mape\n";
    for (std::size_t r = 0; r < result.per_repeat.size(); ++r) {
      for (std::size_t o = 0; o < result.outputs.size(); ++o) {
        const auto& s = result.per_repeat[r][o];
        out << csv::join({std::to_string(r + 1), result.outputs[o], csv::format_double(s.r2),
                          csv::format_double(s.mae), csv::format_double(s.rmse), csv::format_double(s.mape)})
            << '\n';
      }
    }
    if (!out) throw IoError("write failed: " + repeats_path.string());
  }
  auto out = csv::open_output(summary_path);
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "output,r2_mean,r2_std,mae_mean,mae_std,rmse_mean,rmse_std,mape_mean,mape_std\n";
  for (std::size_t o = 0; o < result.outputs.size(); ++o) {
    const auto& m = result.mean[o];
    const auto& s = result.stddev[o];
    out << csv::join({result.outputs[o], csv::format_double(m.r2), csv::format_double(s.r2),
                      csv::format_double(m.mae), csv::format_double(s.mae), csv::format_double(m.rmse),
                      csv::format_double(s.rmse), csv::format_double(m.mape), csv::format_double(s.mape)})
        << '\n';
  }
  if (!out) throw IoError("write failed: " + summary_path.string());
}

}  // namespace surro
