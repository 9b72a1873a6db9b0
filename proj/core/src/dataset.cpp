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

#include "surro/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <spdlog/spdlog.h>

#include "surro/csv.hpp"
#include "surro/error.hpp"
#include "surro/random.hpp"

namespace surro {

std::array<double, 10> DesignPoint::flatten() const {
  return {n_ls, t_l, v_p, T_i, T_pd, T_air, phi_fib[0], phi_fib[1], phi_fib[2], phi_fib[3]};
}

DesignPoint DesignPoint::unflatten(std::span<const double> v) {
  if (v.size() != 10) throw InvalidArgument("DesignPoint needs exactly 10 values");
  for (double x : v) {
    if (!std::isfinite(x)) throw InvalidArgument("DesignPoint components must be finite");
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5], {v[6], v[7], v[8], v[9]}};
}

void CrashResponse::validate() const {
  if (!(F_p > 0)) throw DataError("peak load must be positive");
  if (!(CLE >= 0 && CLE <= 1)) throw DataError("crush load efficiency must lie in [0, 1]");
  if (!(SEA >= 0)) throw DataError("specific energy absorption must be nonnegative");
  if (!std::isfinite(dY_node)) throw DataError("intrusion must be finite");
}

Schema Schema::crash() {
  Schema s = design_only();
  s.outputs.assign(kOutputColumns.begin(), kOutputColumns.end());
  return s;
}

Schema Schema::design_only() {
  Schema s;
  s.inputs.assign(kInputColumns.begin(), kInputColumns.end());
  return s;
}

Dataset Dataset::select_rows(std::span<const Eigen::Index> indices) const {
  Dataset out;
  out.input_names = input_names;
  out.output_names = output_names;
  out.inputs.resize(static_cast<Eigen::Index>(indices.size()), inputs.cols());
  out.outputs.resize(static_cast<Eigen::Index>(indices.size()), outputs.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    out.inputs.row(i) = inputs.row(indices[r]);
    out.outputs.row(i) = outputs.row(indices[r]);
  }
  return out;
}

Eigen::VectorXd Dataset::column(std::string_view name) const {
  for (std::size_t j = 0; j < input_names.size(); ++j) {
    if (input_names[j] == name) return inputs.col(static_cast<Eigen::Index>(j));
  }
  for (std::size_t j = 0; j < output_names.size(); ++j) {
    if (output_names[j] == name) return outputs.col(static_cast<Eigen::Index>(j));
  }
  throw InvalidArgument("column not found: " + std::string(name));
}

LoadResult load_dataset(const std::filesystem::path& path, const Schema& schema, std::size_t min_rows) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());

  std::vector<std::string> expected = schema.inputs;
  expected.insert(expected.end(), schema.outputs.begin(), schema.outputs.end());

  std::string line;
  bool have_header = false;
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t dropped = 0;
  std::vector<double> row(expected.size());

  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF) {
      line.erase(0, 3);
    }
    auto fields = csv::split_line(line);
    if (!have_header) {
      if (fields != expected) {
        throw DataError("header mismatch in " + path.string() + ": expected " + csv::join(expected) +
                        ", found " + csv::join(fields));
      }
      have_header = true;
      continue;
    }
    bool ok = fields.size() == expected.size();
    for (std::size_t j = 0; ok && j < fields.size(); ++j) {
      ok = csv::parse_double(fields[j], row[j]) && std::isfinite(row[j]);
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (!have_header) throw DataError("missing header row in " + path.string());
  if (rows < min_rows) {
    throw DataError(min_rows == 2 ? std::string("fewer than 2 valid rows")
                                  : "fewer than " + std::to_string(min_rows) + " valid rows");
  }
  if (dropped > 0) spdlog::warn("{}: dropped {} malformed row(s)", path.string(), dropped);

  const auto n = static_cast<Eigen::Index>(rows);
  const auto n_in = static_cast<Eigen::Index>(schema.inputs.size());
  const auto n_out = static_cast<Eigen::Index>(schema.outputs.size());
  LoadResult result;
  result.dropped = dropped;
  result.data.input_names = schema.inputs;
  result.data.output_names = schema.outputs;
  result.data.inputs.resize(n, n_in);
  result.data.outputs.resize(n, n_out);
  const auto width = n_in + n_out;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n_in; ++j) result.data.inputs(i, j) = values[i * width + j];
    for (Eigen::Index j = 0; j < n_out; ++j) result.data.outputs(i, j) = values[i * width + n_in + j];
  }
  return result;
}

void write_dataset(const std::filesystem::path& path, const Dataset& data,
                   const std::vector<std::string>& comments) {
  auto out = csv::open_output(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  std::vector<std::string> header = data.input_names;
  header.insert(header.end(), data.output_names.begin(), data.output_names.end());
  out << csv::join(header) << '\n';
  std::vector<std::string> fields;
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    fields.clear();
    for (Eigen::Index j = 0; j < data.inputs.cols(); ++j) fields.push_back(csv::format_double(data.inputs(i, j)));
    for (Eigen::Index j = 0; j < data.outputs.cols(); ++j) fields.push_back(csv::format_double(data.outputs(i, j)));
    out << csv::join(fields) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

double empirical_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of empty sample");
  if (!(q >= 0 && q <= 1)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FilterResult filter_outliers(const Dataset& data, std::string_view column, double upper_quantile) {
  if (!(upper_quantile > 0 && upper_quantile < 1)) {
    throw InvalidArgument("upper_quantile must lie strictly between 0 and 1");
  }
  const Eigen::VectorXd values = data.column(column);
  const double cut = empirical_quantile(std::span<const double>(values.data(), values.size()), upper_quantile);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > cut)) keep.push_back(i);
  }
  FilterResult result;
  result.removed = static_cast<std::size_t>(values.size()) - keep.size();
  result.data = data.select_rows(keep);
  return result;
}

Split train_test_split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw InvalidArgument("test_fraction must lie strictly between 0 and 1");
  }
  const Eigen::Index n = data.rows();
  if (n < 2) throw InvalidArgument("cannot split fewer than 2 rows");
  // The small offset keeps 245 * 0.8 = 196.00000000000003 from rounding up.
  auto n_train = static_cast<Eigen::Index>(std::ceil(static_cast<double>(n) * (1.0 - test_fraction) - 1e-9));
  n_train = std::clamp<Eigen::Index>(n_train, 1, n - 1);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  shuffle(std::span(order), rng);

  Split split;
  split.train_indices.assign(order.begin(), order.begin() + n_train);
  split.test_indices.assign(order.begin() + n_train, order.end());
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  split.train = data.select_rows(split.train_indices);
  split.test = data.select_rows(split.test_indices);
  return split;
}

std::vector<std::vector<Eigen::Index>> make_folds(Eigen::Index n, int k, std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("k-fold needs k >= 2");
  if (n < k) throw InvalidArgument("k-fold needs at least k rows");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  shuffle(std::span(order), rng);

  std::vector<std::vector<Eigen::Index>> folds(static_cast<std::size_t>(k));
  const auto base = n / k;
  const auto extra = n % k;
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const auto size = static_cast<std::size_t>(base + (f < extra ? 1 : 0));
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

Standardizer::Standardizer(Eigen::RowVectorXd mean, Eigen::RowVectorXd scale)
    : mean_(std::move(mean)), scale_(std::move(scale)) {
  if (mean_.size() != scale_.size()) throw InvalidArgument("standardizer mean/scale size mismatch");
  for (Eigen::Index j = 0; j < scale_.size(); ++j) {
    if (!(scale_[j] > 0) || !std::isfinite(scale_[j]) || !std::isfinite(mean_[j])) {
      throw InvalidArgument("standardizer scale must be positive and finite");
    }
  }
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& m, std::span<const std::string> names, ZeroVariance policy) {
  if (m.rows() < 2) throw InvalidArgument("standardizer needs at least 2 rows");
  const Eigen::RowVectorXd mean = m.colwise().mean();
  Eigen::RowVectorXd scale(m.cols());
  std::vector<std::string> constant;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double ss = (m.col(j).array() - mean[j]).square().sum();
    scale[j] = std::sqrt(ss / static_cast<double>(m.rows() - 1));
    if (!(scale[j] > 0)) {
      if (policy == ZeroVariance::kUnitScale) {
        scale[j] = 1.0;
      } else {
        constant.push_back(static_cast<std::size_t>(j) < names.size() ? names[j] : "column " + std::to_string(j));
      }
    }
  }
  if (!constant.empty()) throw DataError("zero-variance column(s): " + csv::join(constant));
  return Standardizer(mean, scale);
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& m) const {
  if (m.cols() != dim()) throw InvalidArgument("standardizer column count mismatch");
  return (m.rowwise() - mean_).array().rowwise() / scale_.array();
}

Eigen::MatrixXd Standardizer::inverse(const Eigen::MatrixXd& z) const {
  if (z.cols() != dim()) throw InvalidArgument("standardizer column count mismatch");
  return (z.array().rowwise() * scale_.array()).rowwise() + mean_.array();
}

}  // namespace surro
