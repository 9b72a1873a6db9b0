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

#include "surro/mc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "surro/csv.hpp"
#include "surro/dataset.hpp"
#include "surro/error.hpp"
#include "surro/parallel.hpp"
#include "surro/random.hpp"

namespace surro {
namespace {

using json = nlohmann::json;

constexpr std::size_t kChunk = 4096;        // samples per partial-moment accumulator
constexpr std::size_t kPredictBlock = 512;  // rows per parallel prediction task
constexpr std::int64_t kMaxBins = 100000;

InputLaw parse_law(const std::string& name, const json& j) {
  if (j.contains("constant")) return InputLaw::constant(j.at("constant").get<double>());
  if (!j.contains("normal")) throw DataError(name + ": expected \"constant\" or \"normal\"");
  const auto& n = j.at("normal");
  const double mu = n.at("mu").get<double>();
  if (n.contains("sigma")) return InputLaw::normal(mu, n.at("sigma").get<double>());
  if (n.contains("sigma_pct")) return InputLaw::normal_pct(mu, n.at("sigma_pct").get<double>());
  throw DataError(name + ": normal law needs sigma or sigma_pct");
}

// Sparse histogram with a fixed origin and width, densified at the end.
class StreamingHistogram {
 public:
  void configure(double origin, double width) {
    origin_ = origin;
    width_ = width;
  }
  void add(double y) { ++bins_[static_cast<std::int64_t>(std::floor((y - origin_) / width_))]; }

  Histogram finish() const {
    Histogram h;
    if (bins_.empty()) return h;
    const std::int64_t lo = bins_.begin()->first;
    const std::int64_t hi = bins_.rbegin()->first;
    const std::int64_t group = (hi - lo) / kMaxBins + 1;
    const std::int64_t count = (hi - lo) / group + 1;
    h.counts.assign(static_cast<std::size_t>(count), 0);
    for (const auto& [index, c] : bins_) h.counts[static_cast<std::size_t>((index - lo) / group)] += c;
    for (std::int64_t b = 0; b <= count; ++b) {
      h.edges.push_back(origin_ + static_cast<double>(lo + b * group) * width_);
    }
    return h;
  }

 private:
  double origin_ = 0.0;
  double width_ = 1.0;
  std::map<std::int64_t, std::uint64_t> bins_;
};

double bin_width_for(std::vector<double> pilot, std::uint64_t n) {
  const double iqr = empirical_quantile(pilot, 0.75) - empirical_quantile(pilot, 0.25);
  double width = freedman_diaconis_width(iqr, n);
  if (width > 0 && std::isfinite(width)) return width;
  const auto [lo, hi] = std::minmax_element(pilot.begin(), pilot.end());
  if (*hi > *lo) return (*hi - *lo) / std::ceil(std::cbrt(static_cast<double>(pilot.size())));
  return std::max(std::abs(*lo), 1.0) * 1e-9;
}

}  // namespace

DistributionSpec DistributionSpec::from_json(const json& j) {
  if (!j.is_object()) throw DataError("distribution spec must be a JSON object");
  DistributionSpec spec;
  std::array<bool, 10> seen{};
  try {
    for (std::size_t c = 0; c < 6; ++c) {
      const std::string name(kInputColumns[c]);
      if (!j.contains(name)) throw DataError("distribution spec is missing " + name);
      spec.laws[c] = parse_law(name, j.at(name));
      seen[c] = true;
    }
    if (j.contains("phi_fib")) {
      const auto& phi = j.at("phi_fib");
      if (phi.contains("constant")) {
        const auto values = phi.at("constant").get<std::vector<double>>();
        if (values.size() != 4) throw DataError("phi_fib needs four angles");
        for (std::size_t a = 0; a < 4; ++a) spec.laws[6 + a] = InputLaw::constant(values[a]);
      } else {
        const auto& n = phi.at("normal");
        const auto mu = n.at("mu").get<std::vector<double>>();
        if (mu.size() != 4) throw DataError("phi_fib needs four angles");
        const double sigma = n.value("sigma", kDefaultFiberSigmaDeg);
        for (std::size_t a = 0; a < 4; ++a) spec.laws[6 + a] = InputLaw::normal(mu[a], sigma);
      }
      for (std::size_t a = 0; a < 4; ++a) seen[6 + a] = true;
    }
    for (std::size_t c = 6; c < 10; ++c) {
      const std::string name(kInputColumns[c]);
      if (j.contains(name)) {
        spec.laws[c] = parse_law(name, j.at(name));
        seen[c] = true;
      }
      if (!seen[c]) throw DataError("distribution spec is missing " + name + " (or phi_fib)");
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed distribution spec: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
  return spec;
}

DistributionSpec DistributionSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open distribution spec " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

json DistributionSpec::to_json() const {
  json j = json::object();
  for (std::size_t c = 0; c < laws.size(); ++c) {
    const auto& law = laws[c];
    const std::string name(kInputColumns[c]);
    if (law.kind == InputLaw::Kind::kConstant) {
      j[name] = {{"constant", law.mu}};
    } else {
      j[name] = {{"normal", {{"mu", law.mu}, {"sigma", law.sigma}}}};
    }
  }
  return j;
}

DistributionSpec DistributionSpec::scenario(int case_number, char config) {
  if (case_number < 1 || case_number > 3) throw InvalidArgument("case number must be 1, 2 or 3");
  static constexpr double n_ls[] = {4, 10, 16};
  static constexpr double t_l[] = {0.1, 0.35, 0.6};
  static constexpr double v_p[] = {4.0, 5.25, 6.5};
  static constexpr double T_i[] = {200, 300, 400};
  static constexpr double T_pd[] = {20, 120, 220};
  static constexpr double T_air[] = {10, 20, 30};
  std::array<double, 4> phi;
  if (config == 'A' || config == 'a') {
    phi = {0, 45, -45, 90};
  } else if (config == 'B' || config == 'b') {
    phi = {30, -30, 60, -60};
  } else {
    throw InvalidArgument("fiber configuration must be A or B");
  }
  const auto i = static_cast<std::size_t>(case_number - 1);
  DistributionSpec spec;
  spec.laws[0] = InputLaw::constant(n_ls[i]);
  spec.laws[1] = InputLaw::normal_pct(t_l[i], 1.0);
  spec.laws[2] = InputLaw::normal_pct(v_p[i], 1.0);
  spec.laws[3] = InputLaw::normal_pct(T_i[i], 1.0);
  spec.laws[4] = InputLaw::normal_pct(T_pd[i], 0.75);
  spec.laws[5] = InputLaw::normal_pct(T_air[i], 1.5);
  for (std::size_t a = 0; a < 4; ++a) spec.laws[6 + a] = InputLaw::normal(phi[a], kDefaultFiberSigmaDeg);
  return spec;
}

void DistributionSpec::validate() const {
  for (std::size_t c = 0; c < laws.size(); ++c) {
    const auto& law = laws[c];
    if (!std::isfinite(law.mu)) throw InvalidArgument(std::string(kInputColumns[c]) + ": mean must be finite");
    if (law.kind == InputLaw::Kind::kNormal && !(law.sigma > 0 && std::isfinite(law.sigma))) {
      throw InvalidArgument(std::string(kInputColumns[c]) + ": sigma must be positive");
    }
  }
}

Eigen::MatrixXd sample_inputs(const DistributionSpec& spec, std::uint64_t first_row, std::size_t count,
                              std::uint64_t seed) {
  spec.validate();
  const CounterStream stream(seed);
  const auto cols = spec.laws.size();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < count; ++r) {
    const std::uint64_t row = first_row + r;
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& law = spec.laws[c];
      double v = law.mu;
      if (law.kind == InputLaw::Kind::kNormal) {
        v += law.sigma * normal_quantile(stream.uniform_open(row * cols + c));
      }
      X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return X;
}

double freedman_diaconis_width(double iqr, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("bin width needs samples");
  return 2.0 * iqr / std::cbrt(static_cast<double>(n));
}

PropagationResult propagate(const TrainedModel& model, const DistributionSpec& spec,
                            const PropagationOptions& options) {
  if (options.samples < 1) throw InvalidArgument("propagation needs at least one sample");
  if (options.batch_size < 1) throw InvalidArgument("batch size must be positive");
  if (model.input_names().size() != kInputColumns.size() ||
      !std::equal(model.input_names().begin(), model.input_names().end(), kInputColumns.begin())) {
    throw InvalidArgument("model inputs do not match the 10-column design schema");
  }
  spec.validate();

  const std::size_t n_out = model.output_names().size();
  const std::size_t pilot_size = std::min(options.samples, std::max<std::size_t>(options.pilot, 1));

  std::vector<std::vector<RunningMoments>> chunks(n_out);
  std::vector<RunningMoments> current(n_out);
  std::vector<std::vector<double>> pilot(n_out);
  std::vector<StreamingHistogram> histograms(n_out);
  bool binning = false;
  std::size_t in_chunk = 0;

  auto start_binning = [&] {
    for (std::size_t o = 0; o < n_out; ++o) {
      const double origin = *std::min_element(pilot[o].begin(), pilot[o].end());
      histograms[o].configure(origin, bin_width_for(pilot[o], options.samples));
      for (double y : pilot[o]) histograms[o].add(y);
      pilot[o].clear();
      pilot[o].shrink_to_fit();
    }
    binning = true;
  };

  for (std::size_t first = 0; first < options.samples; first += options.batch_size) {
    const std::size_t count = std::min(options.batch_size, options.samples - first);
    const Eigen::MatrixXd X = sample_inputs(spec, first, count, options.seed);
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n_out));
    const std::size_t blocks = (count + kPredictBlock - 1) / kPredictBlock;
    parallel_for(blocks, [&](std::size_t b) {
      const auto begin = static_cast<Eigen::Index>(b * kPredictBlock);
      const auto rows = std::min<Eigen::Index>(static_cast<Eigen::Index>(kPredictBlock),
                                               static_cast<Eigen::Index>(count) - begin);
      Y.middleRows(begin, rows) = model.predict_mean(X.middleRows(begin, rows));
    });

    for (Eigen::Index i = 0; i < Y.rows(); ++i) {
      for (std::size_t o = 0; o < n_out; ++o) {
        const double y = Y(i, static_cast<Eigen::Index>(o));
        current[o].push(y);
        if (binning) {
          histograms[o].add(y);
        } else {
          pilot[o].push_back(y);
        }
      }
      if (++in_chunk == kChunk) {
        for (std::size_t o = 0; o < n_out; ++o) {
          chunks[o].push_back(current[o]);
          current[o] = RunningMoments{};
        }
        in_chunk = 0;
      }
      if (!binning && pilot[0].size() == pilot_size) start_binning();
    }
  }

  PropagationResult result;
  result.samples = options.samples;
  for (std::size_t o = 0; o < n_out; ++o) {
    auto parts = std::move(chunks[o]);
    if (current[o].count() > 0) parts.push_back(current[o]);
    // Fixed pairwise tree over chunk order.
    while (parts.size() > 1) {
      std::vector<RunningMoments> next;
      for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
        next.push_back(parts[i]);
        next.back().merge(parts[i + 1]);
      }
      if (parts.size() % 2 == 1) next.push_back(parts.back());
      parts = std::move(next);
    }
    OutputDistribution dist;
    dist.output = model.output_names()[o];
    dist.moments = parts.front();
    dist.mean = dist.moments.mean();
    dist.stddev = dist.moments.stddev();
    dist.stddev_pct = dist.mean != 0.0 ? 100.0 * dist.stddev / std::abs(dist.mean) : std::nan("");
    dist.histogram = histograms[o].finish();
    result.outputs.push_back(std::move(dist));
  }
  return result;
}

void write_propagation_summary(const std::filesystem::path& path, const PropagationResult& result,
                               const std::vector<std::string>& comments) {
  auto out = csv::open_output(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "output,mean,std,std_pct_of_mean,skewness,excess_kurtosis,samples,min,max\n";
  for (const auto& d : result.outputs) {
    out << csv::join({d.output, csv::format_double(d.mean), csv::format_double(d.stddev),
                      csv::format_double(d.stddev_pct), csv::format_double(d.moments.skewness()),
                      csv::format_double(d.moments.excess_kurtosis()), std::to_string(d.moments.count()),
                      csv::format_double(d.moments.min()), csv::format_double(d.moments.max())})
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_histogram(const std::filesystem::path& path, const Histogram& histogram,
                     const std::vector<std::string>& comments) {
  auto out = csv::open_output(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    out << csv::join({csv::format_double(histogram.edges[b]), csv::format_double(histogram.edges[b + 1]),
                      std::to_string(histogram.counts[b])})
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace surro
