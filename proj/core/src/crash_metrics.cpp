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

#include "surro/crash_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "surro/csv.hpp"
#include "surro/error.hpp"
#include "surro/parallel.hpp"

namespace surro {

TimeSeries::TimeSeries(std::vector<double> t, std::vector<double> v) : t_(std::move(t)), v_(std::move(v)) {
  if (t_.size() != v_.size()) throw InvalidArgument("time series: time and value lengths differ");
  if (t_.size() < 2) throw InvalidArgument("time series needs at least 2 samples");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(v_[i])) throw InvalidArgument("time series has non-finite samples");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw InvalidArgument("time series times must strictly increase");
  }
}

TimeSeries TimeSeries::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open time series " + path.string());
  std::string line;
  bool header = false;
  std::vector<double> t, v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = csv::split_line(line);
    if (!header) {
      if (fields != std::vector<std::string>{"t_ms", "value"}) {
        throw DataError(path.string() + ": expected header t_ms,value");
      }
      header = true;
      continue;
    }
    double a = 0, b = 0;
    if (fields.size() != 2 || !csv::parse_double(fields[0], a) || !csv::parse_double(fields[1], b)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": malformed sample");
    }
    t.push_back(a);
    v.push_back(b);
  }
  if (!header) throw DataError(path.string() + ": missing header");
  try {
    return TimeSeries(std::move(t), std::move(v));
  } catch (const InvalidArgument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Peak peak_load(const TimeSeries& force) {
  Peak p{force.v()[0], force.t()[0]};
  for (std::size_t i = 1; i < force.size(); ++i) {
    if (force.v()[i] > p.value) p = {force.v()[i], force.t()[i]};
  }
  return p;
}

double average_load(const TimeSeries& force) {
  const auto& t = force.t();
  const auto& v = force.v();
  // Integrate deviations from the peak so a constant record averages to
  // exactly its value.
  const double reference = *std::max_element(v.begin(), v.end());
  double area = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    area += 0.5 * ((v[i] - reference) + (v[i - 1] - reference)) * (t[i] - t[i - 1]);
  }
  const double duration = force.duration();
  if (!(duration > 0)) throw InvalidArgument("zero-duration force record");
  return reference + area / duration;
}

double crush_load_efficiency(const TimeSeries& force) {
  const double peak = peak_load(force).value;
  if (!(peak > 0)) throw InvalidArgument("crush load efficiency needs a positive peak load");
  return average_load(force) / peak;
}

double specific_energy_absorption(double energy, double mass) {
  if (!(mass > 0) || !std::isfinite(mass)) throw InvalidArgument("total mass must be positive");
  if (!(energy >= 0) || !std::isfinite(energy)) throw InvalidArgument("absorbed energy must be nonnegative");
  return energy / mass;
}

Intrusion intrusion(const TimeSeries& node_contact, const TimeSeries& node_far) {
  return {node_contact.final_value(), node_contact.final_value() - node_far.final_value()};
}

CrashMetrics extract_metrics(const TimeSeries& force, const TimeSeries& energy, const TimeSeries& node_contact,
                             const TimeSeries& node_far, double mass) {
  CrashMetrics m;
  const Peak peak = peak_load(force);
  m.F_p = peak.value;
  m.F_p_time = peak.time;
  m.F_avg = average_load(force);
  m.CLE = crush_load_efficiency(force);
  m.SEA = specific_energy_absorption(energy.final_value(), mass);
  const Intrusion dy = intrusion(node_contact, node_far);
  m.dY_node = dy.absolute;
  m.dY_node_rel = dy.relative;
  return m;
}

std::vector<RunMetrics> extract_batch(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(manifest.string() + ": " + e.what());
  }
  if (!doc.is_object() || doc.empty()) throw DataError(manifest.string() + ": manifest must be a non-empty object");

  const auto base = manifest.parent_path();
  std::vector<std::pair<std::string, nlohmann::json>> entries;
  for (const auto& item : doc.items()) entries.emplace_back(item.key(), item.value());
  std::vector<RunMetrics> runs(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const auto& [id, entry] = entries[i];
    try {
      auto series = [&](const char* key) {
        std::filesystem::path p = entry.at(key).get<std::string>();
        return TimeSeries::load_csv(p.is_absolute() ? p : base / p);
      };
      runs[i].run_id = id;
      runs[i].metrics = extract_metrics(series("force"), series("energy"), series("displacement_contact"),
                                        series("displacement_far"), entry.at("mass_kg").get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw DataError("run " + id + ": " + e.what());
    } catch (const Error& e) {
      throw DataError("run " + id + ": " + e.what());
    }
  });
  return runs;
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<RunMetrics>& runs,
                       const std::vector<std::string>& comments) {
  auto out = csv::open_output(path);
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "run_id,F_p,CLE,SEA,dY_node,F_avg,dY_node_rel\n";
  for (const auto& r : runs) {
    const auto& m = r.metrics;
    out << csv::join({r.run_id, csv::format_double(m.F_p), csv::format_double(m.CLE), csv::format_double(m.SEA),
                      csv::format_double(m.dY_node), csv::format_double(m.F_avg), csv::format_double(m.dY_node_rel)})
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace surro
