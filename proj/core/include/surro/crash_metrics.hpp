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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace surro {

/// Sampled signal: strictly increasing times (ms) with finite values.
class TimeSeries {
 public:
  /// Throws InvalidArgument unless there are at least two samples, times
  /// strictly increase and every value is finite.
  TimeSeries(std::vector<double> t, std::vector<double> v);

  /// Reads a two-column CSV with header "t_ms,value".
  static TimeSeries load_csv(const std::filesystem::path& path);

  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& v() const { return v_; }
  std::size_t size() const { return t_.size(); }
  double duration() const { return t_.back() - t_.front(); }
  double final_value() const { return v_.back(); }

 private:
  std::vector<double> t_;
  std::vector<double> v_;
};

struct Peak {
  double value = 0.0;
  double time = 0.0;  // earliest time at which the maximum occurs
};

Peak peak_load(const TimeSeries& force);

/// Time-averaged load: trapezoidal integral over the record divided by its
/// duration.
double average_load(const TimeSeries& force);

/// Average load over peak load. Throws InvalidArgument for a nonpositive peak.
double crush_load_efficiency(const TimeSeries& force);

/// Absorbed energy per unit mass (J/kg). Requires mass > 0 and energy >= 0.
double specific_energy_absorption(double energy, double mass);

struct Intrusion {
  double absolute = 0.0;  // final displacement of the contact-side node
  double relative = 0.0;  // contact minus far node at the final time
};

Intrusion intrusion(const TimeSeries& node_contact, const TimeSeries& node_far);

struct CrashMetrics {
  double F_p = 0.0;
  double F_p_time = 0.0;
  double F_avg = 0.0;
  double CLE = 0.0;
  double SEA = 0.0;
  double dY_node = 0.0;
  double dY_node_rel = 0.0;
};

/// All metrics for one run. EA is the final value of the absorbed-energy
/// series.
CrashMetrics extract_metrics(const TimeSeries& force, const TimeSeries& energy, const TimeSeries& node_contact,
                             const TimeSeries& node_far, double mass);

struct RunMetrics {
  std::string run_id;
  CrashMetrics metrics;
};

/// Processes a manifest of the form
///   {"run-id": {"force": "f.csv", "energy": "e.csv",
///               "displacement_contact": "c.csv", "displacement_far": "d.csv",
///               "mass_kg": 12.5}, ...}
/// Relative paths resolve against the manifest's directory. Runs are
/// returned in run-id order and may be processed concurrently.
std::vector<RunMetrics> extract_batch(const std::filesystem::path& manifest);

/// Writes run_id,F_p,CLE,SEA,dY_node,F_avg,dY_node_rel rows.
void write_metrics_csv(const std::filesystem::path& path, const std::vector<RunMetrics>& runs,
                       const std::vector<std::string>& comments = {});

}  // namespace surro
