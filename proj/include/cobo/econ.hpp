// Copyright 2026 The cobo Authors. All Rights Reserved.
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
// =============================================================================

#ifndef COBO_ECON_HPP
#define COBO_ECON_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "cobo/common.hpp"

namespace cobo {
namespace econ {

/// Cost and time parameters of a water-channel test campaign. Rates are in
/// the units named by the field; everything is converted to hours (and
/// $/hour, with 24 hours per day) before combining.
struct EconParams {
  double c_eng = 30.0;          // $/hour
  double c_recharge = 240.0;    // $/day
  double c_wrecharge = 2400.0;  // $/day
  double c_lost_time = 1200.0;  // $/day
  double t_print = 12.0;        // hours
  double t_3d_fins = 4.0;       // hours
  double t_lead = 5.0;          // days
  double t_setup = 30.0;        // minutes
  double t_reconfig = 5.0;      // minutes
  double t_exp = 1200.0;        // seconds
  int m = 1;                    // print staff
  int m_prime = 2;              // experiment staff

  void validate() const {
    for (double v : {c_eng, c_recharge, c_wrecharge, c_lost_time, t_print, t_3d_fins, t_lead, t_setup,
                     t_reconfig, t_exp})
      require(v >= 0.0 && std::isfinite(v), "EconParams: costs and times must be finite and nonnegative");
    require(m >= 0 && m_prime >= 0, "EconParams: staff counts must be nonnegative");
  }

  bool operator==(const EconParams&) const = default;
};

struct CostBreakdown {
  double c_3d = 0.0;
  double c_3dfins = 0.0;
  double c_lead = 0.0;
  double c_wchannel = 0.0;
  double per_batch_total = 0.0;
  int n_per_batch = 0;
  int n_convergence = 0;
  double campaign_total = 0.0;
};

constexpr double kHoursPerDay = 24.0;
constexpr double kMinutesPerHour = 60.0;
constexpr double kSecondsPerHour = 3600.0;

/// The four per-iteration cost components for `n_per_batch` designs.
inline CostBreakdown batch_cost(const EconParams& p, int n_per_batch) {
  p.validate();
  require(n_per_batch >= 1, "batch_cost: elements per batch must be >= 1");
  const double n = static_cast<double>(n_per_batch);
  const double print_rate = p.m * p.c_eng + p.c_recharge / kHoursPerDay;
  const double channel_rate = p.m_prime * p.c_eng + p.c_wrecharge / kHoursPerDay;
  const double channel_hours =
      p.t_setup / kMinutesPerHour + n * p.t_exp / kSecondsPerHour + n * p.t_reconfig / kMinutesPerHour;

  CostBreakdown c;
  c.n_per_batch = n_per_batch;
  c.c_3d = print_rate * n * p.t_print;
  c.c_3dfins = print_rate * n * p.t_3d_fins;
  c.c_lead = (p.c_lost_time / kHoursPerDay) * (p.t_lead * kHoursPerDay);
  c.c_wchannel = channel_rate * channel_hours;
  c.per_batch_total = c.c_3d + c.c_3dfins + c.c_lead + c.c_wchannel;
  return c;
}

/// Total campaign cost: iterations to convergence times the per-batch cost.
inline CostBreakdown campaign_cost(const EconParams& p, int n_per_batch, int n_convergence) {
  require(n_convergence >= 1, "campaign_cost: iterations to convergence must be >= 1");
  CostBreakdown c = batch_cost(p, n_per_batch);
  c.n_convergence = n_convergence;
  c.campaign_total = static_cast<double>(n_convergence) * c.per_batch_total;
  return c;
}

struct Scenario {
  int n_per_batch = 1;
  int n_convergence = 1;
  bool operator==(const Scenario&) const = default;
};

struct EconReport {
  std::vector<CostBreakdown> rows;
  bool monotone_decreasing = true;  ///< campaign totals strictly fall row to row

  /// Fixed-width text table.
  std::string format() const {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%8s %8s %12s %12s %12s %12s %14s %14s\n", "N", "N_conv", "C_3D", "C_3DFins",
                  "C_lead", "C_Wchannel", "per_batch", "C_total");
    out += buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%8d %8d %12.2f %12.2f %12.2f %12.2f %14.2f %14.2f\n", r.n_per_batch,
                    r.n_convergence, r.c_3d, r.c_3dfins, r.c_lead, r.c_wchannel, r.per_batch_total,
                    r.campaign_total);
      out += buf;
    }
    out += std::string("monotone_decreasing = ") + (monotone_decreasing ? "true" : "false") + "\n";
    return out;
  }

  std::string csv() const {
    std::string out = "n_per_batch,n_convergence,c_3d,c_3dfins,c_lead,c_wchannel,per_batch_total,campaign_total\n";
    char buf[256];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.n_per_batch, r.n_convergence, r.c_3d,
                    r.c_3dfins, r.c_lead, r.c_wchannel, r.per_batch_total, r.campaign_total);
      out += buf;
    }
    return out;
  }
};

inline EconReport economies_report(const EconParams& p, const std::vector<Scenario>& scenarios) {
  require(!scenarios.empty(), "economies_report: no scenarios");
  EconReport rep;
  for (const auto& s : scenarios) rep.rows.push_back(campaign_cost(p, s.n_per_batch, s.n_convergence));
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].campaign_total < rep.rows[i - 1].campaign_total)) rep.monotone_decreasing = false;
  return rep;
}

/// Batch sizes 1, 3, 4 with 8, 6, 5 iterations to convergence.
inline std::vector<Scenario> reference_scenarios() { return {{1, 8}, {3, 6}, {4, 5}}; }

}  // namespace econ
}  // namespace cobo

#endif  // COBO_ECON_HPP
