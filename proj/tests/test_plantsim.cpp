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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cobo/plantsim.hpp"

namespace cobo::plantsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Wind, ReferenceValuesAtKeyTimes) {
  const WindModel w;
  const WindVelocity v0 = wind_velocity(0.0, w);
  EXPECT_DOUBLE_EQ(v0.vx, 0.606);
  EXPECT_DOUBLE_EQ(v0.vy, 0.0);
  EXPECT_DOUBLE_EQ(v0.vz, 0.0);
  const WindVelocity q = wind_velocity(0.25, w);
  EXPECT_NEAR(q.vx, 0.606 + 0.0866, 1e-15);
  EXPECT_NEAR(q.vy, 0.065, 1e-15);
  EXPECT_NEAR(q.vz, 0.0087, 1e-15);
  for (double t : {0.0, 0.13, 0.5, 0.77, 3.3}) {
    const WindVelocity a = wind_velocity(t, w), b = wind_velocity(t + 1.0, w);
    EXPECT_NEAR(a.vx, b.vx, 1e-13);
    EXPECT_NEAR(a.vy, b.vy, 1e-13);
    EXPECT_NEAR(a.vz, b.vz, 1e-13);
  }
  EXPECT_EQ(flow_heading({0.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(flow_heading(q), std::atan2(0.065, 0.6926), 1e-15);
}

TEST(InducedAngles, Examples) {
  const InducedAngles a = induced_angles(3.0, 3.0, 3.0, 0.5, 0.5);
  EXPECT_EQ(a.roll, 0.0);
  EXPECT_EQ(a.pitch, 0.0);
  EXPECT_NEAR(induced_angles(2.0, 2.0, 2.5, 0.5, 0.5).roll, kPi / 4.0, 1e-15);
  EXPECT_NEAR(induced_angles(10.1, 10.0, 10.0, 1.0, 1.0).pitch, std::atan(0.1), 1e-12);
  EXPECT_NEAR(induced_angles(10.1, 10.0, 10.0, 1.0, 1.0).pitch, 0.0997, 1e-4);
}

TEST(Mixing, ColumnsAndRoundTrip) {
  const TetherSpeeds z = mix_tether_speeds({1.0, 0.0, 0.0});
  EXPECT_EQ(z.center, 1.0);
  EXPECT_EQ(z.stbd, 1.0);
  EXPECT_EQ(z.port, 1.0);
  const TetherSpeeds r = mix_tether_speeds({0.0, 0.0, 1.0});
  EXPECT_EQ(r.center, 0.0);
  EXPECT_EQ(r.stbd, 1.0);
  EXPECT_EQ(r.port, -1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const LoopOutputs v{u(rng), u(rng), u(rng)};
    const LoopOutputs back = unmix_tether_speeds(mix_tether_speeds(v));
    ASSERT_NEAR(back.v_z, v.v_z, 1e-12);
    ASSERT_NEAR(back.v_theta, v.v_theta, 1e-12);
    ASSERT_NEAR(back.v_phi, v.v_phi, 1e-12);
  }
}

TEST(Controller, AtRestGivesZeroOutput) {
  const SimState s = equilibrium_state({}, {});
  const ControlStep c = controller_step(s, {}, {}, {}, 0.1);
  EXPECT_NEAR(c.speeds.center, 0.0, 1e-15);
  EXPECT_NEAR(c.speeds.stbd, 0.0, 1e-15);
  EXPECT_NEAR(c.speeds.port, 0.0, 1e-15);
}

TEST(Controller, LeadFilterDcGainIsKp) {
  const LeadGains g{0.7, 0.3, 0.5};
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 2000; ++i) y = detail::lead_update(g, 2.0, x, 0.1);
  EXPECT_NEAR(y, 0.7 * 2.0, 1e-12);
  // instantaneous response of (kd s + kp)/(tau s + 1) to a step is kd / tau
  double x0 = 0.0;
  EXPECT_NEAR(detail::lead_update(g, 1.0, x0, 0.1), 0.3 / 0.5, 1e-15);
}

TEST(Dynamics, EquilibriumIsAFixedPoint) {
  for (const PlantParams p : {PlantParams{0.0, 1.0}, PlantParams{-0.4, 0.6}, PlantParams{0.45, 1.9}}) {
    for (double theta : {-0.2, 0.0, 0.3}) {
      SimConfig cfg;
      const SimState s0 = equilibrium_state(p, {2.0, theta, 0.0}, cfg);
      const PlantPhysical ph = PlantPhysical::from(p, cfg.coeffs);
      SimState s = s0;
      for (int k = 0; k < 100; ++k) {
        const SimState next = step_dynamics(s, ph, TetherSpeeds{}, WindVelocity{}, cfg.dt, cfg.geometry, cfg.coeffs);
        const auto a = detail::pack(s), b = detail::pack(next);
        for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(std::abs(a[i] - b[i]), 1e-10);
        s = next;
      }
    }
  }
}

double energy_drift(double dt, int steps, double* initial = nullptr) {
  SurrogateCoefficients c;
  c.damping = false;
  const PlantParams p{0.1, 1.2};
  const PlantPhysical ph = PlantPhysical::from(p, c);
  SimState s;
  s.zenith = 0.3;
  s.azimuth_rate = 0.2;
  s.twist_rate = 0.1;
  s.pitch_deflection = 0.05;
  s.roll_deflection = -0.02;
  const double e0 = mechanical_energy(s, ph, c);
  if (initial) *initial = e0;
  for (int k = 0; k < steps; ++k) s = step_dynamics(s, ph, TetherSpeeds{}, WindVelocity{}, dt, Geometry{}, c);
  return std::abs(mechanical_energy(s, ph, c) - e0);
}

TEST(Dynamics, UndampedEnergyConservedAtFourthOrder) {
  double e0 = 0.0;
  const double coarse = energy_drift(0.01, 1000, &e0);
  const double fine = energy_drift(0.005, 2000);
  EXPECT_LT(coarse, 1e-3 * e0);
  // same horizon, half the step: global error shrinks by ~2^4
  EXPECT_GT(coarse / fine, 8.0);
}

TEST(Dynamics, TetherIntegrationIsExactForConstantSpeeds) {
  SimConfig cfg;
  const PlantPhysical ph = PlantPhysical::from({}, cfg.coeffs);
  SimState s = equilibrium_state({}, {});
  const auto l0 = s.tether;
  const TetherSpeeds u{0.01, -0.02, 0.005};
  for (int k = 0; k < 500; ++k) s = step_dynamics(s, ph, u, WindVelocity{}, cfg.dt);
  EXPECT_NEAR(s.tether[0] - l0[0], 0.01 * 5.0, 1e-12);
  EXPECT_NEAR(s.tether[1] - l0[1], -0.02 * 5.0, 1e-12);
  EXPECT_NEAR(s.tether[2] - l0[2], 0.005 * 5.0, 1e-12);
}

TEST(Dynamics, BlowupIsFlaggedNotThrown) {
  const PlantPhysical ph = PlantPhysical::from({}, {});
  SimState s;
  s.zenith_rate = 1e7;
  const SimState n = step_dynamics(s, ph, TetherSpeeds{}, WindVelocity{}, 0.01);
  EXPECT_TRUE(n.diverged);
  EXPECT_TRUE(step_dynamics(n, ph, TetherSpeeds{}, WindVelocity{}, 0.01).diverged);
}

TEST(Simulator, StationaryFlightHasZeroCost) {
  SimConfig cfg;
  cfg.wind_enabled = false;
  for (double theta : {0.0, 0.1}) {
    const auto h = run_episode({0.2, 1.4}, {theta}, 60.0, 0, cfg);
    EXPECT_NEAR(evaluate_performance_index(h, {}, 0.0, 60.0), 0.0, 1e-8);
    EXPECT_NEAR(evaluate_performance_index(h, {}, 17.0, 41.0), 0.0, 1e-8);
  }
}

TEST(Simulator, WindGivesPositiveCost) {
  const auto h = run_episode({}, {0.05}, 120.0, 0, {});
  EXPECT_FALSE(h.back().diverged);
  EXPECT_GT(evaluate_performance_index(h, {}, 30.0, 120.0), 0.0);
}

TEST(Simulator, Deterministic) {
  SimConfig cfg;
  cfg.random_wind_phase = true;
  const auto a = run_episode({0.1, 0.9}, {0.02}, 30.0, 11, cfg);
  const auto b = run_episode({0.1, 0.9}, {0.02}, 30.0, 11, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].time, b[i].time);
    EXPECT_EQ(a[i].zenith, b[i].zenith);
    EXPECT_EQ(a[i].roll, b[i].roll);
    EXPECT_EQ(a[i].heading, b[i].heading);
    EXPECT_EQ(a[i].speeds.center, b[i].speeds.center);
  }
}

TEST(Simulator, SamplesAtControlRateIncludingEnds) {
  const auto h = run_episode({}, {0.0}, 2.0, 0, {});
  ASSERT_EQ(h.size(), 21u);
  EXPECT_EQ(h.front().time, 0.0);
  EXPECT_NEAR(h.back().time, 2.0, 1e-12);
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_NEAR(h[i].time - h[i - 1].time, 0.1, 1e-12);
}

double episode_cost(const PlantParams& p, double theta, const SimConfig& cfg = {}) {
  const auto h = run_episode(p, {theta}, 180.0, 0, cfg);
  return evaluate_performance_index(h, {}, 60.0, 180.0);
}

TEST(Simulator, PitchSweepHasSingleInteriorMinimum) {
  std::vector<double> j;
  for (int i = 0; i <= 20; ++i) j.push_back(episode_cost({}, -0.2 + 0.55 * i / 20.0));
  const auto it = std::min_element(j.begin(), j.end());
  EXPECT_NE(it, j.begin());
  EXPECT_NE(it, j.end() - 1);
  int turns = 0;
  for (std::size_t i = 2; i < j.size(); ++i)
    if ((j[i] - j[i - 1]) * (j[i - 1] - j[i - 2]) < 0.0) ++turns;
  EXPECT_EQ(turns, 1);
  for (double v : j) EXPECT_GT(v, 0.0);
}

TEST(Simulator, OptimalPitchDependsOnCenterOfMass) {
  auto argmin = [](const PlantParams& p) {
    double best = 1e300, arg = 0.0;
    for (int i = 0; i <= 55; ++i) {
      const double th = -0.2 + 0.01 * i;
      const double v = episode_cost(p, th);
      if (v < best) {
        best = v;
        arg = th;
      }
    }
    return arg;
  };
  EXPECT_GT(std::abs(argmin({-0.5, 1.1}) - argmin({0.5, 1.1})), 0.05);
}

TEST(Simulator, Rk4StepHalvingConverges) {
  SimConfig a, b, c;
  a.dt = 0.02;
  b.dt = 0.01;
  c.dt = 0.005;
  const double ja = episode_cost({}, 0.05, a), jb = episode_cost({}, 0.05, b), jc = episode_cost({}, 0.05, c);
  EXPECT_LT(std::abs(jc - jb), 4.0 * std::abs(jb - ja) + 1e-12);
}

TEST(PerformanceIndex, SineSquaredIntegral) {
  std::vector<SimSample> h;
  for (int i = 0; i <= 4000; ++i) {
    SimSample s;
    s.time = kPi * i / 4000.0;
    s.zenith = std::sin(s.time);
    h.push_back(s);
  }
  EXPECT_NEAR(evaluate_performance_index(h, {1.0, 0.0, 0.0}, 0.0, kPi), kPi / 2.0, 1e-6);
  EXPECT_NEAR(evaluate_performance_index(h, {2.0, 0.0, 0.0}, 0.0, kPi), kPi, 2e-6);
  EXPECT_NEAR(evaluate_performance_index(h, {1.0, 0.0, 0.0}, 0.0, kPi / 2.0), kPi / 4.0, 1e-6);
  EXPECT_EQ(evaluate_performance_index(h, {}, 10.0, 11.0), 0.0);
}

TEST(PerformanceIndex, HeadingErrorIsWrapped) {
  std::vector<SimSample> h(2);
  h[1].time = 1.0;
  for (auto& s : h) {
    s.heading = kPi - 0.05;
    s.flow_heading = -kPi + 0.05;
  }
  EXPECT_NEAR(evaluate_performance_index(h, {0.0, 1.0, 0.0}, 0.0, 1.0), 0.01, 1e-12);
}

TEST(TimeSeries, CsvHeader) {
  std::stringstream ss;
  const auto h = run_episode({}, {0.0}, 0.2, 0, {});
  write_timeseries_csv(ss, h);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "time,zenith,azimuth,twist,pitch,roll,heading,flow_heading,altitude,pitch_setpoint,u_center,u_stbd,u_port");
  int rows = 0;
  for (std::string line; std::getline(ss, line);) ++rows;
  EXPECT_EQ(rows, static_cast<int>(h.size()));
}

TEST(Plant, InvalidParametersRejected) {
  EXPECT_THROW(PlantPhysical::from({0.0, 0.0}, {}), InvalidArgument);
  EXPECT_THROW(PlantPhysical::from({0.0, -1.0}, {}), InvalidArgument);
}

}  // namespace
}  // namespace cobo::plantsim
