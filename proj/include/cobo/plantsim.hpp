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

#ifndef COBO_PLANTSIM_HPP
#define COBO_PLANTSIM_HPP

#include <array>
#include <concepts>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <span>

#include "cobo/common.hpp"

namespace cobo {

/// Plant design variables: longitudinal center-of-mass offset from the
/// center of buoyancy (m) and horizontal stabilizer area (m^2).
struct PlantParams {
  double cm_offset = 0.0;
  double stab_area = 1.0;

  Vector to_vector() const { return (Vector(2) << cm_offset, stab_area).finished(); }
  static PlantParams from_vector(const Vector& v) {
    require(v.size() == 2, "PlantParams: expected 2 coordinates");
    return {v[0], v[1]};
  }
  bool operator==(const PlantParams&) const = default;
};

/// Controller parameter adapted online: trim pitch set-point (rad).
struct ControlParams {
  double pitch_setpoint = 0.0;

  Vector to_vector() const { return (Vector(1) << pitch_setpoint).finished(); }
  static ControlParams from_vector(const Vector& v) {
    require(v.size() == 1, "ControlParams: expected 1 coordinate");
    return {v[0]};
  }
  bool operator==(const ControlParams&) const = default;
};

namespace plantsim {

// ---------------------------------------------------------------------------
// Wind

/// Sinusoidal vortex-shedding perturbation about a base flow along x.
/// `omega` is in rad/s; the default is a 1 Hz shedding frequency.
struct WindModel {
  double v_base = 0.606;
  double v_x0 = 0.0866;
  double v_y0 = 0.065;
  double v_z0 = 0.0087;
  double omega = 2.0 * std::numbers::pi;
  double phase = 0.0;

  void validate() const {
    require(v_base > 0.0, "WindModel: v_base must be positive");
    require(std::isfinite(omega) && omega >= 0.0, "WindModel: omega must be finite and nonnegative");
  }
};

struct WindVelocity {
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;
};

inline WindVelocity wind_velocity(double t, const WindModel& w) {
  require(t >= 0.0, "wind_velocity: time must be nonnegative");
  const double s = std::sin(w.omega * t + w.phase);
  return {w.v_base + w.v_x0 * s, w.v_y0 * s, w.v_z0 * s};
}

/// Direction the flow is heading in the horizontal plane (0 for still air).
inline double flow_heading(const WindVelocity& v) {
  return (v.vx == 0.0 && v.vy == 0.0) ? 0.0 : std::atan2(v.vy, v.vx);
}

// ---------------------------------------------------------------------------
// Bridle kinematics

struct InducedAngles {
  double roll = 0.0;
  double pitch = 0.0;
};

/// Bridle angles from the three tether lengths (center, starboard, port).
inline InducedAngles induced_angles(double l1, double l2, double l3, double long_sep, double lat_sep) {
  require(long_sep > 0.0 && lat_sep > 0.0, "induced_angles: separations must be positive");
  return {std::atan((l3 - l2) / lat_sep), std::atan((l1 - 0.5 * (l2 + l3)) / long_sep)};
}

struct Geometry {
  double long_sep = 0.5;        // m
  double lat_sep = 0.5;         // m
  double nominal_tether = 2.0;  // m, also the default altitude set-point
};

// ---------------------------------------------------------------------------
// Controller

/// (kd s + kp) / (tau s + 1)
struct LeadGains {
  double kp = 0.0;
  double kd = 0.0;
  double tau = 0.5;
};

/// Defaults give each loop a dominant closed-loop time constant near 5.5 s
/// around the integrating tether kinematics.
struct ControllerGains {
  LeadGains altitude{0.2, 0.2, 0.5};
  LeadGains pitch{0.05, 0.05, 0.5};
  LeadGains roll{0.05, 0.05, 0.5};
};

struct Setpoints {
  double altitude = 2.0;
  double pitch = 0.0;
  double roll = 0.0;
};

struct LoopOutputs {
  double v_z = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;
};

struct TetherSpeeds {
  double center = 0.0;
  double stbd = 0.0;
  double port = 0.0;
};

/// Maps (altitude, pitch, roll) loop outputs to tether release speeds.
inline TetherSpeeds mix_tether_speeds(const LoopOutputs& v) {
  return {v.v_z - v.v_theta, v.v_z + v.v_theta + v.v_phi, v.v_z + v.v_theta - v.v_phi};
}

/// Inverse of the mixing matrix.
inline LoopOutputs unmix_tether_speeds(const TetherSpeeds& u) {
  const double v_phi = 0.5 * (u.stbd - u.port);
  const double v_z = 0.25 * (2.0 * u.center + u.stbd + u.port);
  const double v_theta = 0.25 * (u.stbd + u.port - 2.0 * u.center);
  return {v_z, v_theta, v_phi};
}

// ---------------------------------------------------------------------------
// State

struct SimState {
  double zenith = 0.0, zenith_rate = 0.0;
  double azimuth = 0.0, azimuth_rate = 0.0;
  double twist = 0.0, twist_rate = 0.0;
  double pitch_deflection = 0.0, pitch_deflection_rate = 0.0;  // hull pitch relative to the bridle
  double roll_deflection = 0.0, roll_deflection_rate = 0.0;    // hull roll relative to the bridle
  std::array<double, 3> tether{2.0, 2.0, 2.0};                 // center, starboard, port (m)
  std::array<double, 3> filter{0.0, 0.0, 0.0};                 // lead filter states: altitude, pitch, roll
  TetherSpeeds command;                                        // held between control updates
  double sim_time = 0.0;
  bool diverged = false;

  double tether_length() const { return (tether[0] + tether[1] + tether[2]) / 3.0; }

  InducedAngles induced(const Geometry& g) const {
    return induced_angles(tether[0], tether[1], tether[2], g.long_sep, g.lat_sep);
  }

  double altitude() const { return tether_length() * std::cos(zenith); }
};

/// One controller update: lead-filtered PD on each tracking error, then the
/// mixing matrix. Attitude feedback comes from the bridle (induced) angles.
/// Errors are signed so every loop is negative feedback through the mixing
/// matrix: altitude error is set-point minus measurement, pitch and roll
/// errors are measurement minus set-point.
struct ControlStep {
  TetherSpeeds speeds;
  LoopOutputs loops;
  std::array<double, 3> filter{};
};

namespace detail {
/// Returns the filter output for error `e` and advances `x` by one period.
inline double lead_update(const LeadGains& g, double e, double& x, double dt) {
  const double y = (g.kd / g.tau) * (e - x) + g.kp * x;
  x += (1.0 - std::exp(-dt / g.tau)) * (e - x);
  return y;
}
}  // namespace detail

inline ControlStep controller_step(const SimState& state, const Setpoints& sp, const ControllerGains& gains,
                                   const Geometry& geometry, double dt) {
  require(dt > 0.0, "controller_step: dt must be positive");
  const InducedAngles ind = state.induced(geometry);
  const double e_z = sp.altitude - state.altitude();
  const double e_theta = ind.pitch - sp.pitch;
  const double e_phi = ind.roll - sp.roll;
  ControlStep out;
  out.filter = state.filter;
  out.loops.v_z = detail::lead_update(gains.altitude, e_z, out.filter[0], dt);
  out.loops.v_theta = detail::lead_update(gains.pitch, e_theta, out.filter[1], dt);
  out.loops.v_phi = detail::lead_update(gains.roll, e_phi, out.filter[2], dt);
  out.speeds = mix_tether_speeds(out.loops);
  return out;
}

// ---------------------------------------------------------------------------
// Reduced dynamics

/// Coefficients of the reduced tethered-body model. Forces are per unit of
/// net buoyancy and moments per unit inertia; q is dynamic pressure relative
/// to the base flow.
struct SurrogateCoefficients {
  double v_ref = 0.606;
  // aerodynamics: drag and lift, affine in stabilizer area
  double drag0 = 0.0, drag_area = 0.018, drag_alpha2 = 0.5;
  double lift_alpha = 1.2, lift_area_alpha = 0.3;
  // zenith / azimuth pendulum modes
  double zenith_omega = 1.2, zenith_damping = 1.44;
  double azimuth_omega = 1.0, azimuth_damping = 1.2, azimuth_side_gain = 1.0;
  // heading (twist) weathervane: stiffness = gain * stab_area * (arm + cm_offset)
  double heading_gain = 300.0, heading_arm = 1.1;
  double heading_damping0 = 0.5, heading_damping_q = 7.5;
  // hull pitch deflection relative to the bridle
  double pitch_k0 = 100.0, pitch_k_area = 100.0, pitch_k_cm = 20.0;
  double pitch_c0 = 10.0, pitch_c_area = 4.0, pitch_c_cm = 0.0;
  double pitch_moment_q = -15.0, pitch_moment_cm = 30.0;
  // hull roll deflection relative to the bridle
  // roll stiffness = gain * (arm - cm_offset)
  double roll_gain = 1000.0, roll_arm = 0.7, roll_damping = 8.0, roll_side_gain = 160.0;
  // when false every damping term is zero (energy-conserving configuration)
  bool damping = true;
};

/// Plant parameters resolved into the coefficients the dynamics use.
struct PlantPhysical {
  double cm_offset = 0.0;
  double stab_area = 1.0;
  double pitch_stiffness = 0.0;
  double pitch_damping = 0.0;
  double heading_stiffness = 0.0;
  double roll_stiffness = 0.0;

  static PlantPhysical from(const PlantParams& p, const SurrogateCoefficients& c) {
    require(p.stab_area > 0.0, "PlantPhysical: stabilizer area must be positive");
    PlantPhysical ph;
    ph.cm_offset = p.cm_offset;
    ph.stab_area = p.stab_area;
    ph.pitch_stiffness = c.pitch_k0 + c.pitch_k_area * p.stab_area + c.pitch_k_cm * p.cm_offset;
    ph.pitch_damping = c.pitch_c0 + c.pitch_c_area * p.stab_area + c.pitch_c_cm * p.cm_offset;
    ph.heading_stiffness = c.heading_gain * p.stab_area * (c.heading_arm + p.cm_offset);
    ph.roll_stiffness = c.roll_gain * (c.roll_arm - p.cm_offset);
    require(ph.pitch_stiffness > 0.0 && ph.heading_stiffness > 0.0 && ph.roll_stiffness > 0.0,
            "PlantPhysical: plant parameters give a non-positive stiffness");
    return ph;
  }
};

namespace detail {

using Packed = std::array<double, 13>;

inline Packed pack(const SimState& s) {
  return {s.zenith, s.zenith_rate, s.azimuth, s.azimuth_rate, s.twist, s.twist_rate, s.pitch_deflection,
          s.pitch_deflection_rate, s.roll_deflection, s.roll_deflection_rate, s.tether[0], s.tether[1], s.tether[2]};
}

inline void unpack(const Packed& x, SimState& s) {
  s.zenith = x[0];
  s.zenith_rate = x[1];
  s.azimuth = x[2];
  s.azimuth_rate = x[3];
  s.twist = x[4];
  s.twist_rate = x[5];
  s.pitch_deflection = x[6];
  s.pitch_deflection_rate = x[7];
  s.roll_deflection = x[8];
  s.roll_deflection_rate = x[9];
  s.tether = {x[10], x[11], x[12]};
}

inline double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

inline Packed derivative(const Packed& x, const PlantPhysical& plant, const TetherSpeeds& u, const WindVelocity& w,
                         const Geometry& g, const SurrogateCoefficients& c) {
  const double damp = c.damping ? 1.0 : 0.0;
  const double v2 = w.vx * w.vx + w.vy * w.vy + w.vz * w.vz;
  const double q = v2 / (c.v_ref * c.v_ref);
  const double q_side = w.vy * std::sqrt(v2) / (c.v_ref * c.v_ref);
  const double heading_flow = flow_heading(w);
  const double induced_pitch = std::atan((x[10] - 0.5 * (x[11] + x[12])) / g.long_sep);
  const double inflow = w.vx > 0.0 ? std::atan2(w.vz, w.vx) : 0.0;
  const double alpha = induced_pitch + x[6] - inflow;
  const double drag = q * (c.drag0 + c.drag_area * plant.stab_area + c.drag_alpha2 * alpha * alpha);
  const double lift = q * (c.lift_alpha + c.lift_area_alpha * plant.stab_area) * alpha;

  Packed dx{};
  dx[0] = x[1];
  dx[1] = -damp * c.zenith_damping * x[1] +
          c.zenith_omega * c.zenith_omega * (drag * std::cos(x[0]) - (1.0 + lift) * std::sin(x[0]));
  dx[2] = x[3];
  dx[3] = -damp * c.azimuth_damping * x[3] +
          c.azimuth_omega * c.azimuth_omega * (c.azimuth_side_gain * q_side - std::sin(x[2]));
  dx[4] = x[5];
  dx[5] = -damp * (c.heading_damping0 + c.heading_damping_q * q) * x[5] -
          q * plant.heading_stiffness * std::sin(x[4] - heading_flow);
  dx[6] = x[7];
  dx[7] = -damp * plant.pitch_damping * x[7] - plant.pitch_stiffness * x[6] + c.pitch_moment_q * q -
          c.pitch_moment_cm * plant.cm_offset;
  dx[8] = x[9];
  dx[9] = -damp * c.roll_damping * x[9] - plant.roll_stiffness * x[8] + c.roll_side_gain * q_side;
  dx[10] = u.center;
  dx[11] = u.stbd;
  dx[12] = u.port;
  return dx;
}

inline bool blown_up(const SimState& s) {
  const Packed x = pack(s);
  for (double v : x)
    if (!std::isfinite(v) || std::abs(v) > 1e6) return true;
  if (std::abs(s.zenith) >= std::numbers::pi / 2) return true;
  for (double l : s.tether)
    if (l <= 0.0) return true;
  return false;
}

}  // namespace detail

/// One fixed RK4 step with tether speeds held constant. `wind_at(t)` supplies
/// the flow at each stage time. Flags divergence instead of throwing.
template <typename WindFn>
  requires std::invocable<WindFn&, double>
SimState step_dynamics(const SimState& state, const PlantPhysical& plant, const TetherSpeeds& u, WindFn&& wind_at,
                       double dt, const Geometry& g = {}, const SurrogateCoefficients& c = {}) {
  require(dt > 0.0 && dt <= 0.05, "step_dynamics: dt must be in (0, 0.05]");
  if (state.diverged) return state;
  using detail::Packed;
  const Packed x0 = detail::pack(state);
  auto axpy = [](const Packed& a, double h, const Packed& b) {
    Packed r;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + h * b[i];
    return r;
  };
  const double t = state.sim_time;
  const WindVelocity w0 = wind_at(t);
  const WindVelocity wm = wind_at(t + 0.5 * dt);
  const WindVelocity w1 = wind_at(t + dt);
  const Packed k1 = detail::derivative(x0, plant, u, w0, g, c);
  const Packed k2 = detail::derivative(axpy(x0, 0.5 * dt, k1), plant, u, wm, g, c);
  const Packed k3 = detail::derivative(axpy(x0, 0.5 * dt, k2), plant, u, wm, g, c);
  const Packed k4 = detail::derivative(axpy(x0, dt, k3), plant, u, w1, g, c);
  Packed x1;
  for (std::size_t i = 0; i < x1.size(); ++i) x1[i] = x0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

  SimState next = state;
  detail::unpack(x1, next);
  next.sim_time = t + dt;
  next.diverged = detail::blown_up(next);
  return next;
}

/// Constant-wind overload.
inline SimState step_dynamics(const SimState& state, const PlantPhysical& plant, const TetherSpeeds& u,
                              const WindVelocity& wind, double dt, const Geometry& g = {},
                              const SurrogateCoefficients& c = {}) {
  return step_dynamics(state, plant, u, [&wind](double) { return wind; }, dt, g, c);
}

/// Mechanical energy of the still-air, uncontrolled model; conserved when
/// damping is disabled.
inline double mechanical_energy(const SimState& s, const PlantPhysical& plant, const SurrogateCoefficients& c) {
  const double zeta_eq = -c.pitch_moment_cm * plant.cm_offset / plant.pitch_stiffness;
  const double dz = s.pitch_deflection - zeta_eq;
  return 0.5 * s.zenith_rate * s.zenith_rate + c.zenith_omega * c.zenith_omega * (1.0 - std::cos(s.zenith)) +
         0.5 * s.azimuth_rate * s.azimuth_rate + c.azimuth_omega * c.azimuth_omega * (1.0 - std::cos(s.azimuth)) +
         0.5 * s.twist_rate * s.twist_rate + 0.5 * s.pitch_deflection_rate * s.pitch_deflection_rate +
         0.5 * plant.pitch_stiffness * dz * dz + 0.5 * s.roll_deflection_rate * s.roll_deflection_rate +
         0.5 * plant.roll_stiffness * s.roll_deflection * s.roll_deflection;
}

// ---------------------------------------------------------------------------
// Simulator

struct SimConfig {
  double dt = 0.01;            // s, RK4 step
  double control_rate = 10.0;  // Hz
  WindModel wind;
  bool wind_enabled = true;
  bool random_wind_phase = false;  // draw the shedding phase from the seed
  ControllerGains gains;
  Geometry geometry;
  SurrogateCoefficients coeffs;

  void validate() const {
    require(dt > 0.0 && dt <= 0.05, "SimConfig: dt must be in (0, 0.05]");
    require(control_rate > 0.0, "SimConfig: control rate must be positive");
    const double steps = 1.0 / (control_rate * dt);
    require(std::abs(steps - std::round(steps)) < 1e-9 && std::round(steps) >= 1.0,
            "SimConfig: control period must be a whole number of integration steps");
    wind.validate();
  }

  int steps_per_control() const { return static_cast<int>(std::lround(1.0 / (control_rate * dt))); }
};

/// Still-air equilibrium for the given set-points: vertical tether, bridle
/// at the pitch set-point, hull deflected by the static moment, all filters
/// at rest.
inline SimState equilibrium_state(const PlantParams& plant, const Setpoints& sp, const SimConfig& cfg = {}) {
  const PlantPhysical ph = PlantPhysical::from(plant, cfg.coeffs);
  SimState s;
  const double offset = cfg.geometry.long_sep * std::tan(sp.pitch);
  const double side = sp.altitude - offset / 3.0;
  s.tether = {side + offset, side, side};
  s.pitch_deflection = -cfg.coeffs.pitch_moment_cm * plant.cm_offset / ph.pitch_stiffness;
  return s;
}

/// Everything recorded at a control instant.
struct SimSample {
  double time = 0.0;
  double zenith = 0.0;        // Phi
  double azimuth = 0.0;       // Theta
  double twist = 0.0;         // Psi
  double pitch = 0.0;         // hull pitch theta
  double roll = 0.0;          // hull roll phi
  double heading = 0.0;       // psi
  double flow_heading = 0.0;  // psi_flow
  double altitude = 0.0;      // z
  double tether_length = 0.0;
  double induced_pitch = 0.0;
  double induced_roll = 0.0;
  double pitch_setpoint = 0.0;
  double roll_setpoint = 0.0;
  TetherSpeeds speeds;
  bool diverged = false;
};

class Simulator {
 public:
  Simulator(const PlantParams& plant, const SimConfig& cfg, double pitch_setpoint, std::uint64_t seed = 0)
      : plant_params_(plant), cfg_(cfg), physical_(PlantPhysical::from(plant, cfg.coeffs)) {
    cfg_.validate();
    if (cfg_.random_wind_phase) {
      std::mt19937_64 rng(seed);
      cfg_.wind.phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    }
    setpoints_.altitude = cfg_.geometry.nominal_tether;
    setpoints_.pitch = pitch_setpoint;
    reset();
  }

  /// Back to the still-air equilibrium at the current set-points, time zero.
  void reset() {
    state_ = equilibrium_state(plant_params_, setpoints_, cfg_);
    steps_ = 0;
  }

  void set_pitch_setpoint(double theta_sp) { setpoints_.pitch = theta_sp; }
  const Setpoints& setpoints() const { return setpoints_; }
  const SimState& state() const { return state_; }
  const SimConfig& config() const { return cfg_; }
  const PlantPhysical& physical() const { return physical_; }
  bool diverged() const { return state_.diverged; }
  double time() const { return static_cast<double>(steps_) * cfg_.dt; }

  WindVelocity wind_at(double t) const {
    return cfg_.wind_enabled ? wind_velocity(t, cfg_.wind) : WindVelocity{0.0, 0.0, 0.0};
  }

  SimSample sample() const {
    SimSample s;
    const InducedAngles ind = state_.induced(cfg_.geometry);
    s.time = time();
    s.zenith = state_.zenith;
    s.azimuth = state_.azimuth;
    s.twist = state_.twist;
    s.pitch = ind.pitch + state_.pitch_deflection;
    s.roll = ind.roll + state_.roll_deflection;
    s.heading = state_.twist;
    s.flow_heading = flow_heading(wind_at(s.time));
    s.altitude = state_.altitude();
    s.tether_length = state_.tether_length();
    s.induced_pitch = ind.pitch;
    s.induced_roll = ind.roll;
    s.pitch_setpoint = setpoints_.pitch;
    s.roll_setpoint = setpoints_.roll;
    s.speeds = state_.command;
    s.diverged = state_.diverged;
    return s;
  }

  /// Advances by `duration` (rounded to whole steps). Samples are appended to
  /// `history` at every control instant, including both ends of the interval.
  void advance(double duration, std::vector<SimSample>* history = nullptr) {
    require(duration >= 0.0, "Simulator::advance: negative duration");
    const long n = std::lround(duration / cfg_.dt);
    const int per_control = cfg_.steps_per_control();
    for (long i = 0; i < n && !state_.diverged; ++i) {
      if (steps_ % per_control == 0) {
        const ControlStep cs = controller_step(state_, setpoints_, cfg_.gains, cfg_.geometry,
                                               per_control * cfg_.dt);
        state_.command = cs.speeds;
        state_.filter = cs.filter;
        if (history) {
          // a sample closing the previous advance is superseded by this one
          if (!history->empty() && history->back().time == time()) history->pop_back();
          history->push_back(sample());
        }
      }
      state_.sim_time = time();
      state_ = step_dynamics(state_, physical_, state_.command, [this](double t) { return wind_at(t); }, cfg_.dt,
                             cfg_.geometry, cfg_.coeffs);
      ++steps_;
    }
    if (history && (history->empty() || history->back().time != time())) history->push_back(sample());
  }

 private:
  PlantParams plant_params_;
  SimConfig cfg_;
  PlantPhysical physical_;
  Setpoints setpoints_;
  SimState state_;
  long steps_ = 0;
};

/// Fresh simulator at the still-air equilibrium, run for `duration` seconds.
inline std::vector<SimSample> run_episode(const PlantParams& plant, const ControlParams& control, double duration,
                                          std::uint64_t seed, const SimConfig& cfg = {}) {
  Simulator sim(plant, cfg, control.pitch_setpoint, seed);
  std::vector<SimSample> history;
  sim.advance(duration, &history);
  return history;
}

struct PerformanceWeights {
  double k1 = 1.0;  // zenith
  double k2 = 1.0;  // heading error
  double k3 = 1.0;  // roll error
};

/// Trapezoidal integral of k1 Phi^2 + k2 (psi - psi_flow)^2 + k3 (phi - phi_sp)^2
/// over samples with t_begin <= t <= t_end. Samples outside the window are
/// ignored; fewer than two samples inside gives zero.
inline double evaluate_performance_index(std::span<const SimSample> history, const PerformanceWeights& w,
                                         double t_begin, double t_end) {
  require(t_end >= t_begin, "evaluate_performance_index: empty window");
  constexpr double kTol = 1e-9;
  auto integrand = [&](const SimSample& s) {
    const double he = detail::wrap_angle(s.heading - s.flow_heading);
    const double re = s.roll - s.roll_setpoint;
    return w.k1 * s.zenith * s.zenith + w.k2 * he * he + w.k3 * re * re;
  };
  double total = 0.0;
  const SimSample* prev = nullptr;
  for (const auto& s : history) {
    if (s.time < t_begin - kTol || s.time > t_end + kTol) continue;
    if (prev) total += 0.5 * (s.time - prev->time) * (integrand(*prev) + integrand(s));
    prev = &s;
  }
  return total;
}

inline void write_timeseries_csv(std::ostream& os, std::span<const SimSample> history) {
  os << "time,zenith,azimuth,twist,pitch,roll,heading,flow_heading,altitude,pitch_setpoint,"
        "u_center,u_stbd,u_port\n";
  os.precision(10);
  for (const auto& s : history) {
    os << s.time << ',' << s.zenith << ',' << s.azimuth << ',' << s.twist << ',' << s.pitch << ',' << s.roll << ','
       << s.heading << ',' << s.flow_heading << ',' << s.altitude << ',' << s.pitch_setpoint << ','
       << s.speeds.center << ',' << s.speeds.stbd << ',' << s.speeds.port << '\n';
  }
}

// ---------------------------------------------------------------------------
// Synthetic-quadratic mode

/// Analytic stand-in for the dynamics. In unit-box coordinates u_p (plant)
/// and u_c (control): J = scale * (|u_p - plant_target|^2 + (u_c - c*(u_p))^2)
/// with the optimal control c*(u_p) = control_offset + coupling . u_p.
struct SyntheticQuadratic {
  Vector plant_target;
  double control_offset = 0.5;
  Vector coupling;
  double scale = 1.0;

  double optimal_control(const Vector& unit_plant) const {
    return control_offset + (coupling.size() ? coupling.dot(unit_plant) : 0.0);
  }

  double cost(const Vector& unit_plant, double unit_control) const {
    require(unit_plant.size() == plant_target.size(), "SyntheticQuadratic: plant dimension mismatch");
    const double dc = unit_control - optimal_control(unit_plant);
    return scale * ((unit_plant - plant_target).squaredNorm() + dc * dc);
  }
};

}  // namespace plantsim
}  // namespace cobo

#endif  // COBO_PLANTSIM_HPP
