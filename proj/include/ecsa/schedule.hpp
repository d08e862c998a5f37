#pragma once

#include <cstdint>

namespace ecsa {

/// Cosine annealing with warm restarts.
///
/// Within a cycle of length cycle_length the value decays along a half cosine
/// from eta_max (position 0) towards eta_min. Advancing onto position
/// cycle_length restarts: position returns to 0 and the cycle length becomes
/// ceil(cycle_length * t_mult). A schedule with eta_min == eta_max is constant.
struct ScheduleState {
    double eta_min = 0.0;
    double eta_max = 1.0;
    std::uint64_t cycle_length = 100; // T_i
    std::uint64_t position = 0;       // T_cur
    double t_mult = 2.0;

    static ScheduleState cosine(double eta_min, double eta_max, std::uint64_t t0, double t_mult);
    static ScheduleState constant(double value);

    /// Throws std::invalid_argument if the invariants do not hold.
    void validate() const;

    friend bool operator==(const ScheduleState&, const ScheduleState&) = default;
};

/// eta_min + (eta_max - eta_min) (1 + cos(pi position / cycle_length)) / 2
double cosine_value(const ScheduleState& s);

ScheduleState advance(ScheduleState s);

struct CuckooParams {
    double discovery_rate; // P_a
    double step_size;      // alpha
};

/// Discovery rate and step size share one clock: both states must have the
/// same cycle bookkeeping.
CuckooParams ecsa_params(const ScheduleState& discovery, const ScheduleState& step);

/// Cycle settings shared by the discovery-rate and step-size schedules.
struct ScheduleConfig {
    double pa_min = 0.25;
    double pa_max = 0.5;
    double alpha_min = 0.01;
    double alpha_max = 0.05;
    std::uint64_t t0 = 100;
    double t_mult = 2.0;

    ScheduleState discovery() const { return ScheduleState::cosine(pa_min, pa_max, t0, t_mult); }
    ScheduleState step() const { return ScheduleState::cosine(alpha_min, alpha_max, t0, t_mult); }
};

} // namespace ecsa
