#include "ecsa/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecsa {

ScheduleState ScheduleState::cosine(double eta_min, double eta_max, std::uint64_t t0, double t_mult) {
    ScheduleState s{eta_min, eta_max, t0, 0, t_mult};
    s.validate();
    return s;
}

ScheduleState ScheduleState::constant(double value) {
    return ScheduleState{value, value, 1, 0, 1.0};
}

void ScheduleState::validate() const {
    if (!(std::isfinite(eta_min) && std::isfinite(eta_max) && eta_min <= eta_max))
        throw std::invalid_argument("schedule: requires finite eta_min <= eta_max");
    if (cycle_length == 0) throw std::invalid_argument("schedule: cycle length must be positive");
    if (position > cycle_length) throw std::invalid_argument("schedule: position beyond cycle length");
    if (!(t_mult >= 1.0)) throw std::invalid_argument("schedule: t_mult must be >= 1");
}

double cosine_value(const ScheduleState& s) {
    const double phase = static_cast<double>(s.position) / static_cast<double>(s.cycle_length);
    return s.eta_min + 0.5 * (s.eta_max - s.eta_min) * (1.0 + std::cos(std::numbers::pi * phase));
}

ScheduleState advance(ScheduleState s) {
    ++s.position;
    if (s.position >= s.cycle_length) {
        s.position = 0;
        s.cycle_length = static_cast<std::uint64_t>(std::ceil(static_cast<double>(s.cycle_length) * s.t_mult));
    }
    return s;
}

CuckooParams ecsa_params(const ScheduleState& discovery, const ScheduleState& step) {
    if (discovery.position != step.position || discovery.cycle_length != step.cycle_length)
        throw std::invalid_argument("ecsa_params: schedules are out of step");
    return CuckooParams{cosine_value(discovery), cosine_value(step)};
}

} // namespace ecsa
