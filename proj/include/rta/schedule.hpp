#pragma once

#include "rta/types.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace rta {

enum class ScheduleKind { Constant, LinearCooling, LinearHeating, Tabulated };

// Environment temperature protocol T(t) on [0, tau].
//   constant:        T(t) = T0
//   linear_cooling:  T(t) = T0 (1 - t/tau)
//   linear_heating:  T(t) = T_crit t/tau
//   tabulated:       monotone-cubic interpolation of (time, temperature) pairs
class TemperatureSchedule {
  public:
    static TemperatureSchedule constant(double t0, double tau);
    static TemperatureSchedule linear_cooling(double t0, double tau);
    static TemperatureSchedule linear_heating(double t_crit, double tau);
    static TemperatureSchedule tabulated(std::vector<std::pair<double, double>> table);

    ScheduleKind kind() const { return kind_; }
    double tau() const { return tau_; }

    double temperature_at(double t) const;
    InverseTemperature beta_at(double t) const {
        return InverseTemperature::from_temperature(temperature_at(t));
    }

  private:
    TemperatureSchedule(ScheduleKind kind, double scale, double tau)
        : kind_(kind), scale_(scale), tau_(tau) {}

    ScheduleKind kind_;
    double scale_;  // T0 or T_crit
    double tau_;
    std::vector<double> knots_t_, knots_T_, slopes_;
};

// Equilibrium expectation map T -> <O>_T, defined and finite on [0, T_max]
// including the T = 0 limit.
struct EquilibriumCurve {
    std::function<double(double)> eval;
    std::string label;

    double operator()(double temperature) const { return eval(temperature); }
};

}  // namespace rta
