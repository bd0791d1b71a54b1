#include "rta/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace rta {

namespace {

void check_params(double scale, double tau) {
    if (!(scale >= 0.0)) {
        throw std::invalid_argument("TemperatureSchedule: temperature must be >= 0");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("TemperatureSchedule: tau must be > 0");
    }
}

}  // namespace

TemperatureSchedule TemperatureSchedule::constant(double t0, double tau) {
    check_params(t0, tau);
    return TemperatureSchedule(ScheduleKind::Constant, t0, tau);
}

TemperatureSchedule TemperatureSchedule::linear_cooling(double t0, double tau) {
    check_params(t0, tau);
    return TemperatureSchedule(ScheduleKind::LinearCooling, t0, tau);
}

TemperatureSchedule TemperatureSchedule::linear_heating(double t_crit, double tau) {
    check_params(t_crit, tau);
    return TemperatureSchedule(ScheduleKind::LinearHeating, t_crit, tau);
}

TemperatureSchedule TemperatureSchedule::tabulated(
    std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) {
        throw std::invalid_argument("tabulated schedule needs at least 2 points");
    }
    std::sort(table.begin(), table.end());
    const std::size_t n = table.size();
    if (table.front().first != 0.0) {
        throw std::invalid_argument("tabulated schedule must start at t = 0");
    }
    TemperatureSchedule s(ScheduleKind::Tabulated, table.front().second,
                          table.back().first);
    check_params(s.scale_, s.tau_);
    s.knots_t_.resize(n);
    s.knots_T_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && table[i].first <= table[i - 1].first) {
            throw std::invalid_argument("tabulated schedule times must be strictly ascending");
        }
        if (table[i].second < 0.0) {
            throw std::invalid_argument("tabulated schedule temperatures must be >= 0");
        }
        s.knots_t_[i] = table[i].first;
        s.knots_T_[i] = table[i].second;
    }
    // Fritsch-Carlson monotone cubic slopes; keeps the interpolant inside the
    // data range so T never overshoots below zero.
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d[i] = (s.knots_T_[i + 1] - s.knots_T_[i]) / (s.knots_t_[i + 1] - s.knots_t_[i]);
    }
    s.slopes_.resize(n);
    s.slopes_[0] = d[0];
    s.slopes_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        s.slopes_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            s.slopes_[i] = s.slopes_[i + 1] = 0.0;
            continue;
        }
        const double a = s.slopes_[i] / d[i];
        const double b = s.slopes_[i + 1] / d[i];
        const double r = a * a + b * b;
        if (r > 9.0) {
            const double f = 3.0 / std::sqrt(r);
            s.slopes_[i] = f * a * d[i];
            s.slopes_[i + 1] = f * b * d[i];
        }
    }
    return s;
}

double TemperatureSchedule::temperature_at(double t) const {
    if (t < 0.0 || t > tau_ * (1.0 + 1e-12)) {
        throw std::invalid_argument("temperature_at: t = " + std::to_string(t) +
                                    " outside [0, " + std::to_string(tau_) + "]");
    }
    t = std::min(t, tau_);
    switch (kind_) {
        case ScheduleKind::Constant:
            return scale_;
        case ScheduleKind::LinearCooling:
            return scale_ * (1.0 - t / tau_);
        case ScheduleKind::LinearHeating:
            return scale_ * (t / tau_);
        case ScheduleKind::Tabulated: {
            auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
            std::size_t i = (it == knots_t_.begin())
                                ? 0
                                : static_cast<std::size_t>(it - knots_t_.begin()) - 1;
            i = std::min(i, knots_t_.size() - 2);
            const double h = knots_t_[i + 1] - knots_t_[i];
            const double x = (t - knots_t_[i]) / h;
            const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
            const double h10 = x * (1 - x) * (1 - x);
            const double h01 = x * x * (3 - 2 * x);
            const double h11 = x * x * (x - 1);
            const double value = h00 * knots_T_[i] + h10 * h * slopes_[i] +
                                 h01 * knots_T_[i + 1] + h11 * h * slopes_[i + 1];
            return std::max(0.0, value);
        }
    }
    throw std::logic_error("unreachable schedule kind");
}

}  // namespace rta
