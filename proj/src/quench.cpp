#include "rta/quench.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rta {

RealVector relax_kernel_value(const std::function<RealVector(double)>& f,
                              double gamma0, double t, double rel_tol) {
    if (!(gamma0 > 0.0)) {
        throw std::invalid_argument("relax_kernel_value: gamma0 must be > 0");
    }
    if (t < 0.0) {
        throw std::invalid_argument("relax_kernel_value: t must be >= 0");
    }
    if (t == 0.0) return f(0.0);

    const double cut = std::max(0.0, t - 35.0 / gamma0);
    std::vector<double> breaks{cut};
    for (double d : {10.0, 3.0, 1.0}) {
        const double p = t - d / gamma0;
        if (p > breaks.back()) breaks.push_back(p);
    }
    breaks.push_back(t);

    auto integrand = [&](double tp) -> RealVector {
        return gamma0 * std::exp(gamma0 * (tp - t)) * f(tp);
    };
    RealVector total = integrate_adaptive(integrand, breaks[0], breaks[1], rel_tol);
    for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
        total += integrate_adaptive(integrand, breaks[i], breaks[i + 1], rel_tol);
    }
    if (gamma0 * t < 700.0) {
        total += std::exp(-gamma0 * t) * f(0.0);
    }
    return total;
}

DensityMatrix quench_state(const Spectrum& spec, const TemperatureSchedule& schedule,
                           double gamma0, double t) {
    if (t < 0.0 || t > schedule.tau() * (1.0 + 1e-12)) {
        throw std::invalid_argument("quench_state: t outside [0, tau]");
    }
    auto weights = [&](double tp) { return gibbs_weights(spec, schedule.beta_at(tp)); };
    RealVector w = relax_kernel_value(weights, gamma0, t);
    // The exact state is a convex combination of Gibbs states; renormalizing
    // strips the quadrature error from the trace.
    w = w.cwiseMax(0.0);
    w /= w.sum();
    Operator rho = spec.basis * w.asDiagonal() * spec.basis.adjoint();
    rho = 0.5 * (rho + rho.adjoint().eval());
    return DensityMatrix(std::move(rho), 1e-8);
}

double observable_value(const EquilibriumCurve& curve,
                        const TemperatureSchedule& schedule, double gamma0, double t) {
    if (t < 0.0 || t > schedule.tau() * (1.0 + 1e-12)) {
        throw std::invalid_argument("observable_value: t outside [0, tau]");
    }
    auto f = [&](double tp) -> RealVector {
        RealVector v(1);
        v(0) = curve(schedule.temperature_at(tp));
        return v;
    };
    return relax_kernel_value(f, gamma0, t)(0);
}

}  // namespace rta
