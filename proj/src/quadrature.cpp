#include "rta/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rta {

namespace {

GaussLegendreRule compute_rule(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-like initial guess, refined by Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= order; ++n) {
                const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes(i) = x;
        rule.weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const int kOrder = 15;

RealVector panel(const std::function<RealVector(double)>& f, double a, double b) {
    const GaussLegendreRule& rule = gauss_legendre(kOrder);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    RealVector acc = rule.weights(0) * f(mid + half * rule.nodes(0));
    for (int i = 1; i < kOrder; ++i) {
        acc += rule.weights(i) * f(mid + half * rule.nodes(i));
    }
    return half * acc;
}

RealVector refine(const std::function<RealVector(double)>& f, double a, double b,
                  const RealVector& whole, double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const RealVector left = panel(f, a, mid);
    const RealVector right = panel(f, mid, b);
    RealVector sum = left + right;
    // second test: roundoff floor, the halved estimates cannot be
    // distinguished below the cancellation noise of their own summation
    const double err = (sum - whole).norm();
    if (err <= tol || err <= 4e-15 * (left.norm() + right.norm())) return sum;
    if (depth >= max_depth) {
        throw std::runtime_error("quadrature non-convergence on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]");
    }
    return refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, compute_rule(order)).first;
    }
    return it->second;
}

RealVector integrate_adaptive(const std::function<RealVector(double)>& f, double a,
                              double b, double rel_tol, int max_depth) {
    if (!(b >= a)) {
        throw std::invalid_argument("integrate_adaptive: b must be >= a");
    }
    RealVector rough = panel(f, a, b);
    if (a == b) return RealVector::Zero(rough.size());
    const double scale = std::max(rough.norm(), 1e-300);
    return refine(f, a, b, rough, rel_tol * scale, 0, max_depth);
}

double integrate_adaptive_scalar(const std::function<double(double)>& f, double a,
                                 double b, double rel_tol, int max_depth) {
    auto wrapped = [&f](double x) {
        RealVector v(1);
        v(0) = f(x);
        return v;
    };
    return integrate_adaptive(wrapped, a, b, rel_tol, max_depth)(0);
}

}  // namespace rta
