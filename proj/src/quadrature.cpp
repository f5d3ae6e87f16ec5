#include "hypzero/quadrature.hpp"

#include "hypzero/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace hypzero {

namespace {

// P_N(x) and P_N'(x) by the three-term recurrence.
template <typename T>
std::pair<T, T> legendre_and_derivative(int count, const T& x) {
    T prev = x * 0 + 1;
    T cur = x;
    for (int k = 1; k < count; ++k) {
        T next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    T deriv = count * (x * cur - prev) / (x * x - 1);
    return {std::move(cur), std::move(deriv)};
}

GaussLegendreRule compute_rule(int count, Bits bits) {
    const Bits work = bits + 32;
    const int half = (count + 1) / 2;
    std::vector<BigFloat> xs;
    std::vector<BigFloat> ws;
    for (int i = 1; i <= half; ++i) {
        // Positive roots in decreasing order, Newton in double then at full precision.
        double xd = std::cos(std::numbers::pi * (i - 0.25) / (count + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_and_derivative(count, xd);
            const double dx = p / dp;
            xd -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        BigFloat x(xd, work);
        const BigFloat tol = pow2(-static_cast<long>(work) + 4, 53);
        for (int it = 0; it < 64; ++it) {
            const auto [p, dp] = legendre_and_derivative(count, x);
            const BigFloat dx = p / dp;
            x -= dx;
            if (abs(dx) < tol) break;
        }
        const auto [p, dp] = legendre_and_derivative(count, x);
        (void)p;
        const BigFloat w = BigFloat(2L, work) / ((1 - x * x) * dp * dp);
        xs.push_back(std::move(x));
        ws.push_back(w);
    }

    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(count), BigFloat(bits));
    rule.weights.resize(static_cast<std::size_t>(count), BigFloat(bits));
    for (int i = 0; i < half; ++i) {
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(count - 1 - i);
        // x on [-1, 1] -> (1 + x)/2 on [0, 1]
        rule.nodes[hi] = ((1 + xs[lo]) / 2).at(bits);
        rule.nodes[lo] = ((1 - xs[lo]) / 2).at(bits);
        rule.weights[hi] = (ws[lo] / 2).at(bits);
        rule.weights[lo] = rule.weights[hi];
    }
    if (count % 2 == 1) rule.nodes[static_cast<std::size_t>(half - 1)] = BigFloat(mpq_class(1, 2), bits);
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int count, Bits bits) {
    if (count < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    static std::mutex mutex;
    static std::map<std::pair<int, Bits>, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{count, bits}];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(count, bits));
    return *slot;
}

} // namespace hypzero
