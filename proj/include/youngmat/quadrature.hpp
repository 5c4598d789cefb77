#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace youngmat {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
};

namespace detail {

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;

    bool operator<(const Panel& other) const noexcept { return error < other.error; }
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule as error estimate.
template <typename F>
Panel kronrod_panel(F& f, double a, double b) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double centre = f(mid);
    double k_sum = wk[0] * centre;
    double g_sum = wg[0] * centre;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double pair = f(mid - half * xk[i]) + f(mid + half * xk[i]);
        k_sum += wk[i] * pair;
        // even-indexed Kronrod abscissae are the Gauss nodes
        if (i % 2 == 0) g_sum += wg[i / 2] * pair;
    }
    return {a, b, half * k_sum, std::abs(half * (k_sum - g_sum))};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]: the panel with the
/// largest error estimate is bisected until the summed estimate falls below
/// rel_tol·|value| (or abs_tol), or `max_panels` is reached.
template <typename F>
QuadResult integrate(F&& f, double a, double b, double rel_tol, std::size_t max_panels = 2000, double abs_tol = 0.0) {
    std::priority_queue<detail::Panel> panels;
    detail::Panel first = detail::kronrod_panel(f, a, b);
    double value = first.value;
    double error = first.error;
    panels.push(first);
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && panels.size() < max_panels) {
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Panel left = detail::kronrod_panel(f, worst.a, mid);
        const detail::Panel right = detail::kronrod_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // re-sum to shed the drift of the running updates
    value = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {value, error};
}

}  // namespace youngmat
