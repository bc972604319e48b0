// analytic.cpp

#include "bellmc/analytic.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bellmc {

namespace {

// Kronrod-15 abscissae on [0, 1]; even entries are the embedded Gauss-7
// points.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double lo, hi;
    double value;  // K15 estimate
    double error;  // |K15 - G7| based estimate
};

Panel evaluate_panel(const std::function<double(double)>& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double k15 = kWeightsK[7] * f(c);
    double g7 = kWeightsG[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fsum = f(c - h * kNodes[i]) + f(c + h * kNodes[i]);
        k15 += kWeightsK[i] * fsum;
        if (i % 2 == 1) g7 += kWeightsG[i / 2] * fsum;
    }
    k15 *= h;
    g7 *= h;
    const double diff = std::abs(k15 - g7);
    // Standard sharpened error model for the embedded pair.
    const double err = diff * std::min(1.0, std::pow(200.0 * diff, 0.5));
    return {lo, hi, k15, err};
}

}  // namespace

double triangle_area(double x) {
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("triangle_area needs |x| < 1");
    const double s = std::sqrt(1.0 + x) + std::sqrt(1.0 - x) - std::numbers::sqrt2;
    return s * s / std::sqrt(1.0 - x * x);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol,
                                    int max_subdivisions) {
    auto worse = [](const Panel& a, const Panel& b) { return a.error < b.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> panels(worse);
    panels.push(evaluate_panel(f, lo, hi));
    double total_error = panels.top().error;
    int subdivisions = 0;
    while (total_error > abs_tol) {
        if (subdivisions >= max_subdivisions)
            throw std::runtime_error("adaptive quadrature failed to converge");
        const Panel p = panels.top();
        panels.pop();
        const double mid = 0.5 * (p.lo + p.hi);
        const Panel left = evaluate_panel(f, p.lo, mid);
        const Panel right = evaluate_panel(f, mid, p.hi);
        total_error += left.error + right.error - p.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
    }
    QuadratureResult res;
    res.error_estimate = total_error;
    res.subdivisions = subdivisions;
    while (!panels.empty()) {
        res.value += panels.top().value;
        panels.pop();
    }
    return res;
}

RimSingleProbability chsh_rim_single_probability() {
    // After x = sin t the integrand of  (1/8) Int_{-1}^{1} triangle_area(x) dx
    // becomes a bounded function of t on [-pi/2, pi/2]:
    //   (sqrt(1 + sin t) + sqrt(1 - sin t) - sqrt 2)^2.
    const auto integrand = [](double t) {
        const double s = std::sin(t);
        const double r = std::sqrt(1.0 + s) + std::sqrt(1.0 - s) - std::numbers::sqrt2;
        return r * r;
    };
    const QuadratureResult q = integrate_adaptive(
        integrand, -std::numbers::pi / 2.0, std::numbers::pi / 2.0, 1e-10);

    RimSingleProbability out;
    out.closed_form = (std::numbers::pi - 3.0) / 2.0;
    out.quadrature = q.value / 8.0;
    if (std::abs(out.closed_form - out.quadrature) > 1e-9)
        throw std::logic_error("quadrature disagrees with the closed form");
    return out;
}

double chsh_rim_orbit_probability() { return 2.0 * (std::numbers::pi - 3.0); }

}  // namespace bellmc
