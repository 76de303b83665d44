#include "oscspline/trigspline.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "oscspline/errors.hpp"

namespace oscspline {

namespace {

constexpr double kPi = std::numbers::pi;

double trig_value(int m, double h, double t) {
    if (t <= 0.0 || t > m * h) return 0.0;
    if (m == 1) return 1.0;
    const double num = std::sin(kPi * t) * trig_value(m - 1, h, t) +
                       std::sin(kPi * (h * m - t)) * trig_value(m - 1, h, t - h);
    return num / std::sin(kPi * h * (m - 1));
}

// (Q, Q') on the right-continuous support [0, m h).
std::pair<double, double> trig_value_and_slope(int m, double h, double t) {
    if (t < 0.0 || t >= m * h) return {0.0, 0.0};
    if (m == 1) return {1.0, 0.0};
    const auto [q0, dq0] = trig_value_and_slope(m - 1, h, t);
    const auto [q1, dq1] = trig_value_and_slope(m - 1, h, t - h);
    const double s0 = std::sin(kPi * t);
    const double s1 = std::sin(kPi * (h * m - t));
    const double denom = std::sin(kPi * h * (m - 1));
    const double value = (s0 * q0 + s1 * q1) / denom;
    const double slope = (kPi * std::cos(kPi * t) * q0 + s0 * dq0 -
                          kPi * std::cos(kPi * (h * m - t)) * q1 + s1 * dq1) /
                         denom;
    return {value, slope};
}

}  // namespace

TrigBasisParams::TrigBasisParams(int m, double h) : m_(m), h_(h) {
    if (m < 1) throw InvalidArgument("trigonometric spline order must be >= 1");
    if (!(h > 0.0) || !(h * m < 1.0))
        throw InvalidArgument("trigonometric spline needs 0 < h and h*m < 1, got m=" +
                              std::to_string(m) + " h=" + std::to_string(h));
}

double eval_Q(const TrigBasisParams& p, double t) { return trig_value(p.m(), p.h(), t); }

double eval_Q_deriv(const TrigBasisParams& p, double t) {
    if (p.m() < 2) throw InvalidArgument("trigonometric spline derivative needs order >= 2");
    return trig_value_and_slope(p.m(), p.h(), t).second;
}

}  // namespace oscspline
