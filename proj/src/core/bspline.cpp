#include "oscspline/bspline.hpp"

#include "oscspline/errors.hpp"

namespace oscspline {

namespace {

double cardinal(int m, double t) {
    if (t <= 0.0 || t > static_cast<double>(m)) return 0.0;
    if (m == 1) return 1.0;
    return (t * cardinal(m - 1, t) + (m - t) * cardinal(m - 1, t - 1.0)) / (m - 1);
}

// N_1 with value 1/2 at both ends, so N_2' takes the mean slope at its knots.
double half_open_step(double t) {
    if (t == 0.0 || t == 1.0) return 0.5;
    return (t > 0.0 && t < 1.0) ? 1.0 : 0.0;
}

}  // namespace

PolyOrder::PolyOrder(int m) : m_(m) {
    if (m < 1) throw InvalidArgument("spline order must be >= 1, got " + std::to_string(m));
}

double eval_N(PolyOrder m, double t) { return cardinal(m.value(), t); }

double eval_N_deriv(PolyOrder m, double t) {
    const int order = m.value();
    if (order < 2)
        throw InvalidArgument("B-spline derivative needs order >= 2, got " + std::to_string(order));
    if (order == 2) return half_open_step(t) - half_open_step(t - 1.0);
    return cardinal(order - 1, t) - cardinal(order - 1, t - 1.0);
}

}  // namespace oscspline
