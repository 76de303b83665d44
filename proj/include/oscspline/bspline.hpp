#pragma once

// Cardinal polynomial B-splines on the integer grid.
//
// N_1 is the indicator of (0, 1]; higher orders follow the two-term
// recursion
//
//     N_m(t) = (t N_{m-1}(t) + (m - t) N_{m-1}(t - 1)) / (m - 1).
//
// N_m is a piecewise polynomial of degree m - 1, C^{m-2} smooth, supported
// on (0, m]. The translates N_m(t/h - k) span the spline space S_{m,h}.

namespace oscspline {

/// Spline order m (polynomial degree m - 1). Always >= 1.
class PolyOrder {
public:
    /// Throws InvalidArgument for m < 1.
    explicit PolyOrder(int m);
    int value() const noexcept { return m_; }

private:
    int m_;
};

/// N_m(t). Exactly zero for t <= 0 or t > m.
double eval_N(PolyOrder m, double t);

/// N_m'(t) = N_{m-1}(t) - N_{m-1}(t - 1). Requires m >= 2. At the knots of
/// N_2 this is the mean of the one-sided slopes.
double eval_N_deriv(PolyOrder m, double t);

}  // namespace oscspline
