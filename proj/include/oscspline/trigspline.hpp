#pragma once

// Trigonometric B-splines Q_{m,h} on a uniform grid of a 1-periodic domain.
//
//     Q_{1,h}(t) = indicator of (0, h]
//     Q_{m,h}(t) = (sin(pi t) Q_{m-1,h}(t) + sin(pi (h m - t)) Q_{m-1,h}(t - h))
//                  / sin(pi h (m - 1))
//
// Each piece lies in the span of exp(2 pi i (j - (m-1)/2) t), j = 0..m-1. For
// odd m that span holds 1, cos(2 pi k t), sin(2 pi k t) with k <= (m-1)/2; for
// even m every piece is anti-periodic, f(t + 1) = -f(t).
// As h -> 0, Q_{m,h}(h u) approaches the cardinal B-spline N_m(u).

namespace oscspline {

/// Order m and mesh size h of a trigonometric B-spline. Requires m >= 1,
/// 0 < h and h * m < 1 (strict).
class TrigBasisParams {
public:
    TrigBasisParams(int m, double h);
    int m() const noexcept { return m_; }
    double h() const noexcept { return h_; }

private:
    int m_;
    double h_;
};

/// Q_{m,h}(t). Exactly zero for t <= 0 or t > m h.
double eval_Q(const TrigBasisParams& p, double t);

/// d/dt Q_{m,h}(t), by differentiating the recursion level by level.
/// Requires m >= 2. At the kinks of Q_{2,h} (t = 0, h, 2h) the right-hand
/// limit is returned.
double eval_Q_deriv(const TrigBasisParams& p, double t);

}  // namespace oscspline
