#pragma once

// Uniform periodic spline collocation on the unit period.
//
// A spline on a grid of size n is s(t) = sum_l c_{l mod n} B(n t - l), where B
// is N_m for the polynomial family and u -> Q_{m,1/n}(u/n) for the
// trigonometric one. It is sampled at the collocation points
// t_k = (k + m/2 + sigma)/n, so s(t_k) = sum_l c_l B(k - l + m/2 + sigma) is a
// circular convolution of the coefficients.

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oscspline/spectral.hpp"

namespace oscspline {

struct BasisSpec {
    Family family = Family::polynomial;
    int m = 3;
    int n = 16;
    double sigma = 0.0;

    /// Requires m >= 2, n > m and |sigma| < 1/2.
    void validate() const;
    double h() const noexcept { return 1.0 / n; }
    SymbolQuery symbol_query(int k) const;
};

/// Coefficients c_l, l = 0..n-1, for each state dimension.
struct SplineFunction {
    BasisSpec spec;
    std::vector<std::vector<double>> coeffs;

    std::size_t dimension() const noexcept { return coeffs.size(); }
};

/// t_k mod 1 for k = 0..n-1.
std::vector<double> collocation_points(const BasisSpec& spec);

/// B(u) at the grid offset u.
double basis_value(const BasisSpec& spec, double u);
/// Time derivative of the translate B(n t - l) as a function of u = n t - l.
double basis_slope(const BasisSpec& spec, double u);

/// Eigenvalue of time differentiation at collocation points for frequency
/// index k: n * psi for the polynomial family, psi for the trigonometric one.
Complex derivative_multiplier(const BasisSpec& spec, int k);

/// Throws InterpolationUnstable naming the first k with |phi(sigma, k/n)| below threshold.
void check_interpolable(const BasisSpec& spec);

enum class SolvePath {
    dft,    // divide by phi in the frequency domain
    dense,  // LU solve of the assembled circulant system
};

SplineFunction interpolate(const BasisSpec& spec, std::span<const double> samples,
                           SolvePath path = SolvePath::dft);
/// One sample sequence per dimension.
SplineFunction interpolate(const BasisSpec& spec, const std::vector<std::vector<double>>& samples,
                           SolvePath path = SolvePath::dft);

/// s(t) of one dimension; t is wrapped into [0, 1).
double evaluate(const SplineFunction& f, double t, std::size_t dim = 0);

/// s'(t_k), k = 0..n-1, evaluated directly from the coefficients.
std::vector<double> differentiate_at_collocation(const SplineFunction& f, std::size_t dim = 0);

/// Circulant A with samples = A * coeffs.
Eigen::MatrixXd assemble_interpolation_matrix(const BasisSpec& spec);
/// Circulant B with s'(t_k) = (B * coeffs)_k.
Eigen::MatrixXd assemble_slope_matrix(const BasisSpec& spec);
/// D = B A^{-1}: collocation samples to derivative samples.
Eigen::MatrixXd assemble_diff_operator(const BasisSpec& spec);

/// Header "family,m,n,sigma" with its value row, then "dim,index,coefficient" rows.
void write_csv(std::ostream& os, const SplineFunction& f);

}  // namespace oscspline
