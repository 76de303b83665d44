#pragma once

// Fourier-side view of uniform spline collocation.
//
// Transforms use the positive-exponent convention
//
//     X_k = sum_{l=0}^{n-1} x_l exp(+2 pi i k l / n),
//
// and the inverse carries the negative exponent and the 1/n factor. Under this
// convention interpolation at the shifted collocation points is a pointwise
// division by the exponential Euler symbol phi(sigma, k/n), and differentiation
// at those points a pointwise multiplication by psi(sigma, k/n).
//
// Units of psi:
//   polynomial family     psi = d_x phi / phi, derivative per grid cell.
//                         The time derivative on a grid of size n is n * psi.
//   trigonometric family  psi is per unit period, so the frequencies that the
//                         trigonometric spline reproduces give psi = -2 pi i k
//                         exactly at xi = k/n (k taken in -n/2..n/2).

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oscspline {

using Complex = std::complex<double>;

enum class Family { polynomial, trigonometric };

std::string_view to_string(Family family);
/// Accepts "poly"/"polynomial" and "trig"/"trigonometric".
Family parse_family(std::string_view name);

/// |phi| below this value makes psi singular.
inline constexpr double kSingularThreshold = 1e-10;

std::vector<Complex> dft(std::span<const Complex> samples);
std::vector<Complex> idft(std::span<const Complex> spectrum);

/// Radix-2 transforms with the same convention as dft/idft. n must be a power of two.
std::vector<Complex> fft(std::span<const Complex> samples);
std::vector<Complex> ifft(std::span<const Complex> spectrum);

struct SymbolQuery {
    Family family = Family::polynomial;
    int m = 3;
    double h = 0.0;  // mesh size; ignored for the polynomial family
    double x = 0.0;  // shift, typically sigma
    double xi = 0.0;  // normalized frequency

    /// Throws InvalidArgument when m or (m, h) are out of range.
    void validate() const;
    /// |x| >= 1/2 puts the query next to the singular line of psi.
    bool shift_flagged() const noexcept;
};

/// Exponential Euler symbol. Exact finite sum over the (at most m) nonzero terms.
Complex phi(const SymbolQuery& q);
/// Numerator of psi: the x-derivative of phi, in the units of psi.
Complex phi_dx(const SymbolQuery& q);
/// Damping symbol. Throws SingularSymbol when |phi| < kSingularThreshold.
Complex psi(const SymbolQuery& q);

struct SpectrumEntry {
    double xi = 0.0;
    Complex value;
    bool singular = false;
};

struct Spectrum {
    Family family = Family::polynomial;
    int m = 0;
    int n = 0;
    double sigma = 0.0;
    std::vector<SpectrumEntry> entries;  // xi = k/n, k = 0..n-1
};

/// psi(sigma, k/n) for k = 0..n-1 on a grid of size n (h = 1/n).
/// Requires n >= 2m and |sigma| < 1/2. Singular entries are marked, not thrown.
Spectrum damping_spectrum(Family family, int m, int n, double sigma);

/// CSV with header "xi,re_psi,im_psi,singular".
void write_csv(std::ostream& os, const Spectrum& spectrum);

}  // namespace oscspline
