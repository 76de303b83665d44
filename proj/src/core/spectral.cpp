#include "oscspline/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "oscspline/bspline.hpp"
#include "oscspline/errors.hpp"
#include "oscspline/trigspline.hpp"
#include "format.hpp"

namespace oscspline {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double turns) {
    const double angle = kTwoPi * turns;
    return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> direct_transform(std::span<const Complex> in, double sign) {
    const std::size_t n = in.size();
    if (n == 0) throw InvalidArgument("transform of an empty sequence");
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < n; ++l) {
            // reduce k*l mod n first so the phase stays exact for large products
            const double turns = static_cast<double>((k * l) % n) / static_cast<double>(n);
            acc += in[l] * unit_phase(sign * turns);
        }
        out[k] = acc;
    }
    return out;
}

std::vector<Complex> radix2_transform(std::span<const Complex> in, double sign) {
    const std::size_t n = in.size();
    if (n == 0 || !std::has_single_bit(n))
        throw InvalidArgument("fft needs a power-of-two length, got " + std::to_string(n));
    std::vector<Complex> a(in.begin(), in.end());
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex w = unit_phase(sign * static_cast<double>(k) / static_cast<double>(len));
                const Complex u = a[start + k];
                const Complex v = a[start + k + len / 2] * w;
                a[start + k] = u + v;
                a[start + k + len / 2] = u - v;
            }
        }
    }
    return a;
}

std::vector<Complex> scaled(std::vector<Complex> v) {
    const double inv = 1.0 / static_cast<double>(v.size());
    for (auto& c : v) c *= inv;
    return v;
}

// Sum over integer k of kernel(x + m/2 + k) * exp(2 pi i k xi); the kernel
// vanishes outside (0, m] so at most m + 1 terms are visited.
template <typename Kernel>
Complex symbol_sum(const SymbolQuery& q, Kernel&& kernel) {
    const double offset = q.x + 0.5 * q.m;
    const long first = static_cast<long>(std::floor(-offset)) - 1;
    const long last = static_cast<long>(std::ceil(q.m - offset)) + 1;
    Complex acc{0.0, 0.0};
    for (long k = first; k <= last; ++k) {
        const double value = kernel(offset + static_cast<double>(k));
        if (value != 0.0) acc += value * unit_phase(static_cast<double>(k) * q.xi);
    }
    return acc;
}

}  // namespace

std::string_view to_string(Family family) {
    return family == Family::polynomial ? "poly" : "trig";
}

Family parse_family(std::string_view name) {
    if (name == "poly" || name == "polynomial") return Family::polynomial;
    if (name == "trig" || name == "trigonometric") return Family::trigonometric;
    throw InvalidArgument("unknown spline family '" + std::string(name) + "' (expected poly|trig)");
}

std::vector<Complex> dft(std::span<const Complex> samples) { return direct_transform(samples, 1.0); }
std::vector<Complex> idft(std::span<const Complex> spectrum) {
    return scaled(direct_transform(spectrum, -1.0));
}
std::vector<Complex> fft(std::span<const Complex> samples) { return radix2_transform(samples, 1.0); }
std::vector<Complex> ifft(std::span<const Complex> spectrum) {
    return scaled(radix2_transform(spectrum, -1.0));
}

void SymbolQuery::validate() const {
    if (family == Family::polynomial) {
        PolyOrder{m};
    } else {
        TrigBasisParams{m, h};
    }
}

bool SymbolQuery::shift_flagged() const noexcept { return std::abs(x) >= 0.5; }

Complex phi(const SymbolQuery& q) {
    q.validate();
    if (q.family == Family::polynomial) {
        const PolyOrder order{q.m};
        return symbol_sum(q, [&](double u) { return eval_N(order, u); });
    }
    const TrigBasisParams p{q.m, q.h};
    return symbol_sum(q, [&](double u) { return eval_Q(p, q.h * u); });
}

Complex phi_dx(const SymbolQuery& q) {
    q.validate();
    if (q.family == Family::polynomial) {
        const PolyOrder order{q.m};
        return symbol_sum(q, [&](double u) { return eval_N_deriv(order, u); });
    }
    const TrigBasisParams p{q.m, q.h};
    return symbol_sum(q, [&](double u) { return eval_Q_deriv(p, q.h * u); });
}

Complex psi(const SymbolQuery& q) {
    const Complex denom = phi(q);
    if (std::abs(denom) < kSingularThreshold) throw SingularSymbol(q.x, q.xi);
    return phi_dx(q) / denom;
}

Spectrum damping_spectrum(Family family, int m, int n, double sigma) {
    if (n < 2 * m)
        throw InvalidArgument("damping spectrum needs n >= 2m, got m=" + std::to_string(m) +
                              " n=" + std::to_string(n));
    if (!(std::abs(sigma) < 0.5)) throw InvalidArgument("collocation shift must satisfy |sigma| < 1/2");
    Spectrum out{family, m, n, sigma, {}};
    out.entries.reserve(static_cast<std::size_t>(n));
    SymbolQuery q{family, m, 1.0 / n, sigma, 0.0};
    q.validate();
    for (int k = 0; k < n; ++k) {
        q.xi = static_cast<double>(k) / n;
        SpectrumEntry e{q.xi, {}, false};
        try {
            e.value = psi(q);
        } catch (const SingularSymbol&) {
            e.singular = true;
        }
        out.entries.push_back(e);
    }
    return out;
}

void write_csv(std::ostream& os, const Spectrum& spectrum) {
    os << "xi,re_psi,im_psi,singular\n";
    for (const auto& e : spectrum.entries) {
        os << detail::format_real(e.xi) << ',';
        if (e.singular) {
            os << "nan,nan,1\n";
        } else {
            os << detail::format_real(e.value.real()) << ',' << detail::format_real(e.value.imag())
               << ",0\n";
        }
    }
}

}  // namespace oscspline
