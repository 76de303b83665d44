#include "oscspline/collocation.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "oscspline/bspline.hpp"
#include "oscspline/errors.hpp"
#include "oscspline/trigspline.hpp"
#include "format.hpp"

namespace oscspline {

namespace {

int wrap(long i, int n) {
    const long r = i % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

// Circulant matrix whose (k, l) entry folds kernel(j + m/2 + sigma) over j = k - l mod n.
template <typename Kernel>
Eigen::MatrixXd folded_circulant(const BasisSpec& spec, Kernel&& kernel) {
    spec.validate();
    const int n = spec.n;
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    for (int j = -spec.m - 1; j <= spec.m + 1; ++j)
        row[wrap(j, n)] += kernel(j + 0.5 * spec.m + spec.sigma);
    Eigen::MatrixXd mat(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) mat(k, l) = row[wrap(k - l, n)];
    return mat;
}

}  // namespace

void BasisSpec::validate() const {
    if (m < 2) throw InvalidArgument("collocation needs order m >= 2, got " + std::to_string(m));
    if (n <= m)
        throw InvalidArgument("collocation needs n > m, got m=" + std::to_string(m) +
                              " n=" + std::to_string(n));
    if (!(std::abs(sigma) < 0.5)) throw InvalidArgument("collocation shift must satisfy |sigma| < 1/2");
}

SymbolQuery BasisSpec::symbol_query(int k) const {
    return SymbolQuery{family, m, h(), sigma, static_cast<double>(k) / n};
}

std::vector<double> collocation_points(const BasisSpec& spec) {
    spec.validate();
    std::vector<double> t(static_cast<std::size_t>(spec.n));
    for (int k = 0; k < spec.n; ++k) {
        const double raw = (k + 0.5 * spec.m + spec.sigma) / spec.n;
        t[static_cast<std::size_t>(k)] = raw - std::floor(raw);
    }
    return t;
}

double basis_value(const BasisSpec& spec, double u) {
    if (spec.family == Family::polynomial) return eval_N(PolyOrder{spec.m}, u);
    return eval_Q(TrigBasisParams{spec.m, spec.h()}, spec.h() * u);
}

double basis_slope(const BasisSpec& spec, double u) {
    if (spec.family == Family::polynomial) return spec.n * eval_N_deriv(PolyOrder{spec.m}, u);
    return eval_Q_deriv(TrigBasisParams{spec.m, spec.h()}, spec.h() * u);
}

Complex derivative_multiplier(const BasisSpec& spec, int k) {
    const Complex symbol = psi(spec.symbol_query(k));
    return spec.family == Family::polynomial ? static_cast<double>(spec.n) * symbol : symbol;
}

void check_interpolable(const BasisSpec& spec) {
    spec.validate();
    for (int k = 0; k < spec.n; ++k)
        if (std::abs(phi(spec.symbol_query(k))) < kSingularThreshold) throw InterpolationUnstable(k);
}

SplineFunction interpolate(const BasisSpec& spec, std::span<const double> samples, SolvePath path) {
    spec.validate();
    if (samples.size() != static_cast<std::size_t>(spec.n))
        throw InvalidArgument("interpolation needs exactly n=" + std::to_string(spec.n) +
                              " samples, got " + std::to_string(samples.size()));
    check_interpolable(spec);
    std::vector<double> coeffs(samples.size());
    if (path == SolvePath::dft) {
        std::vector<Complex> y(samples.begin(), samples.end());
        auto spectrum = dft(y);
        for (int k = 0; k < spec.n; ++k) spectrum[static_cast<std::size_t>(k)] /= phi(spec.symbol_query(k));
        const auto c = idft(spectrum);
        for (std::size_t l = 0; l < c.size(); ++l) coeffs[l] = c[l].real();
    } else {
        const Eigen::MatrixXd a = assemble_interpolation_matrix(spec);
        const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(samples.data(), spec.n);
        const Eigen::VectorXd c = a.partialPivLu().solve(y);
        for (int l = 0; l < spec.n; ++l) coeffs[static_cast<std::size_t>(l)] = c[l];
    }
    return SplineFunction{spec, {std::move(coeffs)}};
}

SplineFunction interpolate(const BasisSpec& spec, const std::vector<std::vector<double>>& samples,
                           SolvePath path) {
    SplineFunction out{spec, {}};
    out.coeffs.reserve(samples.size());
    for (const auto& dim : samples) out.coeffs.push_back(std::move(interpolate(spec, dim, path).coeffs.front()));
    return out;
}

double evaluate(const SplineFunction& f, double t, std::size_t dim) {
    const BasisSpec& spec = f.spec;
    const auto& c = f.coeffs.at(dim);
    const double u = spec.n * (t - std::floor(t));
    const long base = static_cast<long>(std::floor(u));
    double acc = 0.0;
    for (long l = base - spec.m - 1; l <= base + 1; ++l) {
        const double b = basis_value(spec, u - static_cast<double>(l));
        if (b != 0.0) acc += c[static_cast<std::size_t>(wrap(l, spec.n))] * b;
    }
    return acc;
}

std::vector<double> differentiate_at_collocation(const SplineFunction& f, std::size_t dim) {
    const auto& c = f.coeffs.at(dim);
    const Eigen::VectorXd slope =
        assemble_slope_matrix(f.spec) * Eigen::Map<const Eigen::VectorXd>(c.data(), f.spec.n);
    return {slope.data(), slope.data() + slope.size()};
}

Eigen::MatrixXd assemble_interpolation_matrix(const BasisSpec& spec) {
    return folded_circulant(spec, [&](double u) { return basis_value(spec, u); });
}

Eigen::MatrixXd assemble_slope_matrix(const BasisSpec& spec) {
    return folded_circulant(spec, [&](double u) { return basis_slope(spec, u); });
}

Eigen::MatrixXd assemble_diff_operator(const BasisSpec& spec) {
    check_interpolable(spec);
    const Eigen::MatrixXd a = assemble_interpolation_matrix(spec);
    const Eigen::MatrixXd b = assemble_slope_matrix(spec);
    // D A = B  <=>  A^T D^T = B^T
    return a.transpose().partialPivLu().solve(b.transpose()).transpose();
}

void write_csv(std::ostream& os, const SplineFunction& f) {
    os << "family,m,n,sigma\n"
       << to_string(f.spec.family) << ',' << f.spec.m << ',' << f.spec.n << ','
       << detail::format_real(f.spec.sigma) << '\n';
    os << "dim,index,coefficient\n";
    for (std::size_t d = 0; d < f.coeffs.size(); ++d)
        for (std::size_t l = 0; l < f.coeffs[d].size(); ++l)
            os << d << ',' << l << ',' << detail::format_real(f.coeffs[d][l]) << '\n';
}

}  // namespace oscspline
