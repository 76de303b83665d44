// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oscspline/bspline.hpp"
#include "oscspline/collocation.hpp"
#include "oscspline/errors.hpp"
#include "oscspline/models.hpp"
#include "oscspline/pss.hpp"
#include "oscspline/spectral.hpp"
#include "oscspline/trigspline.hpp"

using namespace oscspline;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

// Collects failed checks of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++count_;
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
    bool ok() const { return count_ == 0; }
    std::string summary() const {
        std::string s = notes_;
        for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
        if (count_ > static_cast<int>(failures_.size())) s += "; +" + std::to_string(count_ - failures_.size()) + " more";
        return s;
    }

private:
    std::vector<std::string> failures_;
    int count_ = 0;
    std::string notes_;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Check&)> body;
};

SymbolQuery poly(int m, double x, double xi) { return {Family::polynomial, m, 0.0, x, xi}; }

void symbol_identities(Check& c) {
    for (int m = 2; m <= 6; ++m)
        for (int i = 0; i < 21; ++i) {
            const double x = -0.45 + 0.9 * (i + 0.5) / 21.0;
            const Complex p = phi(poly(m, x, 0.0));
            const Complex s = psi(poly(m, x, 0.0));
            c.expect(std::abs(p - 1.0) < 1e-12, "phi_" + std::to_string(m) + "(" + num(x) + ",0) = " + num(p.real()));
            c.expect(std::abs(s) < 1e-12, "psi_" + std::to_string(m) + "(" + num(x) + ",0) = " + num(std::abs(s)));
        }
    for (int m = 2; m <= 6; ++m)
        for (int i = 0; i < 50; ++i) {
            const double xi = (i + 0.5) / 50.0;
            try {
                const Complex s = psi(poly(m, 0.0, xi));
                c.expect(std::abs(s.real()) < 1e-10, "Re psi_" + std::to_string(m) + "(0," + num(xi) + ")");
            } catch (const SingularSymbol&) {
                c.expect(false, "unexpected singular psi_" + std::to_string(m) + "(0," + num(xi) + ")");
            }
        }
    for (int i = 0; i <= 50; ++i) {
        const double xi = i / 50.0;
        const Complex p = phi(poly(3, 0.0, xi));
        c.expect(std::abs(p - Complex(0.75 + 0.25 * std::cos(kTwoPi * xi), 0.0)) < 1e-12, "phi_3(0," + num(xi) + ")");
    }
    bool flagged = false;
    try {
        psi(poly(3, 0.5, 0.5));
    } catch (const SingularSymbol&) {
        flagged = true;
    }
    c.expect(flagged, "phi_3(1/2,1/2) not flagged singular");
    c.expect(std::abs(phi(poly(3, 0.5, 0.5))) < kSingularThreshold, "|phi_3(1/2,1/2)| above threshold");
    c.note("m = 2..6 at x = 0 and xi = 0; phi_3(1/2,1/2) singular");
}

void damping_sign_map(Check& c) {
    double least = 1e300;
    double most = -1e300;
    for (int j = 1; j <= 9; ++j) {
        const double xi = 0.05 * j;
        for (double sigma : {-0.3, -0.25, -0.2, -0.1}) {
            const double re = psi(poly(3, sigma, xi)).real();
            least = std::min(least, re);
            c.expect(re > 0.0, "Re psi_3(" + num(sigma) + "," + num(xi) + ") = " + num(re));
        }
        for (double sigma : {0.0, 0.1, 0.2}) {
            const double re = psi(poly(3, sigma, xi)).real();
            most = std::max(most, re);
            c.expect(re <= 1e-10, "Re psi_3(" + num(sigma) + "," + num(xi) + ") = " + num(re));
        }
    }
    c.note("min Re psi (sigma<0) = " + num(least) + ", max Re psi (sigma>=0) = " + num(most));
}

void trig_exactness(Check& c) {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::vector<std::pair<int, std::function<double(double)>>> functions{
        {0, [](double) { return 1.0; }},
        {1, [](double t) { return std::cos(kTwoPi * t); }},
        {1, [](double t) { return std::sin(kTwoPi * t); }},
    };
    double worst_value = 0.0;
    double worst_symbol = 0.0;
    for (int n : {8, 16, 32}) {
        const BasisSpec spec{Family::trigonometric, 3, n, -0.25};
        const auto t = collocation_points(spec);
        for (const auto& [k, f] : functions) {
            std::vector<double> y;
            for (double tk : t) y.push_back(f(tk));
            const auto s = interpolate(spec, y);
            for (int i = 0; i < 200; ++i) {
                const double u = unit(rng);
                worst_value = std::max(worst_value, std::abs(evaluate(s, u) - f(u)));
            }
        }
        // frequency k sits at xi = -k/n, i.e. grid index j = (-k) mod n
        for (int k : {-1, 0, 1}) {
            const int j = ((-k) % n + n) % n;
            const Complex exact(0.0, -kTwoPi * (j <= n / 2 ? j : j - n));
            worst_symbol = std::max(worst_symbol, std::abs(derivative_multiplier(spec, j) - exact));
            c.expect(std::abs(exact - Complex(0.0, kTwoPi * k)) < 1e-15, "symbol map");
        }
    }
    c.expect(worst_value < 1e-10, "value error " + num(worst_value));
    c.expect(worst_symbol < 1e-9, "symbol error " + num(worst_symbol));
    c.note("max value error " + num(worst_value) + ", max symbol error " + num(worst_symbol));
}

void collocation_consistency(Check& c) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    double worst_path = 0.0;
    double worst_deriv = 0.0;
    int cases = 0;
    int unstable = 0;
    for (Family family : {Family::polynomial, Family::trigonometric})
        for (int m = 2; m <= 5; ++m)
            for (int n : {8, 16, 32})
                for (double sigma : {-0.3, -0.25, -0.1, 0.0, 0.1}) {
                    const BasisSpec spec{family, m, n, sigma};
                    std::vector<double> y(n);
                    for (auto& v : y) v = g(rng);
                    try {
                        const auto fast = interpolate(spec, y, SolvePath::dft);
                        const auto dense = interpolate(spec, y, SolvePath::dense);
                        for (int l = 0; l < n; ++l)
                            worst_path = std::max(worst_path, std::abs(fast.coeffs[0][l] - dense.coeffs[0][l]));

                        std::vector<Complex> yc(y.begin(), y.end());
                        auto yhat = dft(yc);
                        for (int k = 0; k < n; ++k) yhat[k] *= derivative_multiplier(spec, k);
                        const auto expected = idft(yhat);
                        const auto d = differentiate_at_collocation(fast);
                        for (int k = 0; k < n; ++k)
                            worst_deriv = std::max(worst_deriv, std::abs(d[k] - expected[k].real()));
                        ++cases;
                    } catch (const InterpolationUnstable&) {
                        ++unstable;  // phi vanishes on the grid: e.g. even order at sigma = 0
                    }
                }
    c.expect(worst_path < 1e-9, "DFT vs dense " + num(worst_path));
    c.expect(worst_deriv < 1e-10, "derivative vs inverse DFT " + num(worst_deriv));
    c.expect(cases > 0, "no stable cases");
    c.note(std::to_string(cases) + " cases (" + std::to_string(unstable) + " unstable skipped), path diff " +
           num(worst_path) + ", derivative diff " + num(worst_deriv));
}

double oracle_amplitude() { return kVanDerPolAmplitude; }

PSSolution solve_vdp(Family family, int n, double sigma) {
    const auto problem = warm_start(van_der_pol(1.0), {family, 3, n, sigma});
    return newton_solve(problem);
}

void oracle_pss(Check& c) {
    // circle, 1%-perturbed exact guess
    const BasisSpec spec{Family::trigonometric, 3, 16, -0.25};
    const auto t = collocation_points(spec);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 0.01);
    std::vector<std::vector<double>> y(2);
    for (double tk : t) {
        y[0].push_back(std::cos(kTwoPi * (tk - t[0])) * (1.0 + g(rng)));
        y[1].push_back(std::sin(kTwoPi * (tk - t[0])) * (1.0 + g(rng)));
    }
    PSSProblem p;
    p.model = circle_model();
    p.spec = spec;
    p.initial_guess = interpolate(spec, y);
    p.initial_period = 1.01;
    p.anchor = {1, 0.0};
    const auto circle = newton_solve(p);
    c.expect(circle.converged, "circle not converged");
    c.expect(std::abs(circle.period - 1.0) < 1e-8, "circle period " + num(circle.period));
    c.expect(circle.residual_norm < 1e-10, "circle residual " + num(circle.residual_norm));
    c.expect(circle.iterations <= 8, "circle iterations " + std::to_string(circle.iterations));

    // reference validation by dt halving
    const auto model = van_der_pol(1.0);
    const auto coarse = estimate_amplitude_period(transient_oracle(model, 200.0, 1e-4, model.initial_state), 0);
    const auto fine = estimate_amplitude_period(transient_oracle(model, 200.0, 5e-5, model.initial_state), 0);
    const double amp_rel = std::abs(coarse.amplitude - fine.amplitude) / fine.amplitude;
    const double per_rel = std::abs(coarse.period - fine.period) / fine.period;
    c.expect(amp_rel < 5e-7 && per_rel < 5e-7, "dt halving disagreement " + num(amp_rel) + ", " + num(per_rel));
    c.expect(std::abs(fine.amplitude - kVanDerPolAmplitude) < 1e-6, "frozen amplitude off " + num(fine.amplitude));
    c.expect(std::abs(fine.period - kVanDerPolPeriod) < 1e-6, "frozen period off " + num(fine.period));

    const auto vdp = solve_vdp(Family::trigonometric, 64, -0.25);
    const double amp = waveform_amplitude(vdp);
    c.expect(vdp.converged, "vdp not converged");
    c.expect(std::abs(amp - kVanDerPolAmplitude) < 0.01 * kVanDerPolAmplitude, "vdp amplitude " + num(amp));
    c.expect(std::abs(vdp.period - kVanDerPolPeriod) < 0.01 * kVanDerPolPeriod, "vdp period " + num(vdp.period));
    c.note("circle: " + std::to_string(circle.iterations) + " iterations, period " + num(circle.period) +
           "; vdp trig n=64: amplitude " + num(amp) + ", period " + num(vdp.period));
}

void amplitude_ordering(Check& c) {
    const double ref = oracle_amplitude();
    const auto p16 = solve_vdp(Family::polynomial, 16, -0.25);
    const auto p64 = solve_vdp(Family::polynomial, 64, -0.25);
    const auto t16 = solve_vdp(Family::trigonometric, 16, -0.25);
    for (const auto* s : {&p16, &p64, &t16}) c.expect(s->converged, "a solve did not converge");
    const double a_p16 = waveform_amplitude(p16);
    const double a_p64 = waveform_amplitude(p64);
    const double a_t16 = waveform_amplitude(t16);
    c.expect(a_p16 < a_p64, "amp(poly,16) >= amp(poly,64)");
    c.expect(a_p64 < ref, "amp(poly,64) >= oracle");
    c.expect(std::abs(a_t16 - ref) < std::abs(a_p16 - ref), "trig n=16 not closer than poly n=16");
    c.note("poly16 " + num(a_p16) + ", poly64 " + num(a_p64) + ", trig16 " + num(a_t16) + ", oracle " + num(ref));
}

void sigma_sensitivity(Check& c) {
    const double ref = oracle_amplitude();
    const auto near = solve_vdp(Family::polynomial, 16, -0.01);
    const auto far = solve_vdp(Family::polynomial, 16, -0.25);
    c.expect(near.converged && far.converged, "a solve did not converge");
    const double deficit_near = ref - waveform_amplitude(near);
    const double deficit_far = ref - waveform_amplitude(far);
    c.expect(deficit_near < deficit_far, "deficit at -0.01 not below deficit at -0.25");
    c.note("signed deficit sigma=-0.01: " + num(deficit_near) + ", sigma=-0.25: " + num(deficit_far) +
           "; absolute error " + num(std::abs(deficit_near)) + " vs " + num(std::abs(deficit_far)));
}

void scaling_limit(Check& c) {
    std::vector<double> errors;
    for (int inv : {8, 16, 32, 64}) {
        const double h = 1.0 / inv;
        const TrigBasisParams q(3, h);
        double worst = 0.0;
        for (int i = 0; i <= 3000; ++i) {
            const double u = 3.0 * i / 3000.0;
            worst = std::max(worst, std::abs(eval_Q(q, h * u) - eval_N(PolyOrder{3}, u)));
        }
        errors.push_back(worst);
    }
    std::string orders;
    double least = 1e300;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double order = std::log2(errors[i - 1] / errors[i]);
        least = std::min(least, order);
        orders += (i > 1 ? ", " : "") + num(order);
    }
    c.expect(least >= 1.9, "order " + num(least));
    c.note("measured orders " + orders);
}

void jacobian_checks(Check& c) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (const auto& model : {circle_model(), van_der_pol(1.0)})
        for (Family family : {Family::polynomial, Family::trigonometric}) {
            const BasisSpec spec{family, 3, 16, -0.25};
            PSSProblem p;
            p.model = model;
            p.spec = spec;
            p.initial_guess = interpolate(spec, std::vector<std::vector<double>>(2, std::vector<double>(16, 0.0)));
            p.anchor = {0, 0.0};
            const PssSystem sys(p);
            for (int trial = 0; trial < 5; ++trial) {
                Eigen::VectorXd u(sys.size());
                for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = g(rng);
                u[u.size() - 1] = 0.5 + std::abs(g(rng));
                const Eigen::MatrixXd a = sys.jacobian(u);
                const Eigen::MatrixXd f = sys.finite_difference_jacobian(u);
                const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
                worst = std::max(worst, (a - f).cwiseAbs().maxCoeff() / scale);
            }
        }
    c.expect(worst < 1e-5, "relative error " + num(worst));
    c.note("max relative error " + num(worst));
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "symbol identities", 1.0, symbol_identities},
        {2, "damping sign map", 1.0, damping_sign_map},
        {3, "trigonometric exactness", 1.0, trig_exactness},
        {4, "collocation self-consistency", 5.0, collocation_consistency},
        {5, "oracle-validated PSS", 60.0, oracle_pss},
        {6, "amplitude ordering", 120.0, amplitude_ordering},
        {7, "sigma sensitivity", 60.0, sigma_sensitivity},
        {8, "scaling limit", 5.0, scaling_limit},
        {9, "Jacobian checks", 10.0, jacobian_checks},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.expect(elapsed < cr.budget_seconds, "over budget");
        const bool ok = check.ok();
        if (!ok) ++failed;
        std::printf("[%s] C%d %s (%.2f s / %.0f s): %s\n", ok ? "PASS" : "FAIL", cr.id, cr.title, elapsed,
                    cr.budget_seconds, check.summary().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
