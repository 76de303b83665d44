#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oscspline/collocation.hpp"
#include "oscspline/errors.hpp"

using namespace oscspline;
using Catch::Approx;

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<double> sample(const BasisSpec& spec, double (*f)(double)) {
    std::vector<double> y;
    for (double t : collocation_points(spec)) y.push_back(f(t));
    return y;
}

double cos1(double t) { return std::cos(kTwoPi * t); }
double sin1(double t) { return std::sin(kTwoPi * t); }

std::vector<double> random_samples(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = g(rng);
    return y;
}

std::vector<BasisSpec> parameter_grid() {
    std::vector<BasisSpec> grid;
    for (Family f : {Family::polynomial, Family::trigonometric})
        for (int m : {2, 3, 4, 5})
            for (int n : {8, 16, 32})
                for (double sigma : {-0.3, -0.25, -0.1, 0.0, 0.1}) grid.push_back({f, m, n, sigma});
    return grid;
}
}  // namespace

TEST_CASE("collocation points", "[collocation]") {
    const auto t = collocation_points({Family::polynomial, 2, 4, 0.0});
    REQUIRE(t.size() == 4);
    CHECK(t[0] == 0.25);
    CHECK(t[1] == 0.5);
    CHECK(t[2] == 0.75);
    CHECK(t[3] == 0.0);

    CHECK(collocation_points({Family::polynomial, 3, 8, -0.25})[0] == 0.15625);

    const auto u = collocation_points({Family::trigonometric, 3, 16, -0.1});
    for (std::size_t k = 1; k < u.size(); ++k) {
        double step = u[k] - u[k - 1];
        if (step < 0) step += 1.0;
        CHECK(step == Approx(1.0 / 16).margin(1e-15));
    }
}

TEST_CASE("basis spec validation", "[collocation]") {
    CHECK_THROWS_AS(BasisSpec({Family::polynomial, 3, 3, 0.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(BasisSpec({Family::polynomial, 1, 8, 0.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(BasisSpec({Family::polynomial, 3, 8, 0.5}).validate(), InvalidArgument);
    CHECK_THROWS_AS(BasisSpec({Family::trigonometric, 3, 8, -0.5}).validate(), InvalidArgument);
    CHECK_THROWS_AS(interpolate({Family::polynomial, 3, 8, 0.0}, std::vector<double>(7)), InvalidArgument);
}

TEST_CASE("constants reproduce", "[collocation]") {
    const BasisSpec spec{Family::polynomial, 3, 16, -0.25};
    const auto f = interpolate(spec, std::vector<double>(16, 5.0));
    for (double c : f.coeffs[0]) CHECK(c == Approx(5.0).margin(1e-12));
    CHECK(evaluate(f, 0.3141) == Approx(5.0).margin(1e-12));
    for (double d : differentiate_at_collocation(f)) CHECK(std::abs(d) < 1e-11);
}

TEST_CASE("trigonometric interpolation of cos is exact", "[collocation]") {
    const BasisSpec spec{Family::trigonometric, 3, 16, -0.25};
    const auto f = interpolate(spec, sample(spec, cos1));
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double t = unit(rng);
        CHECK(evaluate(f, t) == Approx(cos1(t)).margin(1e-10));
    }
    CHECK(evaluate(f, 0.123) == Approx(cos1(0.123)).margin(1e-10));
}

TEST_CASE("polynomial interpolation of cos is not exact", "[collocation]") {
    // dense-solve value at these 200 points: 9.759972e-4
    const BasisSpec spec{Family::polynomial, 3, 16, -0.25};
    const auto f = interpolate(spec, sample(spec, cos1));
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t = unit(rng);
        worst = std::max(worst, std::abs(evaluate(f, t) - cos1(t)));
    }
    CHECK(worst > 1e-4);
    CHECK(worst == Approx(9.759972007e-4).epsilon(1e-6));
}

TEST_CASE("evaluate is periodic", "[collocation]") {
    std::mt19937_64 rng(32);
    const BasisSpec spec{Family::trigonometric, 4, 16, -0.25};
    const auto f = interpolate(spec, random_samples(rng, 16));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double t = unit(rng);
        CHECK(evaluate(f, t + 1.0) == Approx(evaluate(f, t)).margin(1e-12));
        CHECK(evaluate(f, t - 3.0) == Approx(evaluate(f, t)).margin(1e-12));
    }
    CHECK(evaluate(f, 0.375) == evaluate(f, 1.375));
}

TEST_CASE("differentiation examples", "[collocation]") {
    const BasisSpec trig{Family::trigonometric, 3, 16, -0.25};
    const auto t = collocation_points(trig);
    const auto d = differentiate_at_collocation(interpolate(trig, sample(trig, sin1)));
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(d[k] == Approx(kTwoPi * cos1(t[k])).margin(1e-9));

    // dense-solve value: 0.08182149032
    const BasisSpec poly{Family::polynomial, 3, 8, -0.25};
    const auto p = collocation_points(poly);
    const auto dp = differentiate_at_collocation(interpolate(poly, sample(poly, sin1)));
    double worst = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, std::abs(dp[k] - kTwoPi * cos1(p[k])));
    CHECK(worst > 0.01);
    CHECK(worst == Approx(0.08182149032).epsilon(1e-6));
}

TEST_CASE("interpolation round trip over the parameter grid", "[collocation][property]") {
    std::mt19937_64 rng(33);
    for (const auto& spec : parameter_grid()) {
        const auto y = random_samples(rng, spec.n);
        const auto f = interpolate(spec, y);
        const auto t = collocation_points(spec);
        for (int k = 0; k < spec.n; ++k) CHECK(evaluate(f, t[k]) == Approx(y[k]).margin(1e-9));
    }
}

TEST_CASE("dft and dense interpolation paths agree", "[collocation][property]") {
    std::mt19937_64 rng(34);
    for (const auto& spec : parameter_grid()) {
        const auto y = random_samples(rng, spec.n);
        const auto a = interpolate(spec, y, SolvePath::dft);
        const auto b = interpolate(spec, y, SolvePath::dense);
        for (int l = 0; l < spec.n; ++l) CHECK(a.coeffs[0][l] == Approx(b.coeffs[0][l]).margin(1e-9));
    }
}

TEST_CASE("derivative equals inverse DFT of multiplier times spectrum", "[collocation][property]") {
    std::mt19937_64 rng(35);
    for (const auto& spec : parameter_grid()) {
        const auto y = random_samples(rng, spec.n);
        const auto direct = differentiate_at_collocation(interpolate(spec, y));
        auto spectrum = dft(std::vector<Complex>(y.begin(), y.end()));
        for (int k = 0; k < spec.n; ++k) spectrum[k] *= derivative_multiplier(spec, k);
        const auto via_symbol = idft(spectrum);
        for (int k = 0; k < spec.n; ++k) {
            CHECK(direct[k] == Approx(via_symbol[k].real()).margin(1e-10));
            CHECK(std::abs(via_symbol[k].imag()) < 1e-10);
        }
    }
}

TEST_CASE("interpolation and differentiation are linear", "[collocation][property]") {
    std::mt19937_64 rng(36);
    const BasisSpec spec{Family::trigonometric, 3, 16, -0.2};
    const auto a = random_samples(rng, 16);
    const auto b = random_samples(rng, 16);
    const double alpha = 0.7, beta = -1.3;
    std::vector<double> mix(16);
    for (int k = 0; k < 16; ++k) mix[k] = alpha * a[k] + beta * b[k];
    const auto fa = interpolate(spec, a), fb = interpolate(spec, b), fm = interpolate(spec, mix);
    const auto da = differentiate_at_collocation(fa), db = differentiate_at_collocation(fb),
               dm = differentiate_at_collocation(fm);
    for (int k = 0; k < 16; ++k) {
        CHECK(fm.coeffs[0][k] == Approx(alpha * fa.coeffs[0][k] + beta * fb.coeffs[0][k]).margin(1e-10));
        CHECK(dm[k] == Approx(alpha * da[k] + beta * db[k]).margin(1e-10));
    }
}

TEST_CASE("differentiation operator", "[collocation]") {
    std::mt19937_64 rng(37);
    for (const auto& spec : {BasisSpec{Family::polynomial, 3, 16, -0.25}, BasisSpec{Family::trigonometric, 3, 16, -0.25},
                             BasisSpec{Family::trigonometric, 5, 12, -0.1}}) {
        const Eigen::MatrixXd d = assemble_diff_operator(spec);
        const int n = spec.n;
        CHECK(d.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);

        // circulant
        for (int k = 1; k < n; ++k)
            for (int l = 0; l < n; ++l) CHECK(d(k, l) == Approx(d(0, (l - k + n) % n)).margin(1e-10));

        // eigenvalues: the first column is the convolution kernel of D
        std::vector<Complex> column(d.col(0).data(), d.col(0).data() + n);
        const auto eig = dft(column);
        for (int k = 0; k < n; ++k) CHECK(std::abs(eig[k] - derivative_multiplier(spec, k)) < 1e-9);

        const auto y = random_samples(rng, n);
        const Eigen::VectorXd dy = d * Eigen::Map<const Eigen::VectorXd>(y.data(), n);
        const auto direct = differentiate_at_collocation(interpolate(spec, y));
        for (int k = 0; k < n; ++k) CHECK(dy[k] == Approx(direct[k]).margin(1e-9));
    }

    const BasisSpec trig{Family::trigonometric, 3, 16, -0.25};
    const auto t = collocation_points(trig);
    const auto y = sample(trig, cos1);
    const Eigen::VectorXd dy = assemble_diff_operator(trig) * Eigen::Map<const Eigen::VectorXd>(y.data(), 16);
    for (int k = 0; k < 16; ++k) CHECK(dy[k] == Approx(-kTwoPi * sin1(t[k])).margin(1e-9));
}

TEST_CASE("vanishing symbol makes interpolation unstable", "[collocation]") {
    const BasisSpec spec{Family::polynomial, 3, 8, 0.5 - 1e-12};
    try {
        interpolate(spec, std::vector<double>(8, 1.0));
        FAIL("expected InterpolationUnstable");
    } catch (const InterpolationUnstable& e) {
        CHECK(e.frequency_index() == 4);
    }
    CHECK_THROWS_AS(assemble_diff_operator(spec), InterpolationUnstable);
}

TEST_CASE("multi-dimensional splines", "[collocation]") {
    const BasisSpec spec{Family::trigonometric, 3, 16, -0.25};
    const auto f = interpolate(spec, std::vector<std::vector<double>>{sample(spec, cos1), sample(spec, sin1)});
    REQUIRE(f.dimension() == 2);
    CHECK(evaluate(f, 0.2, 0) == Approx(cos1(0.2)).margin(1e-10));
    CHECK(evaluate(f, 0.2, 1) == Approx(sin1(0.2)).margin(1e-10));
}

TEST_CASE("spline CSV layout", "[collocation]") {
    const BasisSpec spec{Family::trigonometric, 3, 8, -0.25};
    const auto f = interpolate(spec, std::vector<double>(8, 1.0));
    std::ostringstream os;
    write_csv(os, f);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "family,m,n,sigma");
    std::getline(in, line);
    CHECK(line == "trig,3,8,-0.25");
    std::getline(in, line);
    CHECK(line == "dim,index,coefficient");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 8);
}
