#pragma once

// Built-in autonomous oscillators x' = f(x).

#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace oscspline {

struct OscillatorReference {
    double amplitude = 0.0;  // half peak-to-peak of state 0 on the limit cycle
    double period = 0.0;
    std::string provenance;
};

struct OscillatorModel {
    using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using Jacobian = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    std::string name;
    int dimension = 0;
    std::map<std::string, double> parameters;
    Rhs rhs;
    Jacobian jac;  // empty: callers fall back to finite differences
    std::optional<OscillatorReference> reference;
    Eigen::VectorXd initial_state;  // a point in the basin of the limit cycle

    bool has_jacobian() const noexcept { return static_cast<bool>(jac); }
};

/// Hopf normal form rotating at angular frequency omega:
///   f(x, y) = (x (1 - r^2) - omega y, y (1 - r^2) + omega x).
/// The limit cycle is the unit circle with period 2 pi / omega (1 by default).
OscillatorModel circle_model(double omega = 2.0 * std::numbers::pi);

/// f(x, v) = (v, mu (1 - x^2) v - x).
OscillatorModel van_der_pol(double mu);

/// RK4 reference for van der Pol at mu = 1 (dt = 1e-4, agrees with dt = 5e-5
/// to better than 1e-6 relative).
inline constexpr double kVanDerPolAmplitude = 2.0086198609;
inline constexpr double kVanDerPolPeriod = 6.6632868593;

std::vector<std::string> model_names();

/// Builds a model by name ("circle", "vdp") with parameter overrides.
/// Throws InvalidArgument on unknown names (listing the available ones) or
/// unknown parameters.
OscillatorModel make_model(std::string_view name, const std::map<std::string, double>& params = {});

}  // namespace oscspline
