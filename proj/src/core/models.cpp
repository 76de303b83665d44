#include "oscspline/models.hpp"

#include <cmath>
#include <numbers>

#include "oscspline/errors.hpp"

namespace oscspline {

OscillatorModel circle_model(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("circle model needs omega > 0");
    OscillatorModel model;
    model.name = "circle";
    model.dimension = 2;
    model.parameters = {{"omega", omega}};
    model.rhs = [omega](const Eigen::VectorXd& s) {
        const double gain = 1.0 - s[0] * s[0] - s[1] * s[1];
        Eigen::VectorXd f(2);
        f << s[0] * gain - omega * s[1], s[1] * gain + omega * s[0];
        return f;
    };
    model.jac = [omega](const Eigen::VectorXd& s) {
        const double x = s[0];
        const double y = s[1];
        Eigen::MatrixXd j(2, 2);
        j << 1.0 - 3.0 * x * x - y * y, -2.0 * x * y - omega,
             -2.0 * x * y + omega, 1.0 - x * x - 3.0 * y * y;
        return j;
    };
    model.reference = OscillatorReference{1.0, 2.0 * std::numbers::pi / omega, "analytic"};
    model.initial_state = Eigen::Vector2d(2.0, 0.0);
    return model;
}

OscillatorModel van_der_pol(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("van der Pol model needs mu > 0");
    OscillatorModel model;
    model.name = "vdp";
    model.dimension = 2;
    model.parameters = {{"mu", mu}};
    model.rhs = [mu](const Eigen::VectorXd& s) {
        Eigen::VectorXd f(2);
        f << s[1], mu * (1.0 - s[0] * s[0]) * s[1] - s[0];
        return f;
    };
    model.jac = [mu](const Eigen::VectorXd& s) {
        Eigen::MatrixXd j(2, 2);
        j << 0.0, 1.0,
             -2.0 * mu * s[0] * s[1] - 1.0, mu * (1.0 - s[0] * s[0]);
        return j;
    };
    if (mu == 1.0)
        model.reference = OscillatorReference{kVanDerPolAmplitude, kVanDerPolPeriod, "rk4-oracle"};
    model.initial_state = Eigen::Vector2d(2.0, 0.0);
    return model;
}

std::vector<std::string> model_names() { return {"circle", "vdp"}; }

OscillatorModel make_model(std::string_view name, const std::map<std::string, double>& params) {
    auto take = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    auto reject_unknown = [&](std::initializer_list<std::string_view> known) {
        for (const auto& [key, value] : params) {
            bool ok = false;
            for (auto k : known) ok = ok || key == k;
            if (!ok)
                throw InvalidArgument("unknown parameter '" + key + "' for model '" + std::string(name) + "'");
        }
    };
    if (name == "circle") {
        reject_unknown({"omega"});
        return circle_model(take("omega", 2.0 * std::numbers::pi));
    }
    if (name == "vdp" || name == "van_der_pol") {
        reject_unknown({"mu"});
        return van_der_pol(take("mu", 1.0));
    }
    std::string list;
    for (const auto& n : model_names()) list += (list.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown model '" + std::string(name) + "'; available models: " + list);
}

}  // namespace oscspline
