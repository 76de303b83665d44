#include "oscspline/pss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <json.hpp>

#include "oscspline/errors.hpp"
#include "format.hpp"

namespace oscspline {

namespace {

constexpr double kMinStep = 1.0 / 1024.0;
constexpr double kSingularRcond = 1e-14;

double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

// Linear interpolation of one dimension of the trajectory at time t.
double sample_at(const Trajectory& traj, std::size_t dim, double t) {
    const auto it = std::upper_bound(traj.time.begin(), traj.time.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - traj.time.begin());
    hi = std::clamp<std::size_t>(hi, 1, traj.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (t - traj.time[lo]) / (traj.time[hi] - traj.time[lo]);
    return (1.0 - w) * traj.at(lo, dim) + w * traj.at(hi, dim);
}

// Upward crossings of `level` after sample index `first`, linearly interpolated.
std::vector<double> upward_crossings(const Trajectory& traj, std::size_t dim, std::size_t first, double level) {
    std::vector<double> out;
    for (std::size_t i = first; i + 1 < traj.size(); ++i) {
        const double a = traj.at(i, dim) - level;
        const double b = traj.at(i + 1, dim) - level;
        if (a < 0.0 && b >= 0.0) {
            const double w = a / (a - b);
            out.push_back(traj.time[i] + w * (traj.time[i + 1] - traj.time[i]));
        }
    }
    return out;
}

double mean_level(const Trajectory& traj, std::size_t dim, std::size_t first) {
    double acc = 0.0;
    for (std::size_t i = first; i < traj.size(); ++i) acc += traj.at(i, dim);
    return acc / static_cast<double>(traj.size() - first);
}

// Extremum of the samples in [lo, hi], refined by the parabola through the
// neighbouring samples.
double refined_extremum(const Trajectory& traj, std::size_t dim, std::size_t lo, std::size_t hi, bool maximum) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double v = traj.at(i, dim);
        if (maximum ? v > traj.at(best, dim) : v < traj.at(best, dim)) best = i;
    }
    const double mid = traj.at(best, dim);
    if (best == 0 || best + 1 >= traj.size()) return mid;
    const double left = traj.at(best - 1, dim);
    const double right = traj.at(best + 1, dim);
    const double curvature = left - 2.0 * mid + right;
    if (curvature == 0.0) return mid;
    const double shift = 0.5 * (left - right) / curvature;
    if (std::abs(shift) > 1.0) return mid;
    return mid - 0.25 * (left - right) * shift;
}

}  // namespace

void PSSProblem::validate() const {
    spec.validate();
    if (model.dimension < 1 || !model.rhs) throw InvalidArgument("PSS problem needs a model with a right-hand side");
    if (!(initial_period > 0.0)) throw InvalidArgument("PSS initial period must be > 0");
    if (anchor.dimension >= static_cast<std::size_t>(model.dimension))
        throw InvalidArgument("phase anchor dimension out of range");
    if (!(newton.tol > 0.0)) throw InvalidArgument("Newton tolerance must be > 0");
    if (newton.max_iter < 0) throw InvalidArgument("Newton max_iter must be >= 0");
    if (!(newton.damping_factor > 0.0 && newton.damping_factor <= 1.0))
        throw InvalidArgument("Newton damping factor must lie in (0, 1]");
    if (initial_guess.dimension() != static_cast<std::size_t>(model.dimension))
        throw InvalidArgument("initial guess must have one coefficient sequence per model dimension");
    for (const auto& c : initial_guess.coeffs)
        if (c.size() != static_cast<std::size_t>(spec.n))
            throw InvalidArgument("initial guess coefficient length must equal n");
}

PssSystem::PssSystem(PSSProblem problem)
    : problem_(std::move(problem)),
      diff_(),
      size_(static_cast<Eigen::Index>(problem_.spec.n) * problem_.model.dimension + 1) {
    problem_.validate();
    diff_ = assemble_diff_operator(problem_.spec);
}

Eigen::VectorXd PssSystem::pack(const SplineFunction& f, double period) const {
    const int n = problem_.spec.n;
    const auto points = collocation_points(problem_.spec);
    Eigen::VectorXd u(size_);
    for (int d = 0; d < problem_.model.dimension; ++d)
        for (int k = 0; k < n; ++k)
            u[d * n + k] = evaluate(f, points[static_cast<std::size_t>(k)], static_cast<std::size_t>(d));
    u[size_ - 1] = period;
    return u;
}

SplineFunction PssSystem::unpack(const Eigen::VectorXd& unknowns) const {
    const int n = problem_.spec.n;
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(problem_.model.dimension));
    for (int d = 0; d < problem_.model.dimension; ++d)
        samples[static_cast<std::size_t>(d)].assign(unknowns.data() + d * n, unknowns.data() + (d + 1) * n);
    return interpolate(problem_.spec, samples);
}

Eigen::VectorXd PssSystem::residual(const Eigen::VectorXd& u) const {
    if (u.size() != size_) throw InvalidArgument("PSS unknown vector has the wrong length");
    const double period = u[size_ - 1];
    if (!(period > 0.0)) throw InvalidArgument("PSS period must be > 0");
    const int n = problem_.spec.n;
    const int dim = problem_.model.dimension;
    Eigen::VectorXd r(size_);
    for (int d = 0; d < dim; ++d) r.segment(d * n, n) = diff_ * u.segment(d * n, n) / period;
    Eigen::VectorXd state(dim);
    for (int k = 0; k < n; ++k) {
        for (int d = 0; d < dim; ++d) state[d] = u[d * n + k];
        const Eigen::VectorXd f = problem_.model.rhs(state);
        for (int d = 0; d < dim; ++d) r[d * n + k] -= f[d];
    }
    r[size_ - 1] = u[static_cast<Eigen::Index>(problem_.anchor.dimension) * n] - problem_.anchor.value;
    return r;
}

Eigen::MatrixXd PssSystem::jacobian(const Eigen::VectorXd& u) const {
    if (!problem_.model.has_jacobian()) return finite_difference_jacobian(u);
    if (u.size() != size_) throw InvalidArgument("PSS unknown vector has the wrong length");
    const double period = u[size_ - 1];
    if (!(period > 0.0)) throw InvalidArgument("PSS period must be > 0");
    const int n = problem_.spec.n;
    const int dim = problem_.model.dimension;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(size_, size_);
    for (int d = 0; d < dim; ++d) {
        j.block(d * n, d * n, n, n) = diff_ / period;
        j.block(d * n, size_ - 1, n, 1) = -(diff_ * u.segment(d * n, n)) / (period * period);
    }
    Eigen::VectorXd state(dim);
    for (int k = 0; k < n; ++k) {
        for (int d = 0; d < dim; ++d) state[d] = u[d * n + k];
        const Eigen::MatrixXd df = problem_.model.jac(state);
        for (int d = 0; d < dim; ++d)
            for (int e = 0; e < dim; ++e) j(d * n + k, e * n + k) -= df(d, e);
    }
    j(size_ - 1, static_cast<Eigen::Index>(problem_.anchor.dimension) * n) = 1.0;
    return j;
}

Eigen::MatrixXd PssSystem::finite_difference_jacobian(const Eigen::VectorXd& u, double step) const {
    Eigen::MatrixXd j(size_, size_);
    Eigen::VectorXd probe = u;
    for (Eigen::Index i = 0; i < size_; ++i) {
        const double h = step * std::max(1.0, std::abs(u[i]));
        probe[i] = u[i] + h;
        const Eigen::VectorXd plus = residual(probe);
        probe[i] = u[i] - h;
        const Eigen::VectorXd minus = residual(probe);
        probe[i] = u[i];
        j.col(i) = (plus - minus) / (2.0 * h);
    }
    return j;
}

Eigen::VectorXd pss_residual(const PSSProblem& problem, const Eigen::VectorXd& unknowns) {
    return PssSystem(problem).residual(unknowns);
}

Eigen::MatrixXd pss_jacobian(const PSSProblem& problem, const Eigen::VectorXd& unknowns) {
    return PssSystem(problem).jacobian(unknowns);
}

PSSolution newton_solve(const PSSProblem& problem) {
    const PssSystem system(problem);
    const NewtonOptions& opts = problem.newton;
    Eigen::VectorXd u = system.pack(problem.initial_guess, problem.initial_period);
    double norm = max_norm(system.residual(u));

    PSSolution sol;
    sol.finite_difference_jacobian = !problem.model.has_jacobian();
    sol.trace.push_back(norm);

    for (int it = 0; it < opts.max_iter && norm > opts.tol; ++it) {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.jacobian(u));
        if (!(lu.rcond() > kSingularRcond)) throw SingularJacobian(it);
        const Eigen::VectorXd step = lu.solve(-system.residual(u));

        bool accepted = false;
        for (double scale = opts.damping_factor; scale >= kMinStep; scale *= 0.5) {
            const Eigen::VectorXd trial = u + scale * step;
            if (!(trial[trial.size() - 1] > 0.0)) continue;
            const Eigen::VectorXd r = system.residual(trial);
            if (!all_finite(r)) continue;
            const double trial_norm = max_norm(r);
            if (trial_norm < norm) {
                u = trial;
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++sol.iterations;
        sol.trace.push_back(norm);
    }

    sol.spline = system.unpack(u);
    sol.period = u[u.size() - 1];
    sol.residual_norm = norm;
    sol.converged = opts.max_iter > 0 && norm <= opts.tol;
    return sol;
}

Eigen::VectorXd Trajectory::state(std::size_t i) const {
    return Eigen::Map<const Eigen::VectorXd>(data.data() + i * dimension, dimension);
}

Trajectory transient_oracle(const OscillatorModel& model, double t_end, double dt, const Eigen::VectorXd& x0) {
    if (!(dt > 0.0)) throw InvalidArgument("integration step must be > 0");
    if (!(t_end >= 0.0)) throw InvalidArgument("integration end time must be >= 0");
    if (x0.size() != model.dimension) throw InvalidArgument("initial state has the wrong dimension");
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    Trajectory traj;
    traj.dimension = model.dimension;
    traj.time.reserve(steps + 1);
    traj.data.reserve((steps + 1) * static_cast<std::size_t>(model.dimension));
    Eigen::VectorXd x = x0;
    auto record = [&](double t) {
        traj.time.push_back(t);
        traj.data.insert(traj.data.end(), x.data(), x.data() + x.size());
    };
    record(0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        const Eigen::VectorXd k1 = model.rhs(x);
        const Eigen::VectorXd k2 = model.rhs(x + 0.5 * dt * k1);
        const Eigen::VectorXd k3 = model.rhs(x + 0.5 * dt * k2);
        const Eigen::VectorXd k4 = model.rhs(x + dt * k3);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t = static_cast<double>(s + 1) * dt;
        if (!x.allFinite()) throw IntegrationFailure(t);
        record(t);
    }
    return traj;
}

AmplitudePeriod estimate_amplitude_period(const Trajectory& traj, std::size_t dim, double warmup_fraction) {
    if (dim >= static_cast<std::size_t>(traj.dimension)) throw InvalidArgument("trajectory dimension out of range");
    if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
        throw InvalidArgument("warm-up fraction must lie in [0, 1)");
    if (traj.size() < 4) throw InsufficientData("trajectory too short to estimate a period");
    const auto first = static_cast<std::size_t>(warmup_fraction * static_cast<double>(traj.size()));
    const double level = mean_level(traj, dim, first);
    const auto crossings = upward_crossings(traj, dim, first, level);
    if (crossings.size() < 3)
        throw InsufficientData("need at least 3 upward mean crossings, found " + std::to_string(crossings.size()));

    AmplitudePeriod out;
    out.period = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);

    const double start = crossings[crossings.size() - 2];
    const double stop = crossings.back();
    const auto lo = static_cast<std::size_t>(std::lower_bound(traj.time.begin(), traj.time.end(), start) -
                                             traj.time.begin());
    const auto hi = static_cast<std::size_t>(std::upper_bound(traj.time.begin(), traj.time.end(), stop) -
                                             traj.time.begin()) - 1;
    out.amplitude = 0.5 * (refined_extremum(traj, dim, lo, hi, true) - refined_extremum(traj, dim, lo, hi, false));
    return out;
}

PSSProblem warm_start(const OscillatorModel& model, const BasisSpec& spec, const WarmStartOptions& options,
                      const NewtonOptions& newton) {
    spec.validate();
    if (options.anchor_dimension >= static_cast<std::size_t>(model.dimension))
        throw InvalidArgument("anchor dimension out of range");
    if (!(options.periods >= 4.0)) throw InvalidArgument("warm start needs at least 4 periods");
    const std::size_t d0 = options.anchor_dimension;

    const Trajectory settle = transient_oracle(model, options.settle_time, options.dt, model.initial_state);
    const double rough_period = estimate_amplitude_period(settle, d0).period;

    const Trajectory run =
        transient_oracle(model, options.periods * rough_period, options.dt, settle.state(settle.size() - 1));
    const double period = estimate_amplitude_period(run, d0).period;
    const std::size_t half = run.size() / 2;
    const double level = mean_level(run, d0, half);
    const auto crossings = upward_crossings(run, d0, half, level);
    // the last crossing followed by a full period of data
    double origin = crossings.front();
    for (double c : crossings)
        if (c + period <= run.time.back()) origin = c;

    const int n = spec.n;
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(model.dimension),
                                             std::vector<double>(static_cast<std::size_t>(n)));
    for (int d = 0; d < model.dimension; ++d)
        for (int k = 0; k < n; ++k)
            samples[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] =
                sample_at(run, static_cast<std::size_t>(d), origin + period * k / n);

    PSSProblem problem;
    problem.model = model;
    problem.spec = spec;
    problem.initial_guess = interpolate(spec, samples);
    problem.initial_period = period;
    problem.anchor = PhaseAnchor{d0, samples[d0][0]};
    problem.newton = newton;
    return problem;
}

double waveform_amplitude(const PSSolution& sol, std::size_t dim, int samples) {
    if (samples < 2) throw InvalidArgument("waveform amplitude needs at least 2 samples");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < samples; ++i) {
        const double v = evaluate(sol.spline, static_cast<double>(i) / samples, dim);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return 0.5 * (hi - lo);
}

void write_json(std::ostream& os, const PSSolution& sol) {
    nlohmann::ordered_json doc;
    doc["family"] = std::string(to_string(sol.spline.spec.family));
    doc["m"] = sol.spline.spec.m;
    doc["n"] = sol.spline.spec.n;
    doc["sigma"] = sol.spline.spec.sigma;
    doc["period"] = sol.period;
    doc["residual_norm"] = sol.residual_norm;
    doc["iterations"] = sol.iterations;
    doc["converged"] = sol.converged;
    doc["jacobian"] = sol.finite_difference_jacobian ? "finite-difference" : "analytic";
    doc["residual_trace"] = sol.trace;
    doc["coefficients"] = sol.spline.coeffs;
    os << doc.dump(2) << '\n';
}

void write_waveform_csv(std::ostream& os, const PSSolution& sol, int samples) {
    if (samples < 1) throw InvalidArgument("waveform sample count must be >= 1");
    os << 't';
    for (std::size_t d = 0; d < sol.spline.dimension(); ++d) os << ",x_" << d;
    os << '\n';
    for (int i = 0; i < samples; ++i) {
        const double tau = static_cast<double>(i) / samples;
        os << detail::format_real(tau * sol.period);
        for (std::size_t d = 0; d < sol.spline.dimension(); ++d)
            os << ',' << detail::format_real(evaluate(sol.spline, tau, d));
        os << '\n';
    }
}

}  // namespace oscspline
