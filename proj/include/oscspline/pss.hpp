#pragma once

// Periodic steady state of autonomous oscillators by spline collocation.
//
// Time is normalized to tau in [0, 1) with the period T as an extra unknown,
// so the collocation equations read
//
//     (1/T) (D x_d)(t_k) - f_d(x(t_k)) = 0,   d = 0..dim-1, k = 0..n-1,
//     x_{d0}(t_0) - a0 = 0                     (phase condition),
//
// with D the collocation differentiation operator. The unknown vector holds
// the collocation samples x_d(t_k), dimension-major, followed by T.

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oscspline/collocation.hpp"
#include "oscspline/models.hpp"

namespace oscspline {

struct NewtonOptions {
    int max_iter = 50;
    double tol = 1e-10;
    double damping_factor = 1.0;  // initial step scale in (0, 1]
};

struct PhaseAnchor {
    std::size_t dimension = 0;
    double value = 0.0;
};

struct PSSProblem {
    OscillatorModel model;
    BasisSpec spec;
    SplineFunction initial_guess;  // one coefficient sequence per model dimension
    double initial_period = 1.0;
    PhaseAnchor anchor;
    NewtonOptions newton;

    void validate() const;
};

struct PSSolution {
    SplineFunction spline;  // on normalized time tau in [0, 1)
    double period = 0.0;
    double residual_norm = 0.0;  // max norm
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;  // residual norm before each step, then the final one
    bool finite_difference_jacobian = false;
};

/// Residual and Jacobian of the collocation system, with D assembled once.
class PssSystem {
public:
    explicit PssSystem(PSSProblem problem);

    const PSSProblem& problem() const noexcept { return problem_; }
    const Eigen::MatrixXd& diff_operator() const noexcept { return diff_; }
    Eigen::Index size() const noexcept { return size_; }

    /// Unknowns from a spline (samples at the collocation points) and a period.
    Eigen::VectorXd pack(const SplineFunction& f, double period) const;
    SplineFunction unpack(const Eigen::VectorXd& unknowns) const;

    Eigen::VectorXd residual(const Eigen::VectorXd& unknowns) const;
    /// Analytic when the model supplies a Jacobian, central differences otherwise.
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& unknowns) const;
    Eigen::MatrixXd finite_difference_jacobian(const Eigen::VectorXd& unknowns, double step = 1e-6) const;

private:
    PSSProblem problem_;
    Eigen::MatrixXd diff_;
    Eigen::Index size_;
};

Eigen::VectorXd pss_residual(const PSSProblem& problem, const Eigen::VectorXd& unknowns);
Eigen::MatrixXd pss_jacobian(const PSSProblem& problem, const Eigen::VectorXd& unknowns);

/// Damped Newton: the step starts at damping_factor and is halved until the
/// residual norm decreases, down to 2^-10. Throws SingularJacobian.
PSSolution newton_solve(const PSSProblem& problem);

/// Samples of an RK4 run, state-major in `data`.
struct Trajectory {
    int dimension = 0;
    std::vector<double> time;
    std::vector<double> data;

    std::size_t size() const noexcept { return time.size(); }
    double at(std::size_t i, std::size_t dim) const { return data[i * dimension + dim]; }
    Eigen::VectorXd state(std::size_t i) const;
};

/// Classical fixed-step RK4 from x0 over [0, t_end]. Throws IntegrationFailure
/// with the time stamp of the first non-finite state.
Trajectory transient_oracle(const OscillatorModel& model, double t_end, double dt, const Eigen::VectorXd& x0);

struct AmplitudePeriod {
    double amplitude = 0.0;
    double period = 0.0;
};

/// Period from the mean spacing of upward crossings of the mean level,
/// amplitude as half the peak-to-peak over the last full period. The leading
/// warmup_fraction of the samples is discarded. Needs >= 3 crossings.
AmplitudePeriod estimate_amplitude_period(const Trajectory& traj, std::size_t dim,
                                          double warmup_fraction = 0.5);

struct WarmStartOptions {
    double settle_time = 100.0;  // initial transient run
    double dt = 1e-3;
    double periods = 20.0;  // length of the second run, in estimated periods
    std::size_t anchor_dimension = 0;
};

/// Builds a problem from the oscillator's own transient: the guess is one
/// period of the settled trajectory starting at an upward mean crossing of
/// the anchor dimension, which is placed at t_0 with a0 = the mean level.
PSSProblem warm_start(const OscillatorModel& model, const BasisSpec& spec,
                      const WarmStartOptions& options = {}, const NewtonOptions& newton = {});

/// Half peak-to-peak of one dimension of the solution over `samples` points.
double waveform_amplitude(const PSSolution& sol, std::size_t dim = 0, int samples = 4096);

/// JSON document with the basis, period, residual, iteration data and coefficients.
void write_json(std::ostream& os, const PSSolution& sol);
/// Dense waveform: columns t, x_0, ..., x_{d-1}; t in physical time over one period.
void write_waveform_csv(std::ostream& os, const PSSolution& sol, int samples);

}  // namespace oscspline
