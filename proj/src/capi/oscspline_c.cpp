#include "oscspline/oscspline.h"

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "oscspline/collocation.hpp"
#include "oscspline/errors.hpp"
#include "oscspline/models.hpp"
#include "oscspline/pss.hpp"
#include "oscspline/spectral.hpp"

struct osp_spectrum {
    oscspline::Spectrum value;
};
struct osp_spline {
    oscspline::SplineFunction value;
};
struct osp_model {
    oscspline::OscillatorModel value;
};
struct osp_solution {
    oscspline::PSSolution value;
};

namespace {

thread_local std::string g_last_error;

osp_status fail(osp_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs fn and maps library exceptions onto status codes.
template <typename Fn>
osp_status guarded(Fn&& fn) noexcept {
    try {
        return fn();
    } catch (const oscspline::SingularSymbol& e) {
        return fail(OSP_ERR_SINGULAR, e.what());
    } catch (const oscspline::InterpolationUnstable& e) {
        return fail(OSP_ERR_SINGULAR, e.what());
    } catch (const oscspline::SingularJacobian& e) {
        return fail(OSP_ERR_SINGULAR, e.what());
    } catch (const oscspline::IntegrationFailure& e) {
        return fail(OSP_ERR_NUMERICAL, e.what());
    } catch (const oscspline::InsufficientData& e) {
        return fail(OSP_ERR_INSUFFICIENT_DATA, e.what());
    } catch (const oscspline::InvalidArgument& e) {
        return fail(OSP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(OSP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(OSP_ERR_INTERNAL, "unknown error");
    }
}

oscspline::Family to_family(osp_family f) {
    switch (f) {
        case OSP_FAMILY_POLY: return oscspline::Family::polynomial;
        case OSP_FAMILY_TRIG: return oscspline::Family::trigonometric;
    }
    throw oscspline::InvalidArgument("unknown spline family code");
}

oscspline::BasisSpec to_spec(const osp_basis* basis) {
    if (!basis) throw oscspline::InvalidArgument("null basis");
    oscspline::BasisSpec spec{to_family(basis->family), basis->m, basis->n, basis->sigma};
    spec.validate();
    return spec;
}

template <typename T>
void require(const T* p, const char* what) {
    if (!p) throw oscspline::InvalidArgument(std::string("null ") + what);
}

template <typename Writer>
osp_status write_file(const char* path, Writer&& writer) {
    if (!path) throw oscspline::InvalidArgument("null output path");
    std::ostringstream buffer;
    writer(buffer);
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(OSP_ERR_IO, std::string("cannot open '") + path + "' for writing");
    out << buffer.str();
    out.close();
    if (!out) return fail(OSP_ERR_IO, std::string("write to '") + path + "' failed");
    return OSP_OK;
}

osp_status complex_out(oscspline::Complex v, double* re, double* im) {
    require(re, "output");
    require(im, "output");
    *re = v.real();
    *im = v.imag();
    return OSP_OK;
}

}  // namespace

extern "C" {

const char* osp_version(void) { return "1.0.0"; }

const char* osp_last_error(void) { return g_last_error.c_str(); }

const char* osp_status_name(osp_status status) {
    switch (status) {
        case OSP_OK: return "ok";
        case OSP_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case OSP_ERR_SINGULAR: return "singular";
        case OSP_ERR_NUMERICAL: return "numerical";
        case OSP_ERR_INSUFFICIENT_DATA: return "insufficient_data";
        case OSP_ERR_IO: return "io";
        case OSP_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

osp_status osp_family_parse(const char* name, osp_family* out) {
    return guarded([&] {
        require(name, "family name");
        require(out, "output");
        *out = oscspline::parse_family(name) == oscspline::Family::polynomial ? OSP_FAMILY_POLY : OSP_FAMILY_TRIG;
        return OSP_OK;
    });
}

const char* osp_family_name(osp_family family) {
    return family == OSP_FAMILY_TRIG ? "trig" : "poly";
}

osp_status osp_basis_validate(const osp_basis* basis) {
    return guarded([&] {
        to_spec(basis);
        return OSP_OK;
    });
}

osp_status osp_phi(osp_family family, int m, double h, double x, double xi, double* re, double* im) {
    return guarded([&] { return complex_out(oscspline::phi({to_family(family), m, h, x, xi}), re, im); });
}

osp_status osp_psi(osp_family family, int m, double h, double x, double xi, double* re, double* im) {
    return guarded([&] { return complex_out(oscspline::psi({to_family(family), m, h, x, xi}), re, im); });
}

osp_status osp_damping_spectrum(const osp_basis* basis, osp_spectrum** out) {
    return guarded([&] {
        require(basis, "basis");
        require(out, "output");
        *out = new osp_spectrum{oscspline::damping_spectrum(to_family(basis->family), basis->m, basis->n, basis->sigma)};
        return OSP_OK;
    });
}

size_t osp_spectrum_size(const osp_spectrum* spectrum) { return spectrum ? spectrum->value.entries.size() : 0; }

osp_status osp_spectrum_entry(const osp_spectrum* spectrum, size_t index, double* xi, double* re, double* im,
                              int* singular) {
    return guarded([&] {
        require(spectrum, "spectrum");
        if (index >= spectrum->value.entries.size()) throw oscspline::InvalidArgument("spectrum index out of range");
        const auto& e = spectrum->value.entries[index];
        if (xi) *xi = e.xi;
        if (re) *re = e.value.real();
        if (im) *im = e.value.imag();
        if (singular) *singular = e.singular ? 1 : 0;
        return OSP_OK;
    });
}

osp_status osp_spectrum_write_csv(const osp_spectrum* spectrum, const char* path) {
    return guarded([&] {
        require(spectrum, "spectrum");
        return write_file(path, [&](std::ostream& os) { oscspline::write_csv(os, spectrum->value); });
    });
}

void osp_spectrum_free(osp_spectrum* spectrum) { delete spectrum; }

osp_status osp_collocation_points(const osp_basis* basis, double* out, size_t len) {
    return guarded([&] {
        const auto spec = to_spec(basis);
        require(out, "output");
        if (len != static_cast<size_t>(spec.n)) throw oscspline::InvalidArgument("output length must equal n");
        const auto t = oscspline::collocation_points(spec);
        std::copy(t.begin(), t.end(), out);
        return OSP_OK;
    });
}

osp_status osp_interpolate(const osp_basis* basis, const double* samples, size_t len, osp_spline** out) {
    return guarded([&] {
        const auto spec = to_spec(basis);
        require(samples, "samples");
        require(out, "output");
        *out = new osp_spline{oscspline::interpolate(spec, std::span<const double>(samples, len))};
        return OSP_OK;
    });
}

osp_status osp_spline_evaluate(const osp_spline* spline, double t, double* out) {
    return guarded([&] {
        require(spline, "spline");
        require(out, "output");
        *out = oscspline::evaluate(spline->value, t);
        return OSP_OK;
    });
}

osp_status osp_spline_derivative_at_collocation(const osp_spline* spline, double* out, size_t len) {
    return guarded([&] {
        require(spline, "spline");
        require(out, "output");
        if (len != static_cast<size_t>(spline->value.spec.n))
            throw oscspline::InvalidArgument("output length must equal n");
        const auto d = oscspline::differentiate_at_collocation(spline->value);
        std::copy(d.begin(), d.end(), out);
        return OSP_OK;
    });
}

osp_status osp_spline_write_csv(const osp_spline* spline, const char* path) {
    return guarded([&] {
        require(spline, "spline");
        return write_file(path, [&](std::ostream& os) { oscspline::write_csv(os, spline->value); });
    });
}

void osp_spline_free(osp_spline* spline) { delete spline; }

const char* osp_model_names(void) {
    static const std::string names = [] {
        std::string s;
        for (const auto& n : oscspline::model_names()) s += (s.empty() ? "" : ",") + n;
        return s;
    }();
    return names.c_str();
}

osp_status osp_model_create(const char* name, const char* const* param_names, const double* param_values,
                            size_t param_count, osp_model** out) {
    return guarded([&] {
        require(name, "model name");
        require(out, "output");
        std::map<std::string, double> params;
        if (param_count > 0) {
            require(param_names, "parameter names");
            require(param_values, "parameter values");
        }
        for (size_t i = 0; i < param_count; ++i) {
            require(param_names[i], "parameter name");
            params[param_names[i]] = param_values[i];
        }
        *out = new osp_model{oscspline::make_model(name, params)};
        return OSP_OK;
    });
}

int osp_model_dimension(const osp_model* model) { return model ? model->value.dimension : 0; }

osp_status osp_model_reference(const osp_model* model, double* amplitude, double* period) {
    return guarded([&] {
        require(model, "model");
        if (!model->value.reference)
            throw oscspline::InvalidArgument("model '" + model->value.name + "' has no reference data for these parameters");
        if (amplitude) *amplitude = model->value.reference->amplitude;
        if (period) *period = model->value.reference->period;
        return OSP_OK;
    });
}

void osp_model_free(osp_model* model) { delete model; }

osp_status osp_transient_reference(const osp_model* model, double t_end, double dt, int dim, double* amplitude,
                                   double* period) {
    return guarded([&] {
        require(model, "model");
        if (dim < 0) throw oscspline::InvalidArgument("negative dimension");
        const auto traj = oscspline::transient_oracle(model->value, t_end, dt, model->value.initial_state);
        const auto ap = oscspline::estimate_amplitude_period(traj, static_cast<std::size_t>(dim));
        if (amplitude) *amplitude = ap.amplitude;
        if (period) *period = ap.period;
        return OSP_OK;
    });
}

void osp_pss_options_default(osp_pss_options* options) {
    if (!options) return;
    const oscspline::NewtonOptions newton;
    const oscspline::WarmStartOptions warm;
    options->max_iter = newton.max_iter;
    options->tol = newton.tol;
    options->damping_factor = newton.damping_factor;
    options->anchor_dimension = static_cast<int>(warm.anchor_dimension);
    options->settle_time = warm.settle_time;
    options->dt = warm.dt;
    options->periods = warm.periods;
}

osp_status osp_pss_solve(const osp_model* model, const osp_basis* basis, const osp_pss_options* options,
                         osp_solution** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "output");
        const auto spec = to_spec(basis);
        osp_pss_options opts;
        osp_pss_options_default(&opts);
        if (options) opts = *options;
        if (opts.anchor_dimension < 0) throw oscspline::InvalidArgument("negative anchor dimension");
        const oscspline::WarmStartOptions warm{opts.settle_time, opts.dt, opts.periods,
                                               static_cast<std::size_t>(opts.anchor_dimension)};
        const oscspline::NewtonOptions newton{opts.max_iter, opts.tol, opts.damping_factor};
        const auto problem = oscspline::warm_start(model->value, spec, warm, newton);
        *out = new osp_solution{oscspline::newton_solve(problem)};
        return OSP_OK;
    });
}

int osp_solution_converged(const osp_solution* solution) { return solution && solution->value.converged ? 1 : 0; }
int osp_solution_iterations(const osp_solution* solution) { return solution ? solution->value.iterations : 0; }
double osp_solution_period(const osp_solution* solution) { return solution ? solution->value.period : 0.0; }
double osp_solution_residual(const osp_solution* solution) { return solution ? solution->value.residual_norm : 0.0; }

osp_status osp_solution_amplitude(const osp_solution* solution, int dim, double* out) {
    return guarded([&] {
        require(solution, "solution");
        require(out, "output");
        if (dim < 0 || static_cast<std::size_t>(dim) >= solution->value.spline.dimension())
            throw oscspline::InvalidArgument("dimension out of range");
        *out = oscspline::waveform_amplitude(solution->value, static_cast<std::size_t>(dim));
        return OSP_OK;
    });
}

osp_status osp_solution_write_json(const osp_solution* solution, const char* path) {
    return guarded([&] {
        require(solution, "solution");
        return write_file(path, [&](std::ostream& os) { oscspline::write_json(os, solution->value); });
    });
}

osp_status osp_solution_write_waveform_csv(const osp_solution* solution, const char* path, int samples) {
    return guarded([&] {
        require(solution, "solution");
        if (samples < 1) throw oscspline::InvalidArgument("waveform sample count must be >= 1");
        return write_file(path, [&](std::ostream& os) { oscspline::write_waveform_csv(os, solution->value, samples); });
    });
}

void osp_solution_free(osp_solution* solution) { delete solution; }

}  // extern "C"
