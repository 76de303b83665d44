/*
 * C interface to the oscspline library.
 *
 * Objects are opaque handles created by osp_*_create / osp_* producers and
 * released with the matching osp_*_free. Every fallible call returns an
 * osp_status; on failure osp_last_error() holds a one-line description
 * (thread-local, valid until the next failing call on the same thread).
 */
#ifndef OSCSPLINE_H
#define OSCSPLINE_H

#include <stddef.h>

#if defined(OSP_BUILDING_LIBRARY)
#define OSP_API __attribute__((visibility("default")))
#else
#define OSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osp_status {
    OSP_OK = 0,
    OSP_ERR_INVALID_ARGUMENT = 1,
    OSP_ERR_SINGULAR = 2,          /* vanishing symbol or singular Jacobian */
    OSP_ERR_NUMERICAL = 3,         /* non-finite integration state */
    OSP_ERR_INSUFFICIENT_DATA = 4, /* too few crossings to estimate a period */
    OSP_ERR_IO = 5,
    OSP_ERR_INTERNAL = 6
} osp_status;

typedef enum osp_family { OSP_FAMILY_POLY = 0, OSP_FAMILY_TRIG = 1 } osp_family;

typedef struct osp_basis {
    osp_family family;
    int m;        /* order, >= 2 */
    int n;        /* grid size, > m */
    double sigma; /* collocation shift, |sigma| < 1/2 */
} osp_basis;

typedef struct osp_spectrum osp_spectrum;
typedef struct osp_spline osp_spline;
typedef struct osp_model osp_model;
typedef struct osp_solution osp_solution;

OSP_API const char* osp_version(void);
OSP_API const char* osp_last_error(void);
OSP_API const char* osp_status_name(osp_status status);

/* "poly"/"polynomial" or "trig"/"trigonometric" */
OSP_API osp_status osp_family_parse(const char* name, osp_family* out);
OSP_API const char* osp_family_name(osp_family family);
OSP_API osp_status osp_basis_validate(const osp_basis* basis);

/* ---- symbols ---------------------------------------------------------- */

/* h is ignored for OSP_FAMILY_POLY. */
OSP_API osp_status osp_phi(osp_family family, int m, double h, double x, double xi, double* re, double* im);
OSP_API osp_status osp_psi(osp_family family, int m, double h, double x, double xi, double* re, double* im);

/* psi(sigma, k/n), k = 0..n-1; needs n >= 2m. */
OSP_API osp_status osp_damping_spectrum(const osp_basis* basis, osp_spectrum** out);
OSP_API size_t osp_spectrum_size(const osp_spectrum* spectrum);
OSP_API osp_status osp_spectrum_entry(const osp_spectrum* spectrum, size_t index, double* xi, double* re,
                                      double* im, int* singular);
/* columns xi,re_psi,im_psi,singular */
OSP_API osp_status osp_spectrum_write_csv(const osp_spectrum* spectrum, const char* path);
OSP_API void osp_spectrum_free(osp_spectrum* spectrum);

/* ---- collocation ------------------------------------------------------ */

OSP_API osp_status osp_collocation_points(const osp_basis* basis, double* out, size_t len);
OSP_API osp_status osp_interpolate(const osp_basis* basis, const double* samples, size_t len, osp_spline** out);
OSP_API osp_status osp_spline_evaluate(const osp_spline* spline, double t, double* out);
/* s'(t_k) for k = 0..n-1 */
OSP_API osp_status osp_spline_derivative_at_collocation(const osp_spline* spline, double* out, size_t len);
OSP_API osp_status osp_spline_write_csv(const osp_spline* spline, const char* path);
OSP_API void osp_spline_free(osp_spline* spline);

/* ---- models ----------------------------------------------------------- */

/* Comma-separated list of built-in model names. */
OSP_API const char* osp_model_names(void);
OSP_API osp_status osp_model_create(const char* name, const char* const* param_names, const double* param_values,
                                    size_t param_count, osp_model** out);
OSP_API int osp_model_dimension(const osp_model* model);
/* OSP_ERR_INVALID_ARGUMENT when the model carries no reference data. */
OSP_API osp_status osp_model_reference(const osp_model* model, double* amplitude, double* period);
OSP_API void osp_model_free(osp_model* model);

/* RK4 from the model's default initial state; amplitude/period of one dimension
 * over the second half of [0, t_end]. */
OSP_API osp_status osp_transient_reference(const osp_model* model, double t_end, double dt, int dim,
                                           double* amplitude, double* period);

/* ---- periodic steady state -------------------------------------------- */

typedef struct osp_pss_options {
    int max_iter;
    double tol;
    double damping_factor;
    int anchor_dimension;
    double settle_time; /* warm-start transient length */
    double dt;          /* warm-start RK4 step */
    double periods;     /* warm-start second run, in periods */
} osp_pss_options;

OSP_API void osp_pss_options_default(osp_pss_options* options);

/* Warm start from the transient, then damped Newton. A solution that did not
 * converge is still returned with OSP_OK; check osp_solution_converged. */
OSP_API osp_status osp_pss_solve(const osp_model* model, const osp_basis* basis, const osp_pss_options* options,
                                 osp_solution** out);
OSP_API int osp_solution_converged(const osp_solution* solution);
OSP_API int osp_solution_iterations(const osp_solution* solution);
OSP_API double osp_solution_period(const osp_solution* solution);
OSP_API double osp_solution_residual(const osp_solution* solution);
OSP_API osp_status osp_solution_amplitude(const osp_solution* solution, int dim, double* out);
OSP_API osp_status osp_solution_write_json(const osp_solution* solution, const char* path);
OSP_API osp_status osp_solution_write_waveform_csv(const osp_solution* solution, const char* path, int samples);
OSP_API void osp_solution_free(osp_solution* solution);

#ifdef __cplusplus
}
#endif

#endif /* OSCSPLINE_H */
