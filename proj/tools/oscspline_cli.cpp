// oscspline command-line front end.
//
//   oscspline damping --family poly --m 3 --n 64 --sigma -0.25 --out psi.csv
//   oscspline interp  --family trig --m 3 --n 16 --sigma -0.25
//   oscspline pss     --model vdp --param mu=1 --family trig --n 64 --out vdp.json
//   oscspline sweep   --model vdp --family poly,trig --n-list 16,32,64 --out sweep.csv
//
// Only the C interface of the library is used here.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscspline/oscspline.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CliFailure {
    int exit_code;
    std::string kind;
    std::string message;
};

[[noreturn]] void usage_error(std::string message) { throw CliFailure{kExitUsage, "usage", std::move(message)}; }

void check(osp_status status) {
    if (status != OSP_OK) throw CliFailure{kExitRuntime, osp_status_name(status), osp_last_error()};
}

std::string real(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

osp_family family_from(const std::string& name) {
    osp_family f;
    if (osp_family_parse(name.c_str(), &f) != OSP_OK) usage_error(osp_last_error());
    return f;
}

void validate_basis(const osp_basis& basis) {
    if (osp_basis_validate(&basis) != OSP_OK) usage_error(osp_last_error());
}

// RAII wrappers for the opaque handles.
template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(ptr); }
    T** out() { return &ptr; }
    T* get() const { return ptr; }
};
using Spectrum = Handle<osp_spectrum, osp_spectrum_free>;
using Spline = Handle<osp_spline, osp_spline_free>;
using Model = Handle<osp_model, osp_model_free>;
using Solution = Handle<osp_solution, osp_solution_free>;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw CliFailure{kExitRuntime, "io", "cannot write '" + path + "'"};
}

// Run metadata lives next to the data file so data files stay byte-identical.
void write_sidecar(const std::string& out, const std::string& command, const std::vector<std::string>& argv) {
    if (out.empty()) return;
    nlohmann::ordered_json meta;
    meta["tool"] = "oscspline";
    meta["version"] = osp_version();
    meta["command"] = command;
    meta["argv"] = argv;
    write_text(out + ".meta.json", meta.dump(2) + "\n");
}

std::string sibling(const std::string& path, const std::string& ext, const std::string& fallback_suffix) {
    std::filesystem::path p(path);
    std::filesystem::path q = p;
    q.replace_extension(ext);
    return q == p ? path + fallback_suffix : q.string();
}

struct BasisFlags {
    std::string family = "poly";
    int m = 3;
    int n = 32;
    double sigma = -0.25;

    void attach(CLI::App* app, bool family_list = false) {
        app->add_option("--family", family, family_list ? "poly|trig, comma-separated" : "poly|trig")
            ->capture_default_str();
        app->add_option("--m", m, "spline order")->capture_default_str();
        if (!family_list) app->add_option("--n", n, "grid size")->capture_default_str();
        app->add_option("--sigma", sigma, "collocation shift, |sigma| < 1/2")->capture_default_str();
    }
    osp_basis basis() const { return osp_basis{family_from(family), m, n, sigma}; }
};

struct ModelFlags {
    std::string name = "vdp";
    std::vector<std::string> params;

    void attach(CLI::App* app) {
        app->add_option("--model", name, std::string("model name: ") + osp_model_names())->capture_default_str();
        app->add_option("--param", params, "model parameter name=value (repeatable)");
    }

    void create(Model& model) const {
        std::vector<std::string> names;
        std::vector<double> values;
        for (const auto& p : params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos || eq == 0) usage_error("--param expects name=value, got '" + p + "'");
            double v = 0.0;
            const std::string text = p.substr(eq + 1);
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size())
                usage_error("--param value is not a number: '" + p + "'");
            names.push_back(p.substr(0, eq));
            values.push_back(v);
        }
        std::vector<const char*> cnames;
        for (const auto& s : names) cnames.push_back(s.c_str());
        const osp_status st = osp_model_create(name.c_str(), cnames.data(), values.data(), names.size(), model.out());
        if (st == OSP_ERR_INVALID_ARGUMENT) usage_error(osp_last_error());
        check(st);
    }
};

void check_format(const std::string& format) {
    if (format != "csv" && format != "json") usage_error("--format must be csv or json");
}

int cmd_damping(const BasisFlags& flags, const std::string& out, const std::string& format) {
    check_format(format);
    const osp_basis basis = flags.basis();
    validate_basis(basis);
    Spectrum spectrum;
    const osp_status st = osp_damping_spectrum(&basis, spectrum.out());
    if (st == OSP_ERR_INVALID_ARGUMENT) usage_error(osp_last_error());
    check(st);

    if (format == "csv") {
        const std::string path = out.empty() ? "/dev/stdout" : out;
        check(osp_spectrum_write_csv(spectrum.get(), path.c_str()));
        return 0;
    }
    nlohmann::ordered_json doc;
    doc["family"] = osp_family_name(basis.family);
    doc["m"] = basis.m;
    doc["n"] = basis.n;
    doc["sigma"] = basis.sigma;
    doc["entries"] = nlohmann::json::array();
    for (size_t i = 0; i < osp_spectrum_size(spectrum.get()); ++i) {
        double xi, re, im;
        int singular;
        check(osp_spectrum_entry(spectrum.get(), i, &xi, &re, &im, &singular));
        nlohmann::ordered_json e;
        e["xi"] = xi;
        e["re_psi"] = singular ? nlohmann::json(nullptr) : nlohmann::json(re);
        e["im_psi"] = singular ? nlohmann::json(nullptr) : nlohmann::json(im);
        e["singular"] = singular != 0;
        doc["entries"].push_back(e);
    }
    write_text(out, doc.dump(2) + "\n");
    return 0;
}

// Interpolates 1, cos(2 pi k t), sin(2 pi k t) and reports the worst value
// and derivative errors, which exposes the frequencies a basis reproduces.
int cmd_interp(const BasisFlags& flags, const std::string& out, const std::string& format) {
    check_format(format);
    const osp_basis basis = flags.basis();
    validate_basis(basis);
    const auto n = static_cast<size_t>(basis.n);
    std::vector<double> points(n);
    check(osp_collocation_points(&basis, points.data(), n));

    struct Probe {
        std::string name;
        int k;
    };
    std::vector<Probe> probes{{"const", 0}};
    const int top = std::max(1, (basis.m - 1) / 2 + 1);
    for (int k = 1; k <= top; ++k) {
        probes.push_back({"cos", k});
        probes.push_back({"sin", k});
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr int dense = 400;

    nlohmann::ordered_json rows = nlohmann::json::array();
    std::string csv = "function,frequency,max_value_error,max_derivative_error\n";
    for (const auto& probe : probes) {
        auto value = [&](double t) {
            if (probe.k == 0) return 1.0;
            return probe.name == "cos" ? std::cos(two_pi * probe.k * t) : std::sin(two_pi * probe.k * t);
        };
        auto slope = [&](double t) {
            if (probe.k == 0) return 0.0;
            const double w = two_pi * probe.k;
            return probe.name == "cos" ? -w * std::sin(w * t) : w * std::cos(w * t);
        };
        std::vector<double> samples(n);
        for (size_t k = 0; k < n; ++k) samples[k] = value(points[k]);
        Spline spline;
        check(osp_interpolate(&basis, samples.data(), n, spline.out()));
        double value_err = 0.0;
        for (int i = 0; i < dense; ++i) {
            const double t = (i + 0.5) / dense;
            double s;
            check(osp_spline_evaluate(spline.get(), t, &s));
            value_err = std::max(value_err, std::abs(s - value(t)));
        }
        std::vector<double> deriv(n);
        check(osp_spline_derivative_at_collocation(spline.get(), deriv.data(), n));
        double deriv_err = 0.0;
        for (size_t k = 0; k < n; ++k) deriv_err = std::max(deriv_err, std::abs(deriv[k] - slope(points[k])));

        csv += probe.name + "," + std::to_string(probe.k) + "," + real(value_err) + "," + real(deriv_err) + "\n";
        nlohmann::ordered_json row;
        row["function"] = probe.name;
        row["frequency"] = probe.k;
        row["max_value_error"] = value_err;
        row["max_derivative_error"] = deriv_err;
        rows.push_back(row);
    }
    if (format == "csv") {
        write_text(out, csv);
    } else {
        nlohmann::ordered_json doc;
        doc["family"] = osp_family_name(basis.family);
        doc["m"] = basis.m;
        doc["n"] = basis.n;
        doc["sigma"] = basis.sigma;
        doc["checks"] = rows;
        write_text(out, doc.dump(2) + "\n");
    }
    return 0;
}

struct PssPoint {
    osp_basis basis;
    double amplitude = std::nan("");
    double period = std::nan("");
    double residual = std::nan("");
    int iterations = 0;
    bool converged = false;
    std::string error;
};

int cmd_pss(const ModelFlags& model_flags, const BasisFlags& flags, const std::string& out, const std::string& format,
            int samples) {
    check_format(format);
    if (samples < 1) usage_error("--samples must be >= 1");
    const osp_basis basis = flags.basis();
    validate_basis(basis);
    Model model;
    model_flags.create(model);

    osp_pss_options options;
    osp_pss_options_default(&options);
    Solution solution;
    check(osp_pss_solve(model.get(), &basis, &options, solution.out()));
    double amplitude = 0.0;
    check(osp_solution_amplitude(solution.get(), 0, &amplitude));

    if (!out.empty()) {
        const std::string json_path = format == "json" ? out : sibling(out, ".json", ".solution.json");
        const std::string csv_path = format == "csv" ? out : sibling(out, ".csv", ".wave.csv");
        check(osp_solution_write_json(solution.get(), json_path.c_str()));
        check(osp_solution_write_waveform_csv(solution.get(), csv_path.c_str(), samples));
    }

    nlohmann::ordered_json line;
    line["period"] = osp_solution_period(solution.get());
    line["amplitude"] = amplitude;
    line["residual"] = osp_solution_residual(solution.get());
    line["iterations"] = osp_solution_iterations(solution.get());
    line["converged"] = osp_solution_converged(solution.get()) != 0;
    std::cout << line.dump() << std::endl;
    return osp_solution_converged(solution.get()) ? 0 : kExitRuntime;
}

int cmd_sweep(const ModelFlags& model_flags, const BasisFlags& flags, const std::string& n_list,
              const std::string& out, const std::string& format) {
    check_format(format);
    const auto families = split(flags.family, ',');
    if (families.empty()) usage_error("--family list is empty");
    std::vector<int> ns;
    for (const auto& tok : split(n_list, ',')) {
        int v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) usage_error("--n-list entry is not an integer: '" + tok + "'");
        ns.push_back(v);
    }
    if (ns.empty()) usage_error("--n-list must name at least one grid size");

    std::vector<PssPoint> points;
    for (const auto& fam : families)
        for (int n : ns) {
            PssPoint p;
            p.basis = osp_basis{family_from(fam), flags.m, n, flags.sigma};
            validate_basis(p.basis);
            points.push_back(p);
        }
    // duplicates in the lists collapse to one point
    auto key = [](const PssPoint& p) { return std::make_pair(std::string(osp_family_name(p.basis.family)), p.basis.n); };
    std::sort(points.begin(), points.end(), [&](const PssPoint& a, const PssPoint& b) { return key(a) < key(b); });
    points.erase(std::unique(points.begin(), points.end(), [&](const PssPoint& a, const PssPoint& b) { return key(a) == key(b); }),
                 points.end());

    Model model;
    model_flags.create(model);

    std::mutex mutex;
    size_t next = 0;
    auto worker = [&] {
        for (;;) {
            size_t i;
            {
                std::lock_guard lock(mutex);
                if (next >= points.size()) return;
                i = next++;
            }
            PssPoint& p = points[i];
            osp_pss_options options;
            osp_pss_options_default(&options);
            Solution sol;
            if (osp_pss_solve(model.get(), &p.basis, &options, sol.out()) != OSP_OK) {
                p.error = osp_last_error();
                continue;
            }
            if (osp_solution_amplitude(sol.get(), 0, &p.amplitude) != OSP_OK) p.error = osp_last_error();
            p.period = osp_solution_period(sol.get());
            p.residual = osp_solution_residual(sol.get());
            p.iterations = osp_solution_iterations(sol.get());
            p.converged = osp_solution_converged(sol.get()) != 0;
        }
    };
    const size_t workers = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, points.size());
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (format == "csv") {
        std::string csv = "family,m,n,sigma,amplitude,period,converged\n";
        for (const auto& p : points)
            csv += std::string(osp_family_name(p.basis.family)) + "," + std::to_string(p.basis.m) + "," +
                   std::to_string(p.basis.n) + "," + real(p.basis.sigma) + "," + real(p.amplitude) + "," +
                   real(p.period) + "," + (p.converged ? "1" : "0") + "\n";
        write_text(out, csv);
    } else {
        nlohmann::ordered_json rows = nlohmann::json::array();
        for (const auto& p : points) {
            nlohmann::ordered_json r;
            r["family"] = osp_family_name(p.basis.family);
            r["m"] = p.basis.m;
            r["n"] = p.basis.n;
            r["sigma"] = p.basis.sigma;
            r["amplitude"] = p.amplitude;
            r["period"] = p.period;
            r["residual"] = p.residual;
            r["iterations"] = p.iterations;
            r["converged"] = p.converged;
            rows.push_back(r);
        }
        write_text(out, rows.dump(2) + "\n");
    }
    for (const auto& p : points)
        if (!p.error.empty())
            throw CliFailure{kExitRuntime, "sweep_point", std::string(osp_family_name(p.basis.family)) + " n=" +
                                                              std::to_string(p.basis.n) + ": " + p.error};
    return 0;
}

void report(const CliFailure& f) {
    nlohmann::ordered_json line;
    line["error"] = f.kind;
    line["message"] = f.message;
    std::cerr << line.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic spline collocation with polynomial and trigonometric B-splines"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv, argv + argc);

    std::string out;
    std::string format = "csv";
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", out, "output path (standard output when omitted)");
        sub->add_option("--format", format, "csv|json")->capture_default_str();
    };

    BasisFlags damping_flags;
    auto* damping = app.add_subcommand("damping", "damping symbol psi(sigma, k/n) over one grid");
    damping_flags.attach(damping);
    add_output(damping);

    BasisFlags interp_flags;
    auto* interp = app.add_subcommand("interp", "interpolation and differentiation errors for low frequencies");
    interp_flags.attach(interp);
    add_output(interp);

    BasisFlags pss_flags;
    pss_flags.family = "trig";
    ModelFlags pss_model;
    int samples = 512;
    auto* pss = app.add_subcommand("pss", "periodic steady state of an oscillator model");
    pss_flags.attach(pss);
    pss_model.attach(pss);
    add_output(pss);
    pss->add_option("--samples", samples, "waveform samples per period")->capture_default_str();

    BasisFlags sweep_flags;
    sweep_flags.family = "poly,trig";
    ModelFlags sweep_model;
    std::string n_list;
    auto* sweep = app.add_subcommand("sweep", "amplitude and period over grid sizes and spline families");
    sweep_flags.attach(sweep, true);
    sweep_model.attach(sweep);
    add_output(sweep);
    sweep->add_option("--n-list", n_list, "comma-separated grid sizes")->required();

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            usage_error(e.what());
        }

        int code = 0;
        std::string command;
        if (*damping) {
            command = "damping";
            code = cmd_damping(damping_flags, out, format);
        } else if (*interp) {
            command = "interp";
            code = cmd_interp(interp_flags, out, format);
        } else if (*pss) {
            command = "pss";
            code = cmd_pss(pss_model, pss_flags, out, format, samples);
        } else if (*sweep) {
            command = "sweep";
            code = cmd_sweep(sweep_model, sweep_flags, n_list, out, format);
        }
        write_sidecar(out, command, args);
        if (code != 0) report(CliFailure{code, "not_converged", "Newton iteration did not reach the tolerance"});
        return code;
    } catch (const CliFailure& f) {
        report(f);
        return f.exit_code;
    }
}
