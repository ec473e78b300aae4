// stone-spectra: vacuum spectral CDFs and characteristic functions of a
// few self-adjoint observables, computed through the resolvent boundary
// limit and cross-checked against closed forms.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectra/charfun.hpp"
#include "spectra/io.hpp"
#include "spectra/observable.hpp"
#include "spectra/stone.hpp"
#include "spectra/verify.hpp"

namespace {

using spectra::cplx;
using spectra::NumericsConfig;
using spectra::ObservableSpec;

constexpr int kExitInvalidRequest = 2;
constexpr int kExitNumericalFailure = 3;

struct Request {
    std::string observable = "anticommutator";
    std::string matrix_file;
    std::vector<double> vacuum;
    double min = -5.0, max = 5.0;
    int points = 101;
    std::string format = "json";
    NumericsConfig cfg;
};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = a + (b - a) * i / static_cast<double>(n - 1);
    return g;
}

ObservableSpec make_observable(const Request& req) {
    if (req.observable == "anticommutator")
        return ObservableSpec::anticommutator();
    if (req.observable == "oscillator") return ObservableSpec::oscillator();
    if (req.observable == "heisenberg") {
        if (req.vacuum.size() != 3)
            throw std::invalid_argument(
                "heisenberg preset needs --vacuum a,b,c");
        Eigen::Vector3d v(req.vacuum[0], req.vacuum[1], req.vacuum[2]);
        return ObservableSpec::heisenberg(v);
    }
    if (req.observable == "matrix") {
        if (req.matrix_file.empty())
            throw std::invalid_argument("matrix observable needs --file");
        std::ifstream in(req.matrix_file);
        if (!in)
            throw std::invalid_argument("cannot open " + req.matrix_file);
        std::stringstream buf;
        buf << in.rdbuf();
        std::optional<std::vector<double>> vac;
        if (!req.vacuum.empty()) vac = req.vacuum;
        return spectra::io::load_matrix_file(buf.str(), vac);
    }
    throw std::invalid_argument("unknown observable: " + req.observable);
}

// Default lambda grid wide enough for the observable's spectrum; the cf
// command derives its measure from this grid.
std::vector<double> measure_grid(const ObservableSpec& spec,
                                 const NumericsConfig& cfg) {
    switch (spec.kind) {
        case spectra::ObservableKind::AntiCommutator: {
            auto g = linspace(-12.0, 12.0, 241);
            g.insert(g.begin(), -cfg.t_cutoff);
            g.push_back(cfg.t_cutoff);
            return g;
        }
        case spectra::ObservableKind::OscillatorHamiltonian:
            return linspace(-1.0, 2.0, 61);
        case spectra::ObservableKind::FiniteMatrix: {
            double r = spec.matrix.cwiseAbs().rowwise().sum().maxCoeff() + 0.5;
            int pts = static_cast<int>(std::ceil(2.0 * r / 0.1)) + 1;
            return linspace(-r, r, pts);
        }
    }
    throw std::logic_error("unknown observable kind");
}

// Closed-form reference CF: sqrt(sech 2t) / e^{it/2} for the continuum
// presets, the eigendecomposition sum for finite matrices.
std::vector<cplx> reference_cf(const ObservableSpec& spec,
                               const std::vector<double>& t_grid) {
    std::vector<cplx> ref;
    ref.reserve(t_grid.size());
    const cplx i{0.0, 1.0};
    if (spec.kind == spectra::ObservableKind::FiniteMatrix) {
        auto oracle = spectra::stone::eig_cdf_oracle(spec, {0.0});
        for (double t : t_grid) {
            cplx phi = 0.0;
            for (const auto& at : oracle.atoms)
                phi += at.mass * std::exp(i * t * at.location);
            ref.push_back(phi);
        }
        return ref;
    }
    for (double t : t_grid) {
        if (spec.kind == spectra::ObservableKind::AntiCommutator)
            ref.push_back(spectra::charfun::cf_anticommutator_reference(t));
        else
            ref.push_back(std::exp(0.5 * i * t));
    }
    return ref;
}

int run_cdf(const Request& req) {
    auto spec = make_observable(req);
    auto cdf =
        spectra::stone::stone_cdf(spec, linspace(req.min, req.max, req.points),
                                  req.cfg);
    if (req.format == "json")
        std::cout << spectra::io::cdf_to_json(req.observable, req.cfg, cdf);
    else
        std::cout << spectra::io::cdf_to_csv(cdf);
    return 0;
}

int run_cf(const Request& req) {
    auto spec = make_observable(req);
    auto cdf = spectra::stone::stone_cdf(spec, measure_grid(spec, req.cfg),
                                         req.cfg);
    auto measure = spectra::charfun::measure_from_cdf(cdf);
    auto t_grid = linspace(req.min, req.max, req.points);
    auto cf = spectra::charfun::cf_from_measure(measure, t_grid, req.cfg);
    auto ref = reference_cf(spec, t_grid);
    if (req.format == "json")
        std::cout << spectra::io::cf_to_json(req.observable, req.cfg, cf, &ref);
    else
        std::cout << spectra::io::cf_to_csv(cf, &ref);
    return 0;
}

int run_verify(const std::string& suite, const std::string& format) {
    auto report = spectra::verify::run_suite(suite);
    if (format == "json")
        std::cout << spectra::io::report_to_json(report);
    else
        std::cout << spectra::io::report_to_text(report);
    return report.overall ? 0 : 1;
}

void add_common_options(CLI::App* cmd, Request& req) {
    cmd->add_option("--observable", req.observable,
                    "anticommutator|oscillator|heisenberg|matrix");
    cmd->add_option("--file", req.matrix_file,
                    "JSON file with {\"matrix\": [[...]], \"vacuum\": [...]}");
    cmd->add_option("--vacuum", req.vacuum)
        ->delimiter(',')
        ->description("vacuum vector components (heisenberg/matrix)");
    cmd->add_option("--min", req.min, "grid lower endpoint");
    cmd->add_option("--max", req.max, "grid upper endpoint");
    cmd->add_option("--points", req.points, "grid point count")
        ->check(CLI::Range(2, 100000));
    cmd->add_option("--format", req.format)
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--quad-tol", req.cfg.quad_tol);
    cmd->add_option("--cross-check-tol", req.cfg.cross_check_tol);
    cmd->add_option("--eps-schedule", req.cfg.eps_schedule)->delimiter(',');
    cmd->add_option("--t-cutoff", req.cfg.t_cutoff);
    cmd->add_option("--atom-jump-tol", req.cfg.atom_jump_tol);
    cmd->add_option("--sing-tol", req.cfg.sing_tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacuum spectral CDFs and characteristic functions"};
    app.require_subcommand(1);

    Request cdf_req, cf_req;
    auto* cdf_cmd = app.add_subcommand("cdf", "vacuum spectral CDF");
    add_common_options(cdf_cmd, cdf_req);
    auto* cf_cmd = app.add_subcommand("cf", "vacuum characteristic function");
    add_common_options(cf_cmd, cf_req);

    std::string suite = "all", verify_format = "text";
    auto* verify_cmd = app.add_subcommand("verify", "invariant suites");
    verify_cmd->add_option("--suite", suite,
                           "specfun|resolvents|stone|charfun|all");
    verify_cmd->add_option("--format", verify_format)
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidRequest;
    }

    try {
        if (cdf_cmd->parsed()) {
            if (cdf_req.min >= cdf_req.max)
                throw std::invalid_argument("--min must be below --max");
            return run_cdf(cdf_req);
        }
        if (cf_cmd->parsed()) {
            if (cf_req.min >= cf_req.max)
                throw std::invalid_argument("--min must be below --max");
            return run_cf(cf_req);
        }
        return run_verify(suite, verify_format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidRequest;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
}
