#include "spectra/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace spectra::io {

namespace {

using nlohmann::json;

json config_json(const NumericsConfig& cfg) {
    return json{{"quad_tol", cfg.quad_tol},
                {"cross_check_tol", cfg.cross_check_tol},
                {"eps_schedule", cfg.eps_schedule},
                {"t_cutoff", cfg.t_cutoff},
                {"atom_jump_tol", cfg.atom_jump_tol},
                {"sing_tol", cfg.sing_tol}};
}

json atoms_json(const std::vector<stone::Atom>& atoms) {
    json arr = json::array();
    for (const auto& a : atoms) arr.push_back({a.location, a.mass});
    return arr;
}

double max_deviation(const charfun::ComplexGridFunction& cf,
                     const std::vector<cplx>& reference) {
    double worst = 0.0;
    for (size_t i = 0; i < cf.values.size(); ++i)
        worst = std::max(worst, std::abs(cf.values[i] - reference[i]));
    return worst;
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cdf_to_json(const std::string& observable,
                        const NumericsConfig& cfg,
                        const stone::SpectralCDF& cdf) {
    json out{{"observable", observable},
             {"config", config_json(cfg)},
             {"grid", cdf.grid},
             {"values", cdf.values},
             {"atoms", atoms_json(cdf.atoms)},
             {"error_budget",
              {{"tail_bound", cdf.budget.tail_bound},
               {"extrapolation_spread", cdf.budget.extrapolation_spread},
               {"quad_tol", cdf.budget.quad_tol}}}};
    return out.dump(2) + "\n";
}

std::string cdf_to_csv(const stone::SpectralCDF& cdf) {
    std::string out = "lambda,F\n";
    for (size_t i = 0; i < cdf.grid.size(); ++i)
        out += fmt17(cdf.grid[i]) + "," + fmt17(cdf.values[i]) + "\n";
    out += "\nlocation,mass\n";
    for (const auto& a : cdf.atoms)
        out += fmt17(a.location) + "," + fmt17(a.mass) + "\n";
    return out;
}

std::string cf_to_json(const std::string& observable, const NumericsConfig& cfg,
                       const charfun::ComplexGridFunction& cf,
                       const std::vector<cplx>* reference) {
    std::vector<double> re(cf.values.size()), im(cf.values.size());
    for (size_t i = 0; i < cf.values.size(); ++i) {
        re[i] = cf.values[i].real();
        im[i] = cf.values[i].imag();
    }
    json out{{"observable", observable},
             {"config", config_json(cfg)},
             {"grid", cf.grid},
             {"re", re},
             {"im", im}};
    if (reference) {
        std::vector<double> rre(reference->size()), rim(reference->size());
        for (size_t i = 0; i < reference->size(); ++i) {
            rre[i] = (*reference)[i].real();
            rim[i] = (*reference)[i].imag();
        }
        out["reference_re"] = rre;
        out["reference_im"] = rim;
        out["max_abs_deviation"] = max_deviation(cf, *reference);
    }
    return out.dump(2) + "\n";
}

std::string cf_to_csv(const charfun::ComplexGridFunction& cf,
                      const std::vector<cplx>* reference) {
    std::string out =
        reference ? "t,re,im,ref_re,ref_im\n" : "t,re,im\n";
    for (size_t i = 0; i < cf.grid.size(); ++i) {
        out += fmt17(cf.grid[i]) + "," + fmt17(cf.values[i].real()) + "," +
               fmt17(cf.values[i].imag());
        if (reference)
            out += "," + fmt17((*reference)[i].real()) + "," +
                   fmt17((*reference)[i].imag());
        out += "\n";
    }
    if (reference)
        out += "\nmax_abs_deviation," + fmt17(max_deviation(cf, *reference)) +
               "\n";
    return out;
}

std::string report_to_text(const verify::Report& report) {
    std::string out;
    for (const auto& c : report.checks)
        out += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name +
               "  computed=" + fmt17(c.computed) + " target=" +
               fmt17(c.target) + " tol=" + fmt17(c.tolerance) + "\n";
    out += std::string("overall: ") + (report.overall ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string report_to_json(const verify::Report& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"target", c.target},
                          {"computed", c.computed},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    json out{{"checks", checks}, {"overall", report.overall}};
    return out.dump(2) + "\n";
}

ObservableSpec load_matrix_file(
    const std::string& json_text,
    const std::optional<std::vector<double>>& vacuum_override) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("matrix file: ") + e.what());
    }
    if (!doc.contains("matrix") || !doc["matrix"].is_array())
        throw std::runtime_error("matrix file: missing \"matrix\" array");
    const auto& rows = doc["matrix"];
    const size_t n = rows.size();
    if (n == 0) throw std::runtime_error("matrix file: empty matrix");
    Eigen::MatrixXd m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::runtime_error("matrix file: matrix must be square");
        for (size_t j = 0; j < n; ++j) {
            if (!rows[i][j].is_number())
                throw std::runtime_error("matrix file: non-numeric entry");
            m(i, j) = rows[i][j].get<double>();
        }
    }
    std::vector<double> vac;
    if (vacuum_override) {
        vac = *vacuum_override;
    } else if (doc.contains("vacuum")) {
        if (!doc["vacuum"].is_array())
            throw std::runtime_error("matrix file: \"vacuum\" must be an array");
        for (const auto& v : doc["vacuum"]) {
            if (!v.is_number())
                throw std::runtime_error("matrix file: non-numeric vacuum entry");
            vac.push_back(v.get<double>());
        }
    } else {
        throw std::runtime_error(
            "matrix file: no \"vacuum\" entry and no --vacuum given");
    }
    if (vac.size() != n)
        throw std::runtime_error("matrix file: vacuum length mismatch");
    Eigen::VectorXd phi(n);
    for (size_t i = 0; i < n; ++i) phi(i) = vac[i];
    try {
        return ObservableSpec::finite(m, phi);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("matrix file: ") + e.what());
    }
}

}  // namespace spectra::io
