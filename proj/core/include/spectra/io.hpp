#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectra/charfun.hpp"
#include "spectra/observable.hpp"
#include "spectra/stone.hpp"
#include "spectra/verify.hpp"

namespace spectra::io {

/// printf("%.17g") formatting used for all CSV and tabular output.
std::string fmt17(double x);

std::string cdf_to_json(const std::string& observable,
                        const NumericsConfig& cfg,
                        const stone::SpectralCDF& cdf);
std::string cdf_to_csv(const stone::SpectralCDF& cdf);

/// Optional reference values (preset closed forms) add deviation columns
/// and a max_abs_deviation field.
std::string cf_to_json(const std::string& observable, const NumericsConfig& cfg,
                       const charfun::ComplexGridFunction& cf,
                       const std::vector<cplx>* reference = nullptr);
std::string cf_to_csv(const charfun::ComplexGridFunction& cf,
                      const std::vector<cplx>* reference = nullptr);

std::string report_to_text(const verify::Report& report);
std::string report_to_json(const verify::Report& report);

/// Parses {"matrix": [[...]], "vacuum": [...]} ("vacuum" optional when
/// supplied separately) and validates symmetry/normalization via
/// ObservableSpec::finite.  Throws std::runtime_error on malformed input.
ObservableSpec load_matrix_file(const std::string& json_text,
                                const std::optional<std::vector<double>>&
                                    vacuum_override = std::nullopt);

}  // namespace spectra::io
