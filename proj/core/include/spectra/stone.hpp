#pragma once

#include <vector>

#include "spectra/observable.hpp"

namespace spectra::stone {

struct Atom {
    double location;
    double mass;
};

struct ErrorBudget {
    double tail_bound = 0.0;            // Cauchy tail of the -infinity truncation
    double extrapolation_spread = 0.0;  // disagreement of successive extrapolants
    double quad_tol = 0.0;
};

/// Sampled vacuum CDF lambda -> <Phi, E_lambda Phi> plus detected atoms.
struct SpectralCDF {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<Atom> atoms;
    ErrorBudget budget;
};

/// Im <Phi, R(t - i eps)Phi> for the given observable (hot path used by the
/// Stone engine; closed/rational resolvent pairings, no cross-checks).
double pairing_imag(const ObservableSpec& spec, double t, double eps,
                    const NumericsConfig& cfg);

/// Stone's-formula CDF: smoothed integrals over the eps schedule,
/// Richardson extrapolation in eps, atom detection with bisection
/// refinement and local small-eps mass measurement.  The returned grid may
/// contain refinement points inserted by the engine.
SpectralCDF stone_cdf(const ObservableSpec& spec, std::vector<double> grid,
                      const NumericsConfig& cfg = {});

/// Pre-limit closed form for the 3x3 Heisenberg observable:
/// (1/3pi)[x^2 arctan((l-2)/eps) - (x^2-3) arctan((l+1)/eps)] + 1/2,
/// x = sum of the vacuum components.  Oracle for stone_cdf.
double stone_cdf_matrix_exact(const ObservableSpec& spec, double lambda,
                              double eps);

/// Exact CDF of a finite symmetric observable from its eigendecomposition;
/// the independent oracle for the numerical Stone path.
SpectralCDF eig_cdf_oracle(const ObservableSpec& spec,
                           const std::vector<double>& grid);

/// The paper-form CDF of XP+PX: quadrature of the incomplete-Beta density
/// from -t_cutoff to lambda.
double anticommutator_cdf_closed(double lambda, const SeriesControl& ctl = {},
                                 const NumericsConfig& cfg = {});

}  // namespace spectra::stone
