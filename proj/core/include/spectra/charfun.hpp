#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "spectra/observable.hpp"
#include "spectra/stone.hpp"

namespace spectra::charfun {

/// Complex-valued function sampled on a real grid.
struct ComplexGridFunction {
    std::vector<double> grid;
    std::vector<cplx> values;
};

/// Atoms plus an optional absolutely continuous density.
struct SpectralMeasure {
    std::vector<stone::Atom> atoms;
    std::function<double(double)> density;  // empty when purely atomic
    double decay_radius = 0.0;

    bool has_density() const { return static_cast<bool>(density); }
};

/// phi(t) = sum_j m_j e^{i t loc_j} + Int e^{i t lambda} density(lambda) dlambda.
ComplexGridFunction cf_from_measure(const SpectralMeasure& m,
                                    const std::vector<double>& t_grid,
                                    const NumericsConfig& cfg = {});

/// Measure extraction from a sampled CDF: atoms carried over, density from
/// cell increments with the atom jumps removed.
SpectralMeasure measure_from_cdf(const stone::SpectralCDF& cdf);

/// sqrt(sech 2t), the closed-form vacuum CF of XP+PX.
double cf_anticommutator_reference(double t);

/// The double-Gaussian route: (e^t / pi sqrt2) Int Int
/// e^{-(l^2+m^2)/2 + i l m e^{2t}}; nested adaptive quadrature.
/// Calibrated for |t| <= 3.
cplx cf_anticommutator_gaussian_route(double t, const NumericsConfig& cfg = {});

struct GaussianDoubleIntegral {
    cplx closed_form;
    cplx quadrature;
};

/// Int Int e^{alpha x^2 + beta y^2 + i gamma x y} dx dy = 2 pi /
/// sqrt(gamma^2 + 4 alpha beta), square-root branch tracked by continuity
/// from gamma = 0; the closed form is asserted against direct quadrature.
GaussianDoubleIntegral gaussian_double_integral(cplx alpha, cplx beta,
                                                cplx gamma,
                                                const NumericsConfig& cfg = {});

/// The Cauchy-kernel Fourier series route:
/// sqrt2 sum_n (1/2)_n (-1)^n e^{-(4n+1)|t|} / n!.  Requires |t| >= 1e-3.
double cf_anticommutator_series(double t, const SeriesControl& ctl = {});

/// Spectral density of XP+PX as a mixture of Cauchy kernels:
/// (sqrt2/pi) sum_n (1/2)_n (-1)^n (4n+1) / (n! ((4n+1)^2 + lambda^2)).
double anticommutator_density(double lambda, const SeriesControl& ctl = {});

/// Mass of the density beyond |lambda| > radius, summed analytically per
/// Cauchy term via the arctan antiderivative.
double anticommutator_density_tail_mass(double radius,
                                        const SeriesControl& ctl = {});

}  // namespace spectra::charfun
