#include "spectra/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "spectra/quadrature.hpp"
#include "spectra/specfun.hpp"

namespace spectra::charfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

// (1/2)_n / n!, the binomial (1+x)^{-1/2} coefficient magnitude.
double half_poch_over_fact(int n, double& state, int& n_state) {
    for (; n_state < n; ++n_state)
        state *= (0.5 + n_state) / (n_state + 1.0);
    return state;
}

}  // namespace

ComplexGridFunction cf_from_measure(const SpectralMeasure& m,
                                    const std::vector<double>& t_grid,
                                    const NumericsConfig& cfg) {
    ComplexGridFunction out;
    out.grid = t_grid;
    out.values.reserve(t_grid.size());
    for (double t : t_grid) {
        cplx phi = 0.0;
        for (const auto& atom : m.atoms)
            phi += atom.mass * std::exp(kI * t * atom.location);
        if (m.has_density() && m.decay_radius > 0.0)
            phi += integrate_oscillatory(
                [&](double lam) { return std::exp(kI * t * lam) * m.density(lam); },
                -m.decay_radius, m.decay_radius, t, cfg.quad_tol);
        out.values.push_back(phi);
    }
    return out;
}

SpectralMeasure measure_from_cdf(const stone::SpectralCDF& cdf) {
    SpectralMeasure m;
    m.atoms = cdf.atoms;
    if (cdf.grid.size() < 2) return m;

    // Cell increments with atom jumps removed become midpoint density
    // samples; linear interpolation in between.
    auto mids = std::make_shared<std::vector<double>>();
    auto dens = std::make_shared<std::vector<double>>();
    double ac_total = 0.0;
    for (size_t i = 0; i + 1 < cdf.grid.size(); ++i) {
        double h = cdf.grid[i + 1] - cdf.grid[i];
        if (h <= 0.0) continue;
        double inc = cdf.values[i + 1] - cdf.values[i];
        for (const auto& atom : cdf.atoms)
            if (atom.location > cdf.grid[i] && atom.location <= cdf.grid[i + 1])
                inc -= atom.mass;
        inc = std::max(inc, 0.0);
        mids->push_back(0.5 * (cdf.grid[i] + cdf.grid[i + 1]));
        dens->push_back(inc / h);
        ac_total += inc;
    }
    if (ac_total < 1e-9) return m;  // purely atomic to working precision
    m.decay_radius = std::max(std::abs(cdf.grid.front()), std::abs(cdf.grid.back()));
    m.density = [mids, dens](double lam) {
        if (mids->empty() || lam <= mids->front() || lam >= mids->back()) return 0.0;
        auto it = std::upper_bound(mids->begin(), mids->end(), lam);
        size_t i = static_cast<size_t>(it - mids->begin());
        double x0 = (*mids)[i - 1], x1 = (*mids)[i];
        double w = (lam - x0) / (x1 - x0);
        return (1.0 - w) * (*dens)[i - 1] + w * (*dens)[i];
    };
    return m;
}

double cf_anticommutator_reference(double t) {
    double sech = 2.0 / (std::exp(2.0 * t) + std::exp(-2.0 * t));
    return std::sqrt(sech);
}

cplx cf_anticommutator_gaussian_route(double t, const NumericsConfig& cfg) {
    if (std::abs(t) > 3.0)
        throw std::domain_error(
            "cf_anticommutator_gaussian_route: calibrated for |t| <= 3");
    const double c = std::exp(2.0 * t);
    // After the inner Gaussian integral the outer integrand decays like
    // e^{-(1+c^2) x^2 / 2}; truncate both axes where the weight < 1e-17.
    const double ry = std::sqrt(2.0 * 39.0);
    const double rx = std::sqrt(2.0 * 39.0 / (1.0 + c * c));
    const double tol = std::min(cfg.quad_tol, 1e-9);
    auto inner = [&](double x) {
        return integrate(
            [&](double y) {
                return std::exp(cplx(-0.5 * y * y, c * x * y));
            },
            -ry, ry, 0.2 * tol);
    };
    cplx dbl = integrate(
        [&](double x) { return std::exp(-0.5 * x * x) * inner(x); }, -rx, rx,
        tol);
    return std::exp(t) / (kPi * std::sqrt(2.0)) * dbl;
}

GaussianDoubleIntegral gaussian_double_integral(cplx alpha, cplx beta,
                                                cplx gamma,
                                                const NumericsConfig& cfg) {
    if (beta.real() >= 0.0)
        throw std::domain_error("gaussian_double_integral: requires Re beta < 0");
    cplx crit = 4.0 * alpha + gamma * gamma / beta;
    if (crit.real() >= 0.0)
        throw std::domain_error(
            "gaussian_double_integral: requires Re(4 alpha + gamma^2/beta) < 0");

    // Branch tracking of sqrt(gamma^2 + 4 alpha beta) along s gamma, s: 0 -> 1,
    // seeded by the separable gamma = 0 value 2 sqrt(-alpha) sqrt(-beta).
    cplx root = 2.0 * std::sqrt(-alpha) * std::sqrt(-beta);
    int steps = 256;
    for (int attempt = 0; attempt < 5; ++attempt) {
        cplx r = root;
        bool ok = true;
        for (int i = 1; i <= steps; ++i) {
            double s = static_cast<double>(i) / steps;
            cplx w = gamma * gamma * s * s + 4.0 * alpha * beta;
            if (std::abs(w) < 1e-14 * (std::abs(gamma * gamma) + std::abs(4.0 * alpha * beta))) {
                ok = false;
                break;
            }
            cplx p = std::sqrt(w);
            cplx cand = (std::abs(p - r) <= std::abs(-p - r)) ? p : -p;
            if (std::abs(cand - r) > 0.5 * std::abs(r)) ok = false;
            r = cand;
        }
        if (ok) {
            root = r;
            break;
        }
        steps *= 4;
        if (attempt == 4)
            throw std::runtime_error(
                "gaussian_double_integral: branch continuity tracking failed");
    }
    cplx closed = 2.0 * kPi / root;

    // Direct nested quadrature.
    const double ry = std::sqrt(39.0 / -beta.real());
    const double rx = std::sqrt(4.0 * 39.0 / -crit.real());
    auto inner = [&](double x) {
        return integrate(
            [&](double y) {
                return std::exp(beta * y * y + kI * gamma * x * y);
            },
            -ry, ry, 0.2 * std::min(cfg.quad_tol, 1e-9));
    };
    cplx quad = integrate(
        [&](double x) { return std::exp(alpha * x * x) * inner(x); }, -rx, rx,
        std::min(cfg.quad_tol, 1e-9));

    if (std::abs(closed - quad) > 1e-7)
        throw RouteMismatchError(
            "gaussian_double_integral: closed form and quadrature disagree");
    return {closed, quad};
}

double cf_anticommutator_series(double t, const SeriesControl& ctl) {
    double at = std::abs(t);
    if (at < 1e-3)
        throw ConvergenceError(
            "cf_anticommutator_series: |t| < 1e-3 converges too slowly");
    const double x = std::exp(-4.0 * at);
    double state = 1.0;
    int n_state = 0;
    // sqrt(sech 2t) = sqrt(2) e^{-|t|} (1 + e^{-4|t|})^{-1/2}.
    double value = std::exp(-at) * std::sqrt(2.0) *
                   sum_series(
                       [&](int n) {
                           double c = half_poch_over_fact(n, state, n_state);
                           return c * std::pow(-x, n);
                       },
                       ctl);
    // Resummation check: the binomial closed form of the same series.
    double resummed = std::exp(-at) * std::sqrt(2.0) / std::sqrt(1.0 + x);
    if (std::abs(value - resummed) > std::max(1e-10, 1e3 * ctl.rel_tol))
        throw ConvergenceError("cf_anticommutator_series: summation check failed");
    return value;
}

double anticommutator_density(double lambda, const SeriesControl& ctl) {
    double state = 1.0;
    int n_state = 0;
    double v = std::sqrt(2.0) / kPi *
               alternating_sum(
                   [&, lambda](int n) {
                       double c = half_poch_over_fact(n, state, n_state);
                       double k = 4.0 * n + 1.0;
                       double sign = (n % 2 == 0) ? 1.0 : -1.0;
                       return sign * c * k / (k * k + lambda * lambda);
                   },
                   ctl);
    if (v < -1e-10)
        throw ConvergenceError("anticommutator_density: negative beyond slack");
    return std::max(v, 0.0);
}

double anticommutator_density_tail_mass(double radius,
                                        const SeriesControl& ctl) {
    double state = 1.0;
    int n_state = 0;
    return std::sqrt(2.0) / kPi *
           alternating_sum(
               [&, radius](int n) {
                   double c = half_poch_over_fact(n, state, n_state);
                   double k = 4.0 * n + 1.0;
                   double sign = (n % 2 == 0) ? 1.0 : -1.0;
                   return sign * c * (kPi - 2.0 * std::atan(radius / k));
               },
               ctl);
}

}  // namespace spectra::charfun
