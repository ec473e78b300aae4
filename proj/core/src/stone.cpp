#include "spectra/stone.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "spectra/parallel.hpp"
#include "spectra/quadrature.hpp"
#include "spectra/resolvents.hpp"
#include "spectra/specfun.hpp"

namespace spectra::stone {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

double finite_pairing_imag(const ObservableSpec& spec, cplx z,
                           const NumericsConfig& cfg) {
    Eigen::MatrixXcd m = -spec.matrix.cast<cplx>();
    m.diagonal().array() += z;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    double scale = std::max(1.0, spec.matrix.cwiseAbs().maxCoeff());
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < cfg.sing_tol * scale)
        throw std::domain_error("stone: resolvent node too close to an eigenvalue");
    Eigen::VectorXcd x = lu.solve(spec.vacuum.cast<cplx>());
    return (spec.vacuum.cast<cplx>().dot(x)).imag();
}

// Per-epsilon cumulative CDF sampler over a fixed grid, with an
// arbitrary-point extension used by the atom refinement.
struct Smoothed {
    const ObservableSpec* spec;
    const NumericsConfig* cfg;
    double eps;
    std::vector<double> grid;
    std::vector<double> cumulative;  // F_eps at grid points

    double integrand(double t) const {
        return pairing_imag(*spec, t, eps, *cfg) / kPi;
    }
    double at(double lambda) const {
        // anchor at the nearest grid point at or below lambda
        auto it = std::upper_bound(grid.begin(), grid.end(), lambda);
        if (it == grid.begin())
            return cumulative.front() -
                   integrate([&](double t) { return integrand(t); }, lambda,
                             grid.front(), cfg->quad_tol);
        size_t i = static_cast<size_t>(it - grid.begin()) - 1;
        return cumulative[i] +
               integrate([&](double t) { return integrand(t); }, grid[i], lambda,
                         cfg->quad_tol);
    }
};

double extrapolate(double ea, double fa, double eb, double fb) {
    // linear model F_eps = F + c eps
    return (ea * fb - eb * fa) / (ea - eb);
}

struct Engine {
    const ObservableSpec& spec;
    const NumericsConfig& cfg;
    std::vector<Smoothed> layers;  // one per eps, ordered as eps_schedule

    double extrap_at(double lambda) const {
        size_t n = layers.size();
        if (n == 1) return layers[0].at(lambda);
        const auto& a = layers[n - 2];
        const auto& b = layers[n - 1];
        return extrapolate(a.eps, a.at(lambda), b.eps, b.at(lambda));
    }

    // Jump of the extrapolated CDF across [l, r] (pure increment, no anchors).
    double extrap_jump(double l, double r) const {
        size_t n = layers.size();
        auto inc = [&](const Smoothed& s) {
            return integrate([&](double t) { return s.integrand(t); }, l, r,
                             cfg.quad_tol);
        };
        if (n == 1) return inc(layers[0]);
        const auto& a = layers[n - 2];
        const auto& b = layers[n - 1];
        return extrapolate(a.eps, inc(a), b.eps, inc(b));
    }

    // Mass and centroid over [loc-delta, loc+delta] measured with a
    // dedicated small-eps pair; the global schedule smears atoms too wide
    // for a narrow window.  The centroid pins the atom location far better
    // than bisection on the smoothed CDF.
    Atom local_atom(double loc, double delta, double e1, double e2) const {
        auto moments = [&](double eps, double& m0, double& m1) {
            m0 = integrate(
                [&](double t) { return pairing_imag(spec, t, eps, cfg) / kPi; },
                loc - delta, loc + delta, cfg.quad_tol, 56);
            m1 = integrate(
                [&](double t) {
                    return (t - loc) * pairing_imag(spec, t, eps, cfg) / kPi;
                },
                loc - delta, loc + delta, cfg.quad_tol, 56);
        };
        double a0, a1, b0, b1;
        moments(e1, a0, a1);
        moments(e2, b0, b1);
        double mass = extrapolate(e1, a0, e2, b0);
        double shift = extrapolate(e1, a1, e2, b1);
        if (mass <= 0.0) return {loc, 0.0};
        return {loc + shift / mass, mass};
    }

    // Contracting centroid iteration from a coarse seed.  The final narrow
    // window both pins the location to ~1e-8 and rejects candidates whose
    // cell jump was plain absolutely-continuous mass (which contributes
    // only ~4e-4 of the local density to the final window).
    Atom refine_atom(double seed) const {
        double loc = seed;
        Atom a{seed, 0.0};
        for (double d : {3e-2, 6e-3, 1.2e-3, 2.4e-4, 2e-4}) {
            double e1 = std::max(d / 200.0, 1e-6);
            a = local_atom(loc, d, e1, 0.5 * e1);
            if (a.mass <= 0.0) return {loc, 0.0};
            loc = a.location;
        }
        return a;
    }
};

}  // namespace

double pairing_imag(const ObservableSpec& spec, double t, double eps,
                    const NumericsConfig& cfg) {
    const cplx z{t, -eps};
    switch (spec.kind) {
        case ObservableKind::FiniteMatrix:
            return finite_pairing_imag(spec, z, cfg);
        case ObservableKind::AntiCommutator:
            return resolvents::vacuum_resolvent_anticommutator_closed(z).imag();
        case ObservableKind::OscillatorHamiltonian:
            return eps / ((t - 0.5) * (t - 0.5) + eps * eps);
    }
    throw std::logic_error("unknown observable kind");
}

SpectralCDF stone_cdf(const ObservableSpec& spec, std::vector<double> grid,
                      const NumericsConfig& cfg) {
    cfg.validate();
    if (grid.size() < 2) throw std::invalid_argument("stone_cdf: grid too small");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("stone_cdf: grid must be ascending");

    // Spot cross-check of the anti-commutator pairing routes before the
    // closed form is trusted across thousands of nodes.
    if (spec.kind == ObservableKind::AntiCommutator) {
        const double eps = cfg.eps_schedule.back();
        for (double t : {grid.front(), 0.5 * (grid.front() + grid.back()), grid.back()})
            resolvents::vacuum_resolvent_anticommutator(cplx(t, -eps), cfg);
    }

    Engine engine{spec, cfg, {}};
    const size_t ne = cfg.eps_schedule.size();

    auto compute_layers = [&](const std::vector<double>& g) {
        engine.layers.assign(ne, {});
        for (size_t k = 0; k < ne; ++k) {
            engine.layers[k].spec = &spec;
            engine.layers[k].cfg = &cfg;
            engine.layers[k].eps = cfg.eps_schedule[k];
            engine.layers[k].grid = g;
            engine.layers[k].cumulative.assign(g.size(), 0.0);
        }
        // Independent tasks: base segment plus each cell, for each layer.
        const size_t cells = g.size();  // cell 0 = [-t_cutoff, g0]
        std::vector<std::vector<double>> inc(ne, std::vector<double>(cells, 0.0));
        parallel_for(ne * cells, [&](size_t task) {
            size_t k = task / cells, c = task % cells;
            const Smoothed& layer = engine.layers[k];
            double lo = (c == 0) ? -cfg.t_cutoff : g[c - 1];
            double hi = g[c];
            inc[k][c] = integrate([&](double t) { return layer.integrand(t); },
                                  lo, hi, cfg.quad_tol, 48);
        });
        for (size_t k = 0; k < ne; ++k) {
            double run = 0.0;
            for (size_t c = 0; c < cells; ++c) {
                run += inc[k][c];
                engine.layers[k].cumulative[c] = run;
            }
        }
    };

    compute_layers(grid);

    // Refinement: split cells whose extrapolated jump exceeds the atom
    // threshold so the atom scan sees localized cells.
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double> refined;
        bool changed = false;
        const auto& a = engine.layers[ne >= 2 ? ne - 2 : 0].cumulative;
        const auto& b = engine.layers[ne - 1].cumulative;
        const double ea = cfg.eps_schedule[ne >= 2 ? ne - 2 : 0];
        const double eb = cfg.eps_schedule[ne - 1];
        auto extr = [&](size_t i) {
            return ne >= 2 ? extrapolate(ea, a[i], eb, b[i]) : b[i];
        };
        auto jump_at = [&](size_t i) {
            return i + 1 < grid.size() ? std::abs(extr(i + 1) - extr(i)) : 0.0;
        };
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            refined.push_back(grid[i]);
            double jump = jump_at(i);
            double nb = std::min(i > 0 ? jump_at(i - 1) : 0.0, jump_at(i + 1));
            if (jump > 0.4 * cfg.atom_jump_tol && jump > 1.5 * nb &&
                grid[i + 1] - grid[i] > 2e-2) {
                refined.push_back(0.5 * (grid[i] + grid[i + 1]));
                changed = true;
            }
        }
        refined.push_back(grid.back());
        if (!changed) break;
        grid = std::move(refined);
        compute_layers(grid);
    }

    SpectralCDF out;
    out.grid = grid;
    out.values.resize(grid.size());
    const auto& la = engine.layers[ne >= 2 ? ne - 2 : 0];
    const auto& lb = engine.layers[ne - 1];
    for (size_t i = 0; i < grid.size(); ++i)
        out.values[i] = ne >= 2 ? extrapolate(la.eps, la.cumulative[i], lb.eps,
                                              lb.cumulative[i])
                                : lb.cumulative[i];
    const std::vector<double> unsnapped = out.values;

    // Stability of the extrapolation: previous eps pair vs the final one.
    double spread = 0.0;
    if (ne >= 3) {
        const auto& lp = engine.layers[ne - 3];
        for (size_t i = 0; i < grid.size(); ++i) {
            double other = extrapolate(lp.eps, lp.cumulative[i], la.eps,
                                       la.cumulative[i]);
            spread = std::max(spread, std::abs(other - out.values[i]));
        }
    }

    // Atom scan.  A cell is a candidate when its jump clears the threshold
    // and stands out against its neighbors: a smooth density raises all
    // adjacent cells by comparable amounts, while an atom concentrates its
    // mass in at most two cells (two when it sits on a cell boundary).
    std::vector<Atom> atoms;
    auto cell_jump = [&](size_t c) {
        return c + 1 < grid.size() ? out.values[c + 1] - out.values[c] : 0.0;
    };
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        // 0.4x: an atom astride a cell boundary splits its jump in two,
        // and the larger share is at least half the mass.  The measured
        // mass, not the cell jump, makes the final accept decision.
        double jump = cell_jump(i);
        if (jump <= 0.4 * cfg.atom_jump_tol) continue;
        double nb_lo = i > 0 ? cell_jump(i - 1) : 0.0;
        double nb_hi = cell_jump(i + 1);
        if (jump <= 1.5 * std::min(nb_lo, nb_hi)) continue;

        // Bisection to a coarse seed; the centroid iteration does the rest.
        double lo = grid[i], hi = grid[i + 1];
        double target = 0.5 * (out.values[i] + out.values[i + 1]);
        double fl = out.values[i];
        while (hi - lo > 2e-3) {
            double mid = 0.5 * (lo + hi);
            double fm = fl + engine.extrap_jump(lo, mid);
            if (fm < target) {
                lo = mid;
                fl = fm;
            } else {
                hi = mid;
            }
        }
        Atom atom = engine.refine_atom(0.5 * (lo + hi));
        if (atom.mass > cfg.atom_jump_tol) atoms.push_back(atom);
    }

    // Deduplicate detections from adjacent cells sharing an atom.
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    std::vector<Atom> dedup;
    for (const Atom& at : atoms) {
        if (!dedup.empty() && at.location - dedup.back().location < 1e-3)
            dedup.back().mass = std::max(dedup.back().mass, at.mass);
        else
            dedup.push_back(at);
    }

    // Deconvolve the measured atoms: the eps-smoothed step and its linear
    // eps extrapolation are known in closed form, so their deviation from
    // the true unit step (an O(eps_a eps_b (eps_a+eps_b) / d^3) tail) can
    // be subtracted exactly.  For purely Lorentzian pairings (finite
    // matrices, the oscillator) this removes the extrapolation bias down
    // to the atom measurement accuracy.
    auto smeared_step = [&](double d) {
        double fb = 0.5 + std::atan(d / lb.eps) / kPi;
        if (ne < 2) return fb;
        double fa = 0.5 + std::atan(d / la.eps) / kPi;
        return extrapolate(la.eps, fa, lb.eps, fb);
    };
    auto atom_tail = [&](double x) {
        double c = 0.0;
        for (const Atom& at : dedup) {
            double d = x - at.location;
            c += at.mass * (smeared_step(d) - (d >= 0.0 ? 1.0 : 0.0));
        }
        return c;
    };
    if (!dedup.empty())
        for (size_t i = 0; i < grid.size(); ++i)
            out.values[i] -= atom_tail(grid[i]);

    // Near-atom grid values are snapped to the extrapolated CDF at the
    // window edges: the eps-smoothing smears a jump across ~eps, and the
    // snap also realizes the right-continuity convention F(atom) >= mass.
    if (!dedup.empty()) {
        // The linear eps model leaves an O(eps^3 / d^3) bias at distance d
        // from an atom; 0.075 keeps the residual at the window edge under
        // 4e-4 for a unit mass with the default schedule.
        double w_base = std::max(5.0 * cfg.eps_schedule.back(), 0.075);
        for (size_t j = 0; j < dedup.size(); ++j) {
            double w = w_base;
            if (j > 0)
                w = std::min(w, 0.45 * (dedup[j].location - dedup[j - 1].location));
            if (j + 1 < dedup.size())
                w = std::min(w, 0.45 * (dedup[j + 1].location - dedup[j].location));
            double left = engine.extrap_at(dedup[j].location - w) -
                          atom_tail(dedup[j].location - w);
            double right = engine.extrap_at(dedup[j].location + w) -
                           atom_tail(dedup[j].location + w);
            for (size_t i = 0; i < grid.size(); ++i) {
                if (grid[i] < dedup[j].location - w || grid[i] > dedup[j].location + w)
                    continue;
                out.values[i] = (grid[i] >= dedup[j].location) ? right : left;
            }
        }
    }

    out.atoms = std::move(dedup);

    // Instability signal.  The linear eps model only holds where the CDF is
    // locally flat: atoms leave an O(eps^3/d^3) residue and a smooth density
    // an O(eps^2 f') one, both legitimate and reported via the budget.  The
    // throw is therefore restricted to points far from detected atoms whose
    // two-cell extrapolated jump is negligible.
    if (ne >= 3) {
        const double guard = 30.0 * cfg.eps_schedule[ne - 3];
        const double flat = 0.05 * cfg.atom_jump_tol;
        const auto& lp = engine.layers[ne - 3];
        for (size_t i = 0; i < grid.size(); ++i) {
            bool near_atom = false;
            for (const Atom& at : out.atoms)
                if (std::abs(grid[i] - at.location) < guard) near_atom = true;
            if (near_atom) continue;
            size_t lo = i > 0 ? i - 1 : i;
            size_t hi = i + 1 < grid.size() ? i + 1 : i;
            if (unsnapped[hi] - unsnapped[lo] > flat) continue;
            double other = extrapolate(lp.eps, lp.cumulative[i], la.eps,
                                       la.cumulative[i]);
            if (std::abs(other - unsnapped[i]) > 10.0 * cfg.cross_check_tol)
                throw ConvergenceError("stone_cdf: eps extrapolation unstable");
        }
    }

    out.budget.extrapolation_spread = spread;
    out.budget.quad_tol = cfg.quad_tol;
    // Cauchy tail of the truncated lower endpoint.
    double dist = std::max(1.0, cfg.t_cutoff + grid.front());
    out.budget.tail_bound = cfg.eps_schedule.back() / (kPi * dist);
    return out;
}

double stone_cdf_matrix_exact(const ObservableSpec& spec, double lambda,
                              double eps) {
    if (spec.kind != ObservableKind::FiniteMatrix || spec.matrix.rows() != 3)
        throw std::invalid_argument("stone_cdf_matrix_exact: 3x3 Heisenberg only");
    Eigen::Matrix3d h;
    h << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    if ((spec.matrix - h).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("stone_cdf_matrix_exact: 3x3 Heisenberg only");
    if (eps <= 0.0) throw std::invalid_argument("stone_cdf_matrix_exact: eps > 0");
    double x = spec.vacuum.sum();
    double x2 = x * x;
    return (x2 * std::atan((lambda - 2.0) / eps) -
            (x2 - 3.0) * std::atan((lambda + 1.0) / eps)) /
               (3.0 * kPi) +
           0.5;
}

SpectralCDF eig_cdf_oracle(const ObservableSpec& spec,
                           const std::vector<double>& grid) {
    if (spec.kind != ObservableKind::FiniteMatrix)
        throw std::invalid_argument("eig_cdf_oracle: needs a FiniteMatrix spec");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_cdf_oracle: eigendecomposition failed");

    SpectralCDF out;
    out.grid = grid;
    const auto& vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        double mass = std::pow(spec.vacuum.dot(es.eigenvectors().col(i)), 2);
        if (!out.atoms.empty() &&
            vals(i) - out.atoms.back().location < 1e-9)  // degenerate cluster
            out.atoms.back().mass += mass;
        else
            out.atoms.push_back({vals(i), mass});
    }
    std::erase_if(out.atoms, [](const Atom& a) { return a.mass < 1e-14; });
    out.values.reserve(grid.size());
    for (double lambda : grid) {
        double f = 0.0;
        for (const Atom& a : out.atoms)
            if (a.location <= lambda) f += a.mass;
        out.values.push_back(f);
    }
    return out;
}

double anticommutator_cdf_closed(double lambda, const SeriesControl& ctl,
                                 const NumericsConfig& cfg) {
    auto density = [&](double t) {
        cplx bm = specfun::incomplete_beta(-1.0, 0.25 * cplx(1.0, -t), 0.5, ctl);
        cplx bp = specfun::incomplete_beta(-1.0, 0.25 * cplx(1.0, t), 0.5, ctl);
        cplx val = (1.0 - kI) / (8.0 * kPi) *
                   (std::exp(-kPi * t / 4.0) * bm + std::exp(kPi * t / 4.0) * bp);
        if (std::abs(val.imag()) > 1e-10)
            throw ConvergenceError("anticommutator_cdf_closed: density not real");
        return val.real();
    };
    return integrate(density, -cfg.t_cutoff, lambda, cfg.quad_tol, 48);
}

}  // namespace spectra::stone
