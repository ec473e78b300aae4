#include "spectra/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "spectra/charfun.hpp"
#include "spectra/quadrature.hpp"
#include "spectra/resolvents.hpp"
#include "spectra/specfun.hpp"
#include "spectra/stone.hpp"

namespace spectra::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

void add(Report& r, std::string name, double computed, double target,
         double tol) {
    bool pass = std::abs(computed - target) <= tol;
    r.checks.push_back({std::move(name), target, computed, tol, pass});
    r.overall = r.overall && pass;
}

// Sign check: passes iff computed > 0.
void add_positive(Report& r, std::string name, double computed) {
    bool pass = computed > 0.0;
    r.checks.push_back({std::move(name), 0.0, computed, 0.0, pass});
    r.overall = r.overall && pass;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = a + (b - a) * i / static_cast<double>(n - 1);
    return g;
}

double cdf_value_at(const stone::SpectralCDF& cdf, double lambda) {
    for (size_t i = 0; i < cdf.grid.size(); ++i)
        if (std::abs(cdf.grid[i] - lambda) < 1e-9) return cdf.values[i];
    throw std::logic_error("cdf_value_at: lambda not on the grid");
}

cplx random_cplx(std::mt19937& rng, double re_lo, double re_hi, double im_lo,
                 double im_hi) {
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(im_lo, im_hi);
    double x = re(rng);
    double y = im(rng);
    return {x, y};
}

TestFunction gaussian_test_fn() {
    return {[](double s) { return cplx(std::exp(-s * s), 0.0); }, 6.2};
}

cplx heisenberg_cf_closed(double x, double t) {
    double p = x * x / 3.0;
    return (1.0 - p) * std::exp(-kI * t) + p * std::exp(2.0 * kI * t);
}

}  // namespace

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    overall = overall && other.overall;
}

Report verify_specfun() {
    Report r;
    SeriesControl ctl;

    {
        std::mt19937 rng(11);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            cplx x = random_cplx(rng, -3.0, 3.0, -3.0, 3.0);
            for (int n = 0; n <= 30; ++n) {
                cplx lhs = specfun::pochhammer(x, n + 1);
                cplx rhs = specfun::pochhammer(x, n) * (x + cplx(n, 0.0));
                double scale = std::max(1.0, std::abs(rhs));
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
        }
        add(r, "pochhammer recurrence, relative residual", worst, 0.0, 1e-14);
    }

    {
        // sum_k S(n,k) m_(k) = m^n with m_(k) the falling factorial.
        std::uint64_t worst = 0;
        for (int n = 0; n <= 8; ++n)
            for (std::uint64_t m = 0; m <= 8; ++m) {
                std::uint64_t lhs = 0;
                for (int k = 0; k <= n; ++k) {
                    std::uint64_t fall = 1;
                    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(k);
                         ++j)
                        fall *= m - j > m ? 0 : m - j;  // 0 once j >= m
                    if (static_cast<std::uint64_t>(k) > m) fall = 0;
                    lhs += specfun::stirling2(n, k) * fall;
                }
                std::uint64_t rhs = 1;
                for (int j = 0; j < n; ++j) rhs *= m;
                worst = std::max(worst,
                                 lhs > rhs ? lhs - rhs : rhs - lhs);
            }
        add(r, "stirling2 row sums (exact)", static_cast<double>(worst), 0.0,
            0.5);
    }

    {
        double worst = 0.0;
        for (double t : {-0.5, -0.1, 0.0, 0.1, 0.5})
            for (int k = 0; k <= 6; ++k) {
                double closed = std::pow(std::expm1(2.0 * t), k);
                for (int j = 2; j <= k; ++j) closed /= j;
                worst = std::max(worst,
                                 std::abs(specfun::stirling_egf(t, k, ctl) -
                                          closed));
            }
        add(r, "stirling egf vs closed form", worst, 0.0, 1e-10);
    }

    {
        double worst = 0.0;
        for (double th = 0.0; th < 6.28; th += 0.7)
            for (double rad : {0.3, 0.8, 1.0}) {
                cplx z = rad * std::exp(kI * th);
                worst = std::max(
                    worst, std::abs(specfun::incomplete_beta(z, 1.0, 1.0, ctl) -
                                    z));
            }
        add(r, "incomplete_beta(z,1,1) = z", worst, 0.0, 1e-14);
    }

    {
        std::mt19937 rng(23);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            cplx a = random_cplx(rng, 0.15, 2.0, -1.0, 1.0);
            cplx b = random_cplx(rng, -1.5, 1.5, -1.5, 1.5);
            std::uniform_real_distribution<double> rad(0.1, 0.9), th(0.0, 2 * kPi);
            cplx z = rad(rng) * std::exp(kI * th(rng));
            worst = std::max(worst,
                             specfun::beta_2f1_identity_residual(a, b, z, ctl));
        }
        add(r, "beta/2F1 identity, random interior points", worst, 0.0, 1e-10);
    }

    {
        double worst = 0.0;
        for (double t : linspace(-5.0, 5.0, 21))
            for (double sign : {-1.0, 1.0}) {
                cplx a = 0.25 * cplx(1.0, sign * t);
                worst = std::max(worst, specfun::beta_2f1_identity_residual(
                                            a, 0.5, -1.0, ctl));
            }
        add(r, "beta/2F1 identity at z = -1 boundary", worst, 0.0, 1e-10);
    }

    {
        // z w'' + (c - z) w' - a w = 0 by central differences.
        const cplx a{0.3, 0.2}, c{1.1, 0.0};
        const double h = 1e-4;
        double worst = 0.0;
        for (int j = 1; j <= 10; ++j) {
            cplx z = 0.03 * j * cplx(1.0, 0.3);
            cplx wm = specfun::kummer_1f1(a, c, z - h, ctl);
            cplx w0 = specfun::kummer_1f1(a, c, z, ctl);
            cplx wp = specfun::kummer_1f1(a, c, z + h, ctl);
            cplx d1 = (wp - wm) / (2.0 * h);
            cplx d2 = (wp - 2.0 * w0 + wm) / (h * h);
            worst = std::max(worst, std::abs(z * d2 + (c - z) * d1 - a * w0));
        }
        add(r, "kummer_1f1 ODE residual (h = 1e-4)", worst, 0.0, 1e-8);
    }

    return r;
}

Report verify_resolvents() {
    Report r;
    NumericsConfig tight;
    tight.quad_tol = 1e-12;
    const TestFunction g = gaussian_test_fn();
    const TestFunction phi = vacuum_state();

    {
        std::mt19937 rng(31);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            cplx a = random_cplx(rng, -2.0, 2.0, -0.9, 2.0);
            for (double s : {0.25, 0.5, 1.0, 2.0}) {
                cplx plus = resolvents::resolvent_anticommutator(a, g, s, tight);
                cplx minus =
                    resolvents::resolvent_anticommutator(a, g, -s, tight);
                worst = std::max(worst, std::abs(plus - minus));
            }
        }
        add(r, "anticommutator resolvent evenness for even g", worst, 0.0, 1e-8);
    }

    {
        // 2is G' + (a+i) G = g, derivative by central differences.
        std::mt19937 rng(37);
        const double h = 2e-4;
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            cplx a = random_cplx(rng, -1.5, 1.5, -0.8, 1.5);
            for (double s : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
                cplx gm = resolvents::resolvent_anticommutator(a, g, s - h, tight);
                cplx gp = resolvents::resolvent_anticommutator(a, g, s + h, tight);
                cplx g0 = resolvents::resolvent_anticommutator(a, g, s, tight);
                cplx d1 = (gp - gm) / (2.0 * h);
                cplx res = 2.0 * kI * s * d1 + (a + kI) * g0 - g.eval(s);
                worst = std::max(worst, std::abs(res));
            }
        }
        add(r, "anticommutator first-order ODE residual", worst, 0.0, 1e-6);
    }

    {
        // G'' - (s^2 - 2a) G = 2g, second derivative by a 5-point stencil
        // (G reaches ~10^2 at Re a = -1, so the plain 3-point h^2 G''''
        // truncation would swamp the tolerance).
        const double h = 1e-3;
        const cplx c1{0.3, 0.1}, c2{0.2, -0.1};
        double worst = 0.0;
        for (double t : {-1.0, 0.0, 0.5, 2.0}) {
            cplx a{t, -0.1};
            for (double s : {0.0, -0.5, 0.5, -1.0, 1.0}) {
                auto G = [&](double x) {
                    return resolvents::resolvent_oscillator(a, phi, x, c1, c2,
                                                            tight);
                };
                cplx d2 = (-G(s + 2 * h) + 16.0 * G(s + h) - 30.0 * G(s) +
                           16.0 * G(s - h) - G(s - 2 * h)) /
                          (12.0 * h * h);
                cplx res = d2 - (s * s - 2.0 * a) * G(s) - 2.0 * phi.eval(s);
                worst = std::max(worst, std::abs(res));
            }
        }
        add(r, "oscillator Weber ODE residual", worst, 0.0, 1e-5);
    }

    {
        const double h = 1e-5;
        const cplx a{0.3, 0.1};
        double worst = 0.0;
        for (double z : {0.5, 1.0, 2.0}) {
            cplx m1p = resolvents::weber_m1(z + h, a);
            cplx m1m = resolvents::weber_m1(z - h, a);
            cplx m2p = resolvents::weber_m2(z + h, a);
            cplx m2m = resolvents::weber_m2(z - h, a);
            cplx w = resolvents::weber_m1(z, a) * (m2p - m2m) / (2.0 * h) -
                     (m1p - m1m) / (2.0 * h) * resolvents::weber_m2(z, a);
            worst = std::max(worst, std::abs(w - 1.0));
        }
        add(r, "Weber pair Wronskian = 1", worst, 0.0, 1e-8);
    }

    {
        double worst = 0.0;
        for (double t : {-2.0, 0.3, 1.5})
            for (double eps : {0.05, 0.3}) {
                cplx z{t, -eps};
                cplx ac =
                    resolvents::vacuum_resolvent_anticommutator_closed(z);
                cplx ac_conj =
                    resolvents::vacuum_resolvent_anticommutator_closed(
                        std::conj(z));
                worst = std::max(worst, std::abs(ac_conj - std::conj(ac)));
                cplx os = resolvents::vacuum_resolvent_oscillator(z);
                cplx os_conj =
                    resolvents::vacuum_resolvent_oscillator(std::conj(z));
                worst = std::max(worst, std::abs(os_conj - std::conj(os)));
            }
        add(r, "vacuum pairing conjugate symmetry", worst, 0.0, 1e-10);
    }

    {
        std::mt19937 rng(41);
        std::normal_distribution<double> nd(0.0, 1.0);
        Eigen::Matrix4d m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = nd(rng);
        Eigen::Matrix4d sym = 0.5 * (m + m.transpose());
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) v(i) = nd(rng);
        v.normalize();
        auto fin = ObservableSpec::finite(sym, v);

        double min_im = 1e300;
        NumericsConfig cfg;
        for (double t : linspace(-5.0, 5.0, 21))
            for (double eps : {1e-2, 1e-1}) {
                cplx z{t, -eps};
                min_im = std::min(
                    min_im,
                    resolvents::vacuum_resolvent_anticommutator_closed(z).imag());
                min_im = std::min(
                    min_im, resolvents::vacuum_resolvent_oscillator(z).imag());
                min_im = std::min(min_im, stone::pairing_imag(fin, t, eps, cfg));
            }
        add_positive(r, "Herglotz sign of Im<Phi,R(t-i eps)Phi>", min_im);
    }

    {
        std::mt19937 rng(43);
        std::normal_distribution<double> nd(0.0, 1.0);
        double worst = 0.0;
        for (int n : {3, 5})
            for (int trial = 0; trial < 3; ++trial) {
                Eigen::MatrixXd m(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
                Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
                Eigen::VectorXd v(n);
                for (int i = 0; i < n; ++i) v(i) = nd(rng);
                v.normalize();
                auto spec = ObservableSpec::finite(sym, v);
                cplx z = random_cplx(rng, -2.0, 2.0, 0.1, 1.0);
                Eigen::MatrixXcd res = resolvents::finite_resolvent(spec, z);
                Eigen::MatrixXcd lhs =
                    (z * Eigen::MatrixXcd::Identity(n, n) - sym.cast<cplx>()) *
                        res -
                    Eigen::MatrixXcd::Identity(n, n);
                worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
            }
        add(r, "finite resolvent residual |(z-H)R - I|", worst, 0.0, 1e-12);
    }

    {
        TestFunction xphi = {[](double x) {
                                 return cplx(x * std::pow(kPi, -0.25) *
                                                 std::exp(-0.5 * x * x),
                                             0.0);
                             },
                             9.0};
        TestFunction x2phi = {[](double x) {
                                  return cplx(x * x * std::pow(kPi, -0.25) *
                                                  std::exp(-0.5 * x * x),
                                              0.0);
                              },
                              9.3};
        NumericsConfig cfg;
        double worst = 0.0;
        worst = std::max(worst, resolvents::symmetry_check(
                                    ObservableSpec::anticommutator(), phi, phi,
                                    cfg));
        worst = std::max(worst, resolvents::symmetry_check(
                                    ObservableSpec::anticommutator(), phi,
                                    xphi, cfg));
        worst = std::max(worst, resolvents::symmetry_check(
                                    ObservableSpec::oscillator(), phi, x2phi,
                                    cfg));
        add(r, "symmetry |<Tf,g> - <f,Tg>|", worst, 0.0, 1e-8);
    }

    {
        // Vacuum anticommutator pairing: Poisson smoothing of the density at
        // the origin, and the quadrature/closed-form reconciliation.
        NumericsConfig cfg;
        cplx v = resolvents::vacuum_resolvent_anticommutator(cplx(0.0, -1e-3),
                                                             cfg);
        double f0 = charfun::anticommutator_density(0.0);
        add(r, "vacuum AC pairing vs density at 0 (eps = 1e-3)",
            v.imag() / kPi, f0, 1e-3);
    }

    {
        // Oscillator vacuum pairing against a decay-fitted Weber solve.
        const cplx a{0.0, -0.1};
        NumericsConfig cfg;
        cfg.quad_tol = 1e-8;
        const double sb = 6.0, rt2 = std::sqrt(2.0);
        cplx i_plus = resolvents::resolvent_oscillator(a, phi, sb, 0.0, 0.0, cfg);
        cplx i_minus =
            resolvents::resolvent_oscillator(a, phi, -sb, 0.0, 0.0, cfg);
        Eigen::Matrix2cd m;
        m << resolvents::weber_m1(sb * rt2, a), resolvents::weber_m2(sb * rt2, a),
            resolvents::weber_m1(-sb * rt2, a),
            resolvents::weber_m2(-sb * rt2, a);
        Eigen::Vector2cd rhs;
        rhs << -i_plus, -i_minus;
        Eigen::Vector2cd c = m.partialPivLu().solve(rhs);
        cplx pairing = integrate(
            [&](double s) {
                return phi.eval(s) * resolvents::resolvent_oscillator(
                                         a, phi, s, c(0), c(1), cfg);
            },
            -sb, sb, 1e-6);
        cplx expect = resolvents::vacuum_resolvent_oscillator(a);
        add(r, "oscillator vacuum pairing vs decay-fitted Weber solve",
            std::abs(pairing - expect), 0.0, 1e-4);
    }

    return r;
}

Report verify_stone() {
    Report r;
    NumericsConfig cfg;

    {
        auto grid = linspace(-1.0, 2.0, 61);
        for (double tail : {5.0, 10.0, 20.0, 40.0}) grid.push_back(tail);
        auto cdf = stone::stone_cdf(ObservableSpec::oscillator(), grid, cfg);

        double min_inc = 0.0, lo = 0.0, hi = 0.0;
        for (size_t i = 0; i + 1 < cdf.values.size(); ++i)
            min_inc = std::min(min_inc, cdf.values[i + 1] - cdf.values[i]);
        for (double v : cdf.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v - 1.0);
        }
        add(r, "oscillator CDF monotone (worst decrement)", min_inc, 0.0, 1e-9);
        add(r, "oscillator CDF range within [0,1]", std::max(-lo, hi), 0.0,
            1e-9);
        add(r, "oscillator CDF normalization at cutoff", cdf.values.back(), 1.0,
            1e-3);
        add(r, "oscillator atom count", static_cast<double>(cdf.atoms.size()),
            1.0, 0.5);
        if (!cdf.atoms.empty()) {
            add(r, "oscillator atom location", cdf.atoms[0].location, 0.5, 1e-3);
            add(r, "oscillator atom mass", cdf.atoms[0].mass, 1.0, 1e-3);
        }
        double worst = 0.0;
        for (size_t i = 0; i < cdf.grid.size(); ++i) {
            if (cdf.grid[i] > 0.45 && cdf.grid[i] < 0.55) continue;
            double step = cdf.grid[i] < 0.5 ? 0.0 : 1.0;
            worst = std::max(worst, std::abs(cdf.values[i] - step));
        }
        add(r, "oscillator CDF vs unit step away from the atom", worst, 0.0,
            1e-3);
    }

    {
        Eigen::Vector3d phi(1.0, 0.0, 0.0);
        auto spec = ObservableSpec::heisenberg(phi);
        auto grid = linspace(-3.0, 3.0, 25);
        grid.push_back(40.0);
        auto cdf = stone::stone_cdf(spec, grid, cfg);

        size_t ne = cfg.eps_schedule.size();
        double ea = cfg.eps_schedule[ne - 2], eb = cfg.eps_schedule[ne - 1];
        double worst = 0.0;
        for (double lam : {-2.0, 0.0, 1.0, 3.0}) {
            double fa = stone::stone_cdf_matrix_exact(spec, lam, ea);
            double fb = stone::stone_cdf_matrix_exact(spec, lam, eb);
            double exact = (ea * fb - eb * fa) / (ea - eb);
            worst = std::max(worst, std::abs(cdf_value_at(cdf, lam) - exact));
        }
        add(r, "Heisenberg CDF vs extrapolated arctan form", worst, 0.0, 1e-6);

        add(r, "Heisenberg atom count", static_cast<double>(cdf.atoms.size()),
            2.0, 0.5);
        if (cdf.atoms.size() == 2) {
            add(r, "Heisenberg atom at -1, location", cdf.atoms[0].location,
                -1.0, 1e-3);
            add(r, "Heisenberg atom at -1, mass", cdf.atoms[0].mass, 2.0 / 3.0,
                1e-3);
            add(r, "Heisenberg atom at 2, location", cdf.atoms[1].location, 2.0,
                1e-3);
            add(r, "Heisenberg atom at 2, mass", cdf.atoms[1].mass, 1.0 / 3.0,
                1e-3);
        }
        add(r, "right continuity: F(-1) includes the atom mass",
            cdf_value_at(cdf, -1.0), 2.0 / 3.0, 1e-3);
        add(r, "Heisenberg normalization at cutoff", cdf.values.back(), 1.0,
            1e-3);

        double x = phi.sum();
        add(r, "arctan form at lambda = 1e6",
            stone::stone_cdf_matrix_exact(spec, 1e6, 1e-3), 1.0, 1e-6);
        add(r, "arctan form at lambda = -5",
            stone::stone_cdf_matrix_exact(spec, -5.0, 1e-4), 0.0, 1e-4);
        double fa = stone::stone_cdf_matrix_exact(spec, 0.5, ea);
        double fb = stone::stone_cdf_matrix_exact(spec, 0.5, eb);
        add(r, "arctan form extrapolated at lambda = 0.5",
            (ea * fb - eb * fa) / (ea - eb), 1.0 - x * x / 3.0, 1e-6);
    }

    {
        // Random symmetric matrices against the eigendecomposition oracle.
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> entry(-1.5, 1.5);
        std::normal_distribution<double> nd(0.0, 1.0);
        double worst_val = 0.0, worst_atom = 0.0;
        bool atoms_ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            int n = 2 + trial % 5;
            Eigen::MatrixXd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = entry(rng);
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = nd(rng);
            v.normalize();
            auto spec = ObservableSpec::finite(m, v);

            double radius = m.cwiseAbs().rowwise().sum().maxCoeff() + 0.5;
            int pts = static_cast<int>(std::ceil(2.0 * radius / 0.1)) + 1;
            auto grid = linspace(-radius, radius, pts);
            auto cdf = stone::stone_cdf(spec, grid, cfg);
            auto oracle = stone::eig_cdf_oracle(spec, grid);

            for (size_t i = 0; i < cdf.grid.size(); ++i) {
                double dist = 1e300;
                for (const auto& at : oracle.atoms)
                    dist = std::min(dist, std::abs(cdf.grid[i] - at.location));
                if (dist <= 0.05) continue;
                double f_oracle = 0.0;
                for (const auto& at : oracle.atoms)
                    if (at.location <= cdf.grid[i]) f_oracle += at.mass;
                worst_val =
                    std::max(worst_val, std::abs(cdf.values[i] - f_oracle));
            }
            for (const auto& at : oracle.atoms) {
                if (at.mass <= cfg.atom_jump_tol) continue;
                double best = 1e300, best_mass = 0.0;
                for (const auto& det : cdf.atoms)
                    if (std::abs(det.location - at.location) < best) {
                        best = std::abs(det.location - at.location);
                        best_mass = det.mass;
                    }
                if (best > 1e-3) atoms_ok = false;
                worst_atom = std::max(worst_atom,
                                      std::abs(best_mass - at.mass));
            }
            for (const auto& det : cdf.atoms) {
                double best = 1e300;
                for (const auto& at : oracle.atoms)
                    best = std::min(best, std::abs(det.location - at.location));
                if (best > 1e-3) atoms_ok = false;
            }
        }
        add(r, "random matrices: CDF vs eig oracle away from eigenvalues",
            worst_val, 0.0, 1e-3);
        add(r, "random matrices: atom mass agreement", worst_atom, 0.0, 1e-3);
        add_positive(r, "random matrices: atom locations matched (1 = yes)",
                     atoms_ok ? 1.0 : -1.0);
    }

    {
        std::vector<double> grid = {-5.0, -3.0, -1.0, 0.0, 1.0, 3.0, 5.0, 40.0};
        auto cdf = stone::stone_cdf(ObservableSpec::anticommutator(), grid, cfg);
        double worst = 0.0;
        for (double lam : {-3.0, -1.0, 0.0, 1.0, 3.0})
            worst = std::max(worst,
                             std::abs(cdf_value_at(cdf, lam) -
                                      stone::anticommutator_cdf_closed(lam)));
        add(r, "anticommutator CDF, Stone vs closed density route", worst, 0.0,
            2e-3);
        add(r, "anticommutator normalization at cutoff", cdf.values.back(), 1.0,
            1e-3);
        add(r, "anticommutator atom count",
            static_cast<double>(cdf.atoms.size()), 0.0, 0.5);
    }

    {
        add(r, "closed anticommutator CDF at 0",
            stone::anticommutator_cdf_closed(0.0), 0.5, 1e-8);
        add(r, "closed anticommutator CDF at cutoff",
            stone::anticommutator_cdf_closed(40.0), 1.0, 1e-6);
    }

    {
        Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
        Eigen::Vector3d v(0.6, 0.8, 0.0);
        auto oracle =
            stone::eig_cdf_oracle(ObservableSpec::finite(id, v), {0.0, 2.0});
        bool ok = oracle.atoms.size() == 1 &&
                  std::abs(oracle.atoms[0].location - 1.0) < 1e-12 &&
                  std::abs(oracle.atoms[0].mass - 1.0) < 1e-12;
        add_positive(r, "eig oracle on the identity matrix (1 = yes)",
                     ok ? 1.0 : -1.0);
    }

    return r;
}

Report verify_charfun() {
    Report r;
    NumericsConfig cfg;
    SeriesControl ctl;
    const std::vector<double> t_set = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};

    {
        double worst_gauss = 0.0, worst_series = 0.0;
        for (double t : t_set) {
            double ref = charfun::cf_anticommutator_reference(t);
            worst_gauss = std::max(
                worst_gauss,
                std::abs(charfun::cf_anticommutator_gaussian_route(t, cfg) -
                         ref));
            worst_series = std::max(
                worst_series,
                std::abs(charfun::cf_anticommutator_series(t, ctl) - ref));
        }
        add(r, "anticommutator CF: Gaussian route vs closed form", worst_gauss,
            0.0, 1e-6);
        add(r, "anticommutator CF: series route vs closed form", worst_series,
            0.0, 1e-8);
    }

    {
        SeriesControl relaxed;
        relaxed.max_terms = 5000;
        add(r, "anticommutator CF series at t = 0.01",
            charfun::cf_anticommutator_series(0.01, relaxed),
            charfun::cf_anticommutator_reference(0.01), 1e-6);
    }

    {
        // Stone route: CDF -> measure -> CF.
        auto grid = linspace(-12.0, 12.0, 241);
        grid.insert(grid.begin(), -40.0);
        grid.push_back(40.0);
        auto cdf = stone::stone_cdf(ObservableSpec::anticommutator(), grid, cfg);
        auto measure = charfun::measure_from_cdf(cdf);
        auto cf = charfun::cf_from_measure(measure, t_set, cfg);
        double worst = 0.0;
        for (size_t i = 0; i < t_set.size(); ++i)
            worst = std::max(
                worst, std::abs(cf.values[i] -
                                charfun::cf_anticommutator_reference(t_set[i])));
        add(r, "anticommutator CF: Stone route vs closed form", worst, 0.0,
            2e-3);

        // Hermitian symmetry of the same route (t_set is +/- symmetric).
        double worst_h = 0.0;
        for (size_t i = 0; i < t_set.size(); ++i)
            for (size_t j = 0; j < t_set.size(); ++j)
                if (std::abs(t_set[i] + t_set[j]) < 1e-15)
                    worst_h = std::max(worst_h,
                                       std::abs(cf.values[i] -
                                                std::conj(cf.values[j])));
        add(r, "Stone-route CF Hermitian symmetry", worst_h, 0.0, 1e-10);
    }

    {
        // CF of exact atomic measures: modulus bound and phi(0) = 1.
        charfun::SpectralMeasure bern;
        bern.atoms = {{-1.0, 2.0 / 3.0}, {2.0, 1.0 / 3.0}};
        auto tg = linspace(-6.0, 6.0, 25);
        auto cf = charfun::cf_from_measure(bern, tg, cfg);
        double worst_mod = 0.0, at0 = 0.0, worst_h = 0.0;
        for (size_t i = 0; i < tg.size(); ++i) {
            worst_mod = std::max(worst_mod, std::abs(cf.values[i]) - 1.0);
            if (std::abs(tg[i]) < 1e-15) at0 = std::abs(cf.values[i] - 1.0);
            worst_h = std::max(
                worst_h,
                std::abs(cf.values[i] -
                         std::conj(cf.values[tg.size() - 1 - i])));
        }
        add(r, "atomic measure CF: |phi| <= 1", std::max(worst_mod, 0.0), 0.0,
            1e-9);
        add(r, "atomic measure CF: phi(0) = 1", at0, 0.0, 1e-9);
        add(r, "atomic measure CF: Hermitian symmetry", worst_h, 0.0, 1e-10);
    }

    {
        auto grid = linspace(-1.0, 2.0, 61);
        auto cdf = stone::stone_cdf(ObservableSpec::oscillator(), grid, cfg);
        auto measure = charfun::measure_from_cdf(cdf);
        auto tg = linspace(-4.0, 4.0, 17);
        auto cf = charfun::cf_from_measure(measure, tg, cfg);
        double worst = 0.0;
        for (size_t i = 0; i < tg.size(); ++i)
            worst = std::max(worst, std::abs(cf.values[i] -
                                             std::exp(0.5 * kI * tg[i])));
        add(r, "oscillator CF vs e^{it/2}", worst, 0.0, 1e-3);
    }

    {
        // Heisenberg CF for random vacua with both spectral masses present.
        std::mt19937 rng(53);
        std::normal_distribution<double> nd(0.0, 1.0);
        auto tg = linspace(-6.0, 6.0, 25);
        double worst = 0.0;
        int done = 0;
        while (done < 5) {
            Eigen::Vector3d v(nd(rng), nd(rng), nd(rng));
            v.normalize();
            double x = v.sum();
            double p = x * x / 3.0;
            if (p < 5e-3 || 1.0 - p < 5e-3) continue;  // below atom threshold
            ++done;
            auto spec = ObservableSpec::heisenberg(v);
            auto cdf = stone::stone_cdf(spec, linspace(-3.0, 3.0, 61), cfg);
            auto cf = charfun::cf_from_measure(charfun::measure_from_cdf(cdf),
                                               tg, cfg);
            for (size_t i = 0; i < tg.size(); ++i)
                worst = std::max(worst, std::abs(cf.values[i] -
                                                 heisenberg_cf_closed(x, tg[i])));
        }
        add(r, "Heisenberg CF vs Bernoulli closed form", worst, 0.0, 1e-6);
    }

    {
        const double radius = 50.0;
        double total = integrate([&](double lam) {
                           return charfun::anticommutator_density(lam);
                       },
                       -radius, radius, 1e-10, 48) +
                       charfun::anticommutator_density_tail_mass(radius);
        add(r, "anticommutator density integrates to 1", total, 1.0, 1e-6);

        double worst_even = 0.0, worst_neg = 0.0;
        for (double lam : {0.3, 1.0, 2.7, 5.0})
            worst_even = std::max(worst_even,
                                  std::abs(charfun::anticommutator_density(lam) -
                                           charfun::anticommutator_density(-lam)));
        for (double lam : linspace(-20.0, 20.0, 81))
            worst_neg = std::min(worst_neg,
                                 charfun::anticommutator_density(lam));
        add(r, "anticommutator density evenness", worst_even, 0.0, 1e-12);
        add(r, "anticommutator density nonnegative (worst value)", worst_neg,
            0.0, 1e-10);

        cplx ft = integrate_oscillatory(
            [&](double lam) {
                return std::exp(kI * lam) * charfun::anticommutator_density(lam);
            },
            -radius, radius, 1.0, 1e-10);
        add(r, "density Fourier transform at t = 1",
            std::abs(ft - cplx(charfun::cf_anticommutator_reference(1.0), 0.0)),
            0.0, 1e-5);
    }

    {
        // Closed form vs quadrature across admissible (alpha, beta, gamma).
        const double e2 = std::exp(2.0), e1 = std::exp(1.0);
        std::vector<std::array<cplx, 3>> triples = {
            {cplx(-0.5), cplx(-0.5), cplx(0.0)},
            {cplx(-0.5), cplx(-0.5), cplx(1.0)},
            {cplx(-0.5), cplx(-0.5), cplx(e1)},
            {cplx(-0.5), cplx(-0.5), cplx(e2)},
            {cplx(-1.0), cplx(-0.5), cplx(2.0)},
            {cplx(-0.5, 0.2), cplx(-0.4, -0.1), cplx(0.3)},
            {cplx(-0.8, -0.3), cplx(-0.6, 0.2), cplx(1.2, 0.0)},
            {cplx(-0.5), cplx(-0.7), cplx(0.5, 0.4)},
            {cplx(-0.3, 0.1), cplx(-0.9), cplx(1.5, -0.3)},
            {cplx(-2.0), cplx(-0.25), cplx(1.0, 0.5)},
        };
        double worst = 0.0;
        for (const auto& tr : triples) {
            auto out = charfun::gaussian_double_integral(tr[0], tr[1], tr[2],
                                                         cfg);
            worst = std::max(worst, std::abs(out.closed_form - out.quadrature));
        }
        add(r, "Gaussian double integral, closed form vs quadrature", worst,
            0.0, 1e-7);
        auto known = charfun::gaussian_double_integral(cplx(-0.5), cplx(-0.5),
                                                       cplx(2.0), cfg);
        add(r, "Gaussian double integral at the 2 pi / sqrt(5) point",
            std::abs(known.closed_form), 2.0 * kPi / std::sqrt(5.0), 1e-12);
        auto unit = charfun::gaussian_double_integral(cplx(-0.5), cplx(-0.5),
                                                      cplx(1.0), cfg);
        add(r, "Gaussian double integral at the 2 pi / sqrt(2) point",
            std::abs(unit.closed_form), 2.0 * kPi / std::sqrt(2.0), 1e-12);
    }

    return r;
}

Report verify_all() {
    Report r;
    r.merge(verify_specfun());
    r.merge(verify_resolvents());
    r.merge(verify_stone());
    r.merge(verify_charfun());
    return r;
}

Report run_suite(const std::string& suite) {
    if (suite == "specfun") return verify_specfun();
    if (suite == "resolvents") return verify_resolvents();
    if (suite == "stone") return verify_stone();
    if (suite == "charfun") return verify_charfun();
    if (suite == "all") return verify_all();
    throw std::invalid_argument("unknown verification suite: " + suite);
}

}  // namespace spectra::verify
