#include "spectra/resolvents.hpp"

#include <cmath>

#include "spectra/quadrature.hpp"
#include "spectra/specfun.hpp"

namespace spectra::resolvents {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

// x^e for x > 0 with complex exponent, via the real logarithm.
cplx rpow(double x, cplx e) { return std::exp(e * std::log(x)); }

}  // namespace

cplx resolvent_anticommutator(cplx a, const TestFunction& g, double s,
                              const NumericsConfig& cfg) {
    if (a.imag() <= -1.0)
        throw std::domain_error("resolvent_anticommutator: requires Im a > -1");
    if (s == 0.0) return g.eval(0.0) / (a + kI);
    const double radius = std::max(8.0, g.decay_radius);
    // Exponents of the integrating-factor solution:
    //   s-prefactor  -(a+i)/(2i) = (ia-1)/2,  w-kernel  (a-i)/(2i) = -(1+ia)/2.
    const cplx es = 0.5 * (kI * a - 1.0);
    const cplx ew = -0.5 * (1.0 + kI * a);
    if (s > 0.0) {
        if (s >= radius) return cplx(0.0);
        cplx integral = integrate(
            [&](double w) { return rpow(w, ew) * g.eval(w); }, s, radius,
            cfg.quad_tol);
        return 0.5 * kI * rpow(s, es) * integral;
    }
    if (-s >= radius) return cplx(0.0);
    cplx integral = integrate(
        [&](double w) { return rpow(-w, ew) * g.eval(w); }, -radius, s,
        cfg.quad_tol);
    return 0.5 * kI * rpow(-s, es) * integral;
}

cplx vacuum_resolvent_anticommutator_closed(cplx z) {
    if (z.imag() == 0.0)
        throw std::domain_error("vacuum resolvent: z must be non-real");
    if (z.imag() > 0.0) return std::conj(vacuum_resolvent_anticommutator_closed(std::conj(z)));
    // For Im z < 0 the kernel double integral collapses to a single
    // hypergeometric term: <Phi,R Phi> = i sqrt2/(1+iz) 2F1(1/2,(1+iz)/4;(5+iz)/4;-1).
    const cplx u = 1.0 + kI * z;  // Re u = 1 + eps > 1
    SeriesControl ctl;
    return kI * std::sqrt(2.0) / u *
           specfun::gauss_2f1(0.5, 0.25 * u, 0.25 * u + 1.0, -1.0, ctl);
}

cplx vacuum_resolvent_anticommutator(cplx z, const NumericsConfig& cfg) {
    cplx closed = vacuum_resolvent_anticommutator_closed(z);
    if (cfg.cross_check_tol <= 0.0) return closed;
    if (z.imag() > 0.0) {
        // The quadrature route is set up in the lower half-plane; reflect.
        vacuum_resolvent_anticommutator(std::conj(z), cfg);
        return closed;
    }
    // Route A: <Phi,R Phi> = i pi^{-1/2} Int_0^R s^{(mu-1)/2} e^{-s^2/2}
    //   Int_s^R w^{(-mu-1)/2} e^{-w^2/2} dw ds, mu = iz.  The kernel powers
    // oscillate like e^{-i Im(mu) ln w} near 0, so substitute s = e^{2u},
    // w = e^v to make the oscillation uniform; both integrands then decay
    // exponentially toward -infinity.
    const cplx mu = kI * z;
    const double R = 8.6;
    const double V = std::log(R);       // upper limit in v
    const double vcut = -20.0;          // e^{-w^2/2} = 1 to 4e-18 below here
    const cplx em = 0.5 * (1.0 - mu);   // inner amplitude exponent
    auto inner_num = [&](double v0) {
        return integrate(
            [&](double v) {
                double w = std::exp(v);
                return std::exp(em * v - 0.5 * w * w);
            },
            v0, V, 0.1 * cfg.quad_tol);
    };
    const cplx inner_ref = inner_num(vcut);
    auto inner = [&](double v0) -> cplx {
        if (v0 >= vcut) return inner_num(v0);
        // Tail below vcut in closed form: the Gaussian factor is 1 there.
        return inner_ref + (std::exp(em * vcut) - std::exp(em * v0)) / em;
    };
    cplx outer = integrate(
        [&](double u) {
            double s = std::exp(2.0 * u);
            return 2.0 * std::exp((1.0 + mu) * u - 0.5 * s * s) * inner(2.0 * u);
        },
        -35.0, 0.5 * V, cfg.quad_tol);
    cplx quad = kI / std::sqrt(kPi) * outer;
    if (std::abs(quad - closed) > cfg.cross_check_tol)
        throw RouteMismatchError(
            "vacuum_resolvent_anticommutator: quadrature and closed form disagree");
    return closed;
}

cplx weber_m1(double z, cplx a) {
    return std::exp(-0.25 * z * z) *
           specfun::kummer_1f1(-0.5 * a + 0.25, 0.5, 0.5 * z * z, {1e-14, 1e-300, 2000});
}

cplx weber_m2(double z, cplx a) {
    return z * std::exp(-0.25 * z * z) *
           specfun::kummer_1f1(-0.5 * a + 0.75, 1.5, 0.5 * z * z, {1e-14, 1e-300, 2000});
}

WeberPair weber_pair(cplx) {
    return {[](double z, cplx a) { return weber_m1(z, a); },
            [](double z, cplx a) { return weber_m2(z, a); }};
}

cplx resolvent_oscillator(cplx a, const TestFunction& g, double s, cplx c1,
                          cplx c2, const NumericsConfig& cfg) {
    const double sqrt2 = std::sqrt(2.0);
    const double su = s * sqrt2;
    const double lower = -std::max(8.0, g.decay_radius) * sqrt2;
    const cplx m1s = weber_m1(su, a);
    const cplx m2s = weber_m2(su, a);
    cplx particular = 0.0;
    if (su > lower)
        particular = integrate(
            [&](double w) {
                return g.eval(w / sqrt2) *
                       (weber_m1(w, a) * m2s - m1s * weber_m2(w, a));
            },
            lower, su, cfg.quad_tol);
    return c1 * m1s + c2 * m2s + particular;
}

cplx vacuum_resolvent_oscillator(cplx z) {
    if (std::abs(z - 0.5) < 1e-300)
        throw PoleError("vacuum_resolvent_oscillator: pole at z = 1/2");
    return 1.0 / (z - 0.5);
}

Eigen::MatrixXcd finite_resolvent(const ObservableSpec& spec, cplx z,
                                  const NumericsConfig& cfg) {
    if (spec.kind != ObservableKind::FiniteMatrix)
        throw std::invalid_argument("finite_resolvent: needs a FiniteMatrix spec");
    const auto n = spec.matrix.rows();
    Eigen::MatrixXcd m = -spec.matrix.cast<cplx>();
    m.diagonal().array() += z;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    if (svd.singularValues()(n - 1) < cfg.sing_tol)
        throw std::domain_error("finite_resolvent: z too close to an eigenvalue");
    return m.partialPivLu().inverse();
}

double symmetry_check(const ObservableSpec& spec, const TestFunction& f,
                      const TestFunction& g, const NumericsConfig& cfg) {
    if (spec.kind == ObservableKind::FiniteMatrix)
        throw std::invalid_argument("symmetry_check: differential observables only");
    const double h = 5e-3;
    auto d1 = [h](const TestFunction& u, double x) {
        return (-u.eval(x + 2 * h) + 8.0 * u.eval(x + h) - 8.0 * u.eval(x - h) +
                u.eval(x - 2 * h)) /
               (12.0 * h);
    };
    auto d2 = [h](const TestFunction& u, double x) {
        return (-u.eval(x + 2 * h) + 16.0 * u.eval(x + h) - 30.0 * u.eval(x) +
                16.0 * u.eval(x - h) - u.eval(x - 2 * h)) /
               (12.0 * h * h);
    };
    auto apply = [&](const TestFunction& u, double x) -> cplx {
        if (spec.kind == ObservableKind::AntiCommutator)
            return -kI * u.eval(x) - 2.0 * kI * x * d1(u, x);
        return 0.5 * (x * x * u.eval(x) - d2(u, x));
    };
    const double R = std::max(f.decay_radius, g.decay_radius);
    cplx lhs = integrate(
        [&](double x) { return std::conj(apply(f, x)) * g.eval(x); }, -R, R,
        cfg.quad_tol);
    cplx rhs = integrate(
        [&](double x) { return std::conj(f.eval(x)) * apply(g, x); }, -R, R,
        cfg.quad_tol);
    return std::abs(lhs - rhs);
}

}  // namespace spectra::resolvents
