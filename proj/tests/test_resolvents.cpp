#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include <doctest.h>

#include "spectra/observable.hpp"
#include "spectra/resolvents.hpp"
#include "spectra/verify.hpp"

using spectra::cplx;
using spectra::NumericsConfig;
using spectra::ObservableSpec;
namespace rv = spectra::resolvents;

TEST_SUITE_BEGIN("resolvents");

TEST_CASE("vacuum anticommutator pairing, closed form") {
    // Herglotz sign and conjugate symmetry of <Phi, R(z) Phi>.
    for (double t : {-4.0, -1.0, 0.0, 0.5, 3.0}) {
        cplx z{t, -0.05};
        cplx below = rv::vacuum_resolvent_anticommutator_closed(z);
        CHECK(below.imag() > 0.0);
        cplx above = rv::vacuum_resolvent_anticommutator_closed(std::conj(z));
        CHECK(std::abs(above - std::conj(below)) == 0.0);
    }
    CHECK_THROWS_AS(
        (void)rv::vacuum_resolvent_anticommutator_closed(cplx(1.0, 0.0)),
        std::domain_error);
}

TEST_CASE("vacuum anticommutator pairing, quadrature cross-check") {
    // The closed 2F1 form is verified internally against the kernel double
    // integral; a mismatch throws.
    for (cplx z : {cplx(0.0, -1e-3), cplx(5.0, -6.25e-3), cplx(-2.0, -0.5)})
        CHECK_NOTHROW((void)rv::vacuum_resolvent_anticommutator(z, {}));
}

TEST_CASE("weber pair Wronskian") {
    const double h = 1e-5;
    for (cplx a : {cplx(0.0, -0.1), cplx(1.3, 0.4), cplx(-0.7, 0.0)}) {
        for (double s : {-1.2, 0.3, 2.0}) {
            auto d = [&](auto&& f) {
                return (f(s + h, a) - f(s - h, a)) / (2.0 * h);
            };
            cplx w = rv::weber_m1(s, a) * d(rv::weber_m2) -
                     rv::weber_m2(s, a) * d(rv::weber_m1);
            CHECK(std::abs(w - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("oscillator vacuum pairing is 1/(z - 1/2)") {
    cplx z{0.3, -0.2};
    CHECK(std::abs(rv::vacuum_resolvent_oscillator(z) - 1.0 / (z - 0.5)) ==
          0.0);
    CHECK_THROWS_AS((void)rv::vacuum_resolvent_oscillator(cplx(0.5, 0.0)),
                    spectra::PoleError);
}

TEST_CASE("finite resolvent of the Heisenberg matrix at z = 3") {
    auto spec = ObservableSpec::heisenberg(Eigen::Vector3d(1, 0, 0));
    auto r = rv::finite_resolvent(spec, cplx(3.0, 0.0), {});
    Eigen::Matrix3d expected;
    expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    expected *= 0.25;
    CHECK((r - expected.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("finite resolvent residual at complex z") {
    auto spec = ObservableSpec::heisenberg(Eigen::Vector3d(1, 0, 0));
    cplx z{1.0, -1.0};
    auto r = rv::finite_resolvent(spec, z, {});
    Eigen::Matrix3cd zh =
        z * Eigen::Matrix3cd::Identity() - spec.matrix.cast<cplx>();
    CHECK((zh * r - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() <
          1e-12);
    NumericsConfig strict;
    strict.sing_tol = 1e9;
    CHECK_THROWS_AS((void)rv::finite_resolvent(spec, z, strict),
                    std::domain_error);
}

TEST_CASE("symmetry of the differential observables") {
    auto f = spectra::vacuum_state();
    spectra::TestFunction g{
        [](double x) { return cplx(x * std::exp(-0.6 * x * x), 0.0); }, 8.0};
    CHECK(rv::symmetry_check(ObservableSpec::anticommutator(), f, g, {}) <
          1e-8);
    CHECK(rv::symmetry_check(ObservableSpec::oscillator(), f, g, {}) < 1e-8);
}

TEST_CASE("invariant suite") {
    auto r = spectra::verify::verify_resolvents();
    for (const auto& c : r.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(r.overall);
}

TEST_SUITE_END();
