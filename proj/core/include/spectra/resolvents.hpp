#pragma once

#include <Eigen/Dense>
#include <functional>

#include "spectra/observable.hpp"

namespace spectra::resolvents {

/// R(a; XP+PX) g at the point s, by the closed first-order-ODE solution.
/// Requires Im a > -1.
cplx resolvent_anticommutator(cplx a, const TestFunction& g, double s,
                              const NumericsConfig& cfg = {});

/// <Phi, R(z; XP+PX) Phi> for non-real z.  Evaluated by the closed
/// hypergeometric form and, when cfg.cross_check_tol > 0, re-derived by
/// direct double quadrature of the resolvent kernel; disagreement beyond
/// cfg.cross_check_tol raises RouteMismatchError.
cplx vacuum_resolvent_anticommutator(cplx z, const NumericsConfig& cfg = {});

/// Closed form only, no quadrature cross-check (hot path for the Stone engine).
cplx vacuum_resolvent_anticommutator_closed(cplx z);

/// Fundamental pair of the canonical Weber equation
/// M'' - (s^2/4 - a) M = 0, normalized so m1(0)=1, m2(0)=0, Wronskian 1.
struct WeberPair {
    std::function<cplx(double, cplx)> m1;
    std::function<cplx(double, cplx)> m2;
};

cplx weber_m1(double z, cplx a);
cplx weber_m2(double z, cplx a);
WeberPair weber_pair(cplx a);

/// General solution of G'' - (s^2 - 2a) G = 2g at the point s:
/// c1 M1(s sqrt2) + c2 M2(s sqrt2) + variation-of-parameters integral
/// truncated at -g.decay_radius*sqrt2.
cplx resolvent_oscillator(cplx a, const TestFunction& g, double s, cplx c1,
                          cplx c2, const NumericsConfig& cfg = {});

/// <Phi, R(z; (X^2+P^2)/2) Phi> = 1/(z - 1/2); the vacuum is the ground
/// eigenvector.
cplx vacuum_resolvent_oscillator(cplx z);

/// (z I - H)^{-1} for a finite symmetric observable.
Eigen::MatrixXcd finite_resolvent(const ObservableSpec& spec, cplx z,
                                  const NumericsConfig& cfg = {});

/// |<T f, g> - <f, T g>| with T applied as the explicit differential
/// expression, inner products by quadrature, derivatives by 5-point stencils.
double symmetry_check(const ObservableSpec& spec, const TestFunction& f,
                      const TestFunction& g, const NumericsConfig& cfg = {});

}  // namespace spectra::resolvents
