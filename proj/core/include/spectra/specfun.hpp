#pragma once

#include <complex>
#include <cstdint>

#include "spectra/series.hpp"

namespace spectra::specfun {

/// Rising factorial (x)_n = x(x+1)...(x+n-1); 1 for n = 0.
cplx pochhammer(cplx x, int n);

/// Stirling number of the second kind, exact.  Throws std::overflow_error
/// once the value leaves the 64-bit range.
std::uint64_t stirling2(int n, int k);

/// Sum_n (2t)^n S(n,k) / n!, truncated per ctl.  Equals (e^{2t}-1)^k / k!.
double stirling_egf(double t, int k, const SeriesControl& ctl = {});

/// Incomplete Beta function B(z; a, b) = z^a sum_n (1-b)_n z^n / (n! (a+n)),
/// principal branch for z^a.  Requires |z| <= 1; at z = -1 the alternating
/// series is accelerated by iterated pairing of consecutive terms.
cplx incomplete_beta(cplx z, cplx a, cplx b, const SeriesControl& ctl = {});

/// Gauss hypergeometric series, |z| <= 1.
cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesControl& ctl = {});

/// |2F1(a, b; a+1; z) - (a / z^a) B(z; a, 1-b)|, both sides by their own
/// series; a test utility for the Beta/2F1 identity.
double beta_2f1_identity_residual(cplx a, cplx b, cplx z,
                                  const SeriesControl& ctl = {});

/// Kummer confluent hypergeometric series, entire in z.
cplx kummer_1f1(cplx a, cplx c, cplx z, const SeriesControl& ctl = {});

}  // namespace spectra::specfun
