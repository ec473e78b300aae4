#include "spectra/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spectra::specfun {

namespace {

bool is_nonpositive_integer(cplx x, double tol = 1e-12) {
    if (std::abs(x.imag()) > tol) return false;
    double r = x.real();
    return r < 0.5 && std::abs(r - std::round(r)) < tol;
}

bool near_minus_one(cplx z) { return std::abs(z + 1.0) < 1e-12; }

}  // namespace

cplx pochhammer(cplx x, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
    cplx p = 1.0;
    for (int j = 0; j < n; ++j) p *= x + static_cast<double>(j);
    return p;
}

std::uint64_t stirling2(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling2: negative index");
    if (k > n) return 0;
    if (n == 0) return 1;  // S(0,0)
    if (k == 0) return 0;
    // Row recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
    std::vector<std::uint64_t> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1;  // S(0,0); columns above n stay 0
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) {
            std::uint64_t a, b;
            if (__builtin_mul_overflow(static_cast<std::uint64_t>(j), row[j], &a) ||
                __builtin_add_overflow(a, row[j - 1], &b))
                throw std::overflow_error("stirling2: value exceeds 64-bit range");
            row[static_cast<size_t>(j)] = b;
        }
        row[0] = 0;  // S(i,0) = 0 for i >= 1
    }
    return row[static_cast<size_t>(k)];
}

double stirling_egf(double t, int k, const SeriesControl& ctl) {
    if (k < 0) throw std::invalid_argument("stirling_egf: k must be >= 0");
    // S(n, 0..k) kept as doubles; the terms (2t)^n S(n,k)/n! decay once
    // n passes 2|t| e^{2|t|} k-ish, so the plain stop rule applies after n > k.
    std::vector<double> row(static_cast<size_t>(k) + 1, 0.0);
    row[0] = 1.0;
    KahanSum<double> acc;
    acc.add(k == 0 ? 1.0 : 0.0);
    double pw = 1.0;  // (2t)^n / n!
    int consecutive = 0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        for (int j = std::min(n, k); j >= 1; --j)
            row[static_cast<size_t>(j)] = j * row[static_cast<size_t>(j)] + row[static_cast<size_t>(j) - 1];
        row[0] = 0.0;
        pw *= 2.0 * t / n;
        double term = (k <= n) ? pw * row[static_cast<size_t>(k)] : 0.0;
        acc.add(term);
        if (n > k &&
            std::abs(term) < ctl.rel_tol * std::abs(acc.value()) + ctl.abs_tol) {
            if (++consecutive >= 3) return acc.value();
        } else {
            consecutive = 0;
        }
    }
    throw ConvergenceError("stirling_egf did not converge");
}

cplx incomplete_beta(cplx z, cplx a, cplx b, const SeriesControl& ctl) {
    if (is_nonpositive_integer(a))
        throw PoleError("incomplete_beta: a is a nonpositive integer");
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::domain_error("incomplete_beta: |z| > 1 unsupported");
    if (z == 0.0) return 0.0;

    // term(n) = (1-b)_n / n! * z^n / (a+n), built incrementally.
    auto make_terms = [&] {
        return [coef = cplx(1.0), n_prev = 0, z, a, b](int n) mutable {
            for (; n_prev < n; ++n_prev)
                coef *= (1.0 - b + static_cast<double>(n_prev)) * z /
                        static_cast<double>(n_prev + 1);
            return coef / (a + static_cast<double>(n));
        };
    };
    cplx s = near_minus_one(z) ? alternating_sum(make_terms(), ctl)
                               : sum_series(make_terms(), ctl);
    return std::pow(z, a) * s;
}

cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesControl& ctl) {
    if (is_nonpositive_integer(c))
        throw PoleError("gauss_2f1: c is a nonpositive integer");
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::domain_error("gauss_2f1: |z| > 1 unsupported");
    if (z == 0.0) return 1.0;

    auto make_terms = [&] {
        return [term = cplx(1.0), n_prev = 0, a, b, c, z](int n) mutable {
            for (; n_prev < n; ++n_prev) {
                double k = static_cast<double>(n_prev);
                term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            }
            return term;
        };
    };
    if (near_minus_one(z)) return alternating_sum(make_terms(), ctl);
    return sum_series(make_terms(), ctl);
}

double beta_2f1_identity_residual(cplx a, cplx b, cplx z,
                                  const SeriesControl& ctl) {
    cplx lhs = gauss_2f1(a, b, a + 1.0, z, ctl);
    cplx rhs = a / std::pow(z, a) * incomplete_beta(z, a, 1.0 - b, ctl);
    return std::abs(lhs - rhs);
}

cplx kummer_1f1(cplx a, cplx c, cplx z, const SeriesControl& ctl) {
    if (is_nonpositive_integer(c))
        throw PoleError("kummer_1f1: c is a nonpositive integer");
    if (z == 0.0) return 1.0;
    auto term = [t = cplx(1.0), n_prev = 0, a, c, z](int n) mutable {
        for (; n_prev < n; ++n_prev) {
            double k = static_cast<double>(n_prev);
            t *= (a + k) / ((c + k) * (k + 1.0)) * z;
        }
        return t;
    };
    return sum_series(term, ctl);
}

}  // namespace spectra::specfun
