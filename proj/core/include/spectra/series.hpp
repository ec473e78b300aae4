#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectra {

using cplx = std::complex<double>;

/// Truncation control for all infinite-series evaluations.
struct SeriesControl {
    double rel_tol = 1e-14;
    double abs_tol = 1e-300;
    int max_terms = 500;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RouteMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compensated (Kahan) accumulator.
template <class T>
class KahanSum {
  public:
    void add(T x) {
        T y = x - comp_;
        T t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

  private:
    T sum_{};
    T comp_{};
};

/// Sums term(0) + term(1) + ... with the stop rule: |term| below
/// rel_tol*|partial sum| + abs_tol for 3 consecutive terms.
template <class TermFn>
auto sum_series(TermFn&& term, const SeriesControl& ctl)
    -> decltype(term(0)) {
    using T = decltype(term(0));
    KahanSum<T> acc;
    int consecutive = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        T t = term(n);
        acc.add(t);
        if (std::abs(t) < ctl.rel_tol * std::abs(acc.value()) + ctl.abs_tol) {
            if (++consecutive >= 3) return acc.value();
        } else {
            consecutive = 0;
        }
    }
    throw ConvergenceError("series did not converge within max_terms=" +
                           std::to_string(ctl.max_terms));
}

/// Sums an eventually-alternating series by iterated averaging of partial
/// sums (repeated pairing of consecutive terms).  term(n) must carry the
/// sign; the tail beyond `head` terms is assumed of the form (-1)^n q(n)
/// with q slowly varying.
template <class TermFn>
auto alternating_sum(TermFn&& term, const SeriesControl& ctl)
    -> decltype(term(0)) {
    using T = decltype(term(0));
    int head = std::min(64, std::max(4, ctl.max_terms / 4));
    int depth = std::min(48, std::max(8, ctl.max_terms - head - 1));
    if (head + depth + 1 > ctl.max_terms)
        throw ConvergenceError("max_terms too small for alternating acceleration");

    KahanSum<T> acc;
    for (int n = 0; n < head; ++n) acc.add(term(n));

    std::vector<T> row(static_cast<size_t>(depth) + 1);
    T partial = acc.value();
    for (int j = 0; j <= depth; ++j) {
        partial += term(head + j);
        row[static_cast<size_t>(j)] = partial;
    }
    T estimate{};
    while (row.size() > 1) {
        if (row.size() == 2) estimate = row[0];
        for (size_t i = 0; i + 1 < row.size(); ++i)
            row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    T value = row[0];
    double err = std::abs(value - estimate);
    if (err > 1e3 * (ctl.rel_tol * std::abs(value) + ctl.abs_tol) && err > 1e-13)
        throw ConvergenceError("alternating series acceleration failed to settle");
    return value;
}

}  // namespace spectra
