#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spectra/series.hpp"

namespace spectra {

enum class ObservableKind { FiniteMatrix, AntiCommutator, OscillatorHamiltonian };

/// Which self-adjoint operator is under study.  The two continuum
/// observables carry no parameters; their vacuum is the unit Gaussian
/// pi^{-1/4} e^{-x^2/2}.
struct ObservableSpec {
    ObservableKind kind = ObservableKind::AntiCommutator;
    Eigen::MatrixXd matrix;  // FiniteMatrix only, symmetric
    Eigen::VectorXd vacuum;  // FiniteMatrix only, unit norm

    static ObservableSpec anticommutator() {
        return {ObservableKind::AntiCommutator, {}, {}};
    }
    static ObservableSpec oscillator() {
        return {ObservableKind::OscillatorHamiltonian, {}, {}};
    }
    static ObservableSpec finite(Eigen::MatrixXd m, Eigen::VectorXd phi) {
        if (m.rows() != m.cols() || m.rows() != phi.size())
            throw std::invalid_argument("finite observable: dimension mismatch");
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("finite observable: matrix not symmetric");
        if (std::abs(phi.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("finite observable: vacuum not unit norm");
        return {ObservableKind::FiniteMatrix, std::move(m), std::move(phi)};
    }
    /// The 3x3 all-ones-off-diagonal matrix (eigenvalues 2 and -1, -1).
    static ObservableSpec heisenberg(Eigen::Vector3d phi) {
        Eigen::Matrix3d h;
        h << 0, 1, 1, 1, 0, 1, 1, 1, 0;
        return finite(h, phi);
    }
};

/// A Schwartz-style test function: pointwise evaluation plus the radius
/// beyond which it is below 1e-16.
struct TestFunction {
    std::function<cplx(double)> eval;
    double decay_radius = 8.6;
};

/// The vacuum Gaussian pi^{-1/4} e^{-x^2/2} as a test function.
inline TestFunction vacuum_state() {
    static const double norm = std::pow(3.14159265358979323846, -0.25);
    return {[](double x) { return cplx(norm * std::exp(-0.5 * x * x), 0.0); },
            8.6};
}

/// Discretization knobs shared by the resolvent and Stone-formula engines.
struct NumericsConfig {
    double quad_tol = 1e-10;
    double cross_check_tol = 1e-6;
    std::vector<double> eps_schedule = {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
    double t_cutoff = 40.0;
    double atom_jump_tol = 1e-3;
    double sing_tol = 1e-10;

    void validate() const {
        if (eps_schedule.empty()) throw std::invalid_argument("empty eps schedule");
        for (size_t i = 0; i < eps_schedule.size(); ++i) {
            if (eps_schedule[i] <= 0.0)
                throw std::invalid_argument("eps schedule entries must be positive");
            if (i > 0 && eps_schedule[i] >= eps_schedule[i - 1])
                throw std::invalid_argument("eps schedule must be strictly decreasing");
        }
        if (t_cutoff <= 0.0) throw std::invalid_argument("t_cutoff must be positive");
    }
};

}  // namespace spectra
