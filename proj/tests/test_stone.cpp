#include <Eigen/Dense>
#include <cmath>

#include <doctest.h>

#include "spectra/io.hpp"
#include "spectra/stone.hpp"
#include "spectra/verify.hpp"

using spectra::NumericsConfig;
using spectra::ObservableSpec;
namespace st = spectra::stone;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1.0);
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("stone");

TEST_CASE("oscillator: single unit atom at 1/2") {
    auto cdf = st::stone_cdf(ObservableSpec::oscillator(), linspace(-1, 2, 61));
    REQUIRE(cdf.atoms.size() == 1);
    CHECK(std::abs(cdf.atoms[0].location - 0.5) < 1e-3);
    CHECK(std::abs(cdf.atoms[0].mass - 1.0) < 1e-3);
    for (size_t i = 0; i + 1 < cdf.values.size(); ++i)
        CHECK(cdf.values[i + 1] - cdf.values[i] > -1e-9);
    CHECK(cdf.budget.extrapolation_spread >= 0.0);
    CHECK(cdf.budget.tail_bound > 0.0);
}

TEST_CASE("Heisenberg vacuum (1,0,0): Bernoulli atoms") {
    auto spec = ObservableSpec::heisenberg(Eigen::Vector3d(1, 0, 0));
    auto grid = linspace(-3, 3, 25);
    grid.push_back(40.0);
    auto cdf = st::stone_cdf(spec, grid);
    REQUIRE(cdf.atoms.size() == 2);
    CHECK(std::abs(cdf.atoms[0].location - (-1.0)) < 1e-3);
    CHECK(std::abs(cdf.atoms[0].mass - 2.0 / 3.0) < 1e-3);
    CHECK(std::abs(cdf.atoms[1].location - 2.0) < 1e-3);
    CHECK(std::abs(cdf.atoms[1].mass - 1.0 / 3.0) < 1e-3);
    // Right continuity: F(-1) already contains the atom at -1.
    for (size_t i = 0; i < cdf.grid.size(); ++i)
        if (cdf.grid[i] == -1.0)
            CHECK(std::abs(cdf.values[i] - 2.0 / 3.0) < 1e-3);
}

TEST_CASE("Heisenberg arctan closed form") {
    auto spec = ObservableSpec::heisenberg(
        Eigen::Vector3d(1, 1, 1).normalized());
    // x = sqrt(3): the atom at -1 carries no mass.
    CHECK(std::abs(st::stone_cdf_matrix_exact(spec, 1e6, 1e-4) - 1.0) < 1e-6);
    CHECK(st::stone_cdf_matrix_exact(spec, -5.0, 1e-4) < 1e-4);
    // Pre-limit value at an interior point, extrapolated over two eps.
    double ea = 1.25e-2, eb = 6.25e-3;
    double fa = st::stone_cdf_matrix_exact(spec, 0.5, ea);
    double fb = st::stone_cdf_matrix_exact(spec, 0.5, eb);
    CHECK(std::abs((ea * fb - eb * fa) / (ea - eb) - 0.0) < 1e-6);
    CHECK_THROWS_AS(
        (void)st::stone_cdf_matrix_exact(ObservableSpec::oscillator(), 0.0,
                                         1e-3),
        std::invalid_argument);
}

TEST_CASE("eigendecomposition oracle") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd v(2);
    v << 1, 0;
    auto oracle = st::eig_cdf_oracle(ObservableSpec::finite(id, v),
                                     {0.0, 0.5, 1.0, 2.0});
    REQUIRE(oracle.atoms.size() == 1);
    CHECK(oracle.atoms[0].location == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracle.atoms[0].mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracle.values.back() == doctest::Approx(1.0));
    CHECK(oracle.values.front() == doctest::Approx(0.0));
}

TEST_CASE("matrix file round-trip into the Stone engine") {
    auto spec = spectra::io::load_matrix_file(
        R"({"matrix": [[1, 0], [0, 1]], "vacuum": [1, 0]})");
    auto cdf = st::stone_cdf(spec, linspace(-2, 3, 51));
    REQUIRE(cdf.atoms.size() == 1);
    CHECK(std::abs(cdf.atoms[0].location - 1.0) < 1e-3);
    CHECK(std::abs(cdf.atoms[0].mass - 1.0) < 1e-3);
}

TEST_CASE("anticommutator closed CDF") {
    CHECK(std::abs(st::anticommutator_cdf_closed(0.0) - 0.5) < 1e-8);
    CHECK(std::abs(st::anticommutator_cdf_closed(40.0) - 1.0) < 1e-6);
    double a = st::anticommutator_cdf_closed(-1.0);
    double b = st::anticommutator_cdf_closed(1.0);
    // Symmetry of the even density.
    CHECK(std::abs(a + b - 1.0) < 1e-8);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(
        (void)st::stone_cdf(ObservableSpec::oscillator(), {0.0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)st::stone_cdf(ObservableSpec::oscillator(), {1.0, 0.0}),
        std::invalid_argument);
    NumericsConfig bad;
    bad.eps_schedule = {1e-2, 1e-2};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("invariant suite") {
    auto r = spectra::verify::verify_stone();
    for (const auto& c : r.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
    CHECK(r.overall);
}

TEST_SUITE_END();
