#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "tpdicke/classical.hpp"
#include "tpdicke/model.hpp"

using namespace tpdicke;

namespace {
ModelParams make(double omega, double omega0, double gamma, double j) {
    return {omega, omega0, gamma, static_cast<int>(std::lround(2 * j))};
}
}  // namespace

TEST_CASE("critical coupling") {
    CHECK(critical_coupling(make(1, 0, 0, 10)) == 0.0);
    CHECK(critical_coupling(make(1, 2, 0, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(critical_coupling(make(1, 0.02, 0, 10)) ==
          doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
    // Negative omega0 uses |omega0|.
    CHECK(critical_coupling(make(1, -0.02, 0, 10)) ==
          critical_coupling(make(1, 0.02, 0, 10)));
}

TEST_CASE("critical coupling marks the kink of the minimized classical energy") {
    // Locate the coupling where the minimizer of h_squeezed leaves the origin
    // by bisection; it must agree with the closed form.
    const ModelParams base = make(1, 0.02, 0, 10);
    auto off_origin = [&](double gamma) {
        ModelParams p = base;
        p.gamma = gamma;
        auto obj = [&](const std::vector<double>& v) {
            if (v[0] * v[0] + v[1] * v[1] >= 3.999) return 1e9;
            return classical::h_squeezed(p, v[0], 0.0, v[1], 0.0);
        };
        double best = 0.0;
        for (auto start : {std::vector<double>{0.3, 1.0}, {0.05, 0.2}, {0.6, 1.8}}) {
            const auto x = oracle::nelder_mead(obj, start, 0.1, 3000);
            best = std::max(best, std::abs(x[0]));
        }
        return best > 1e-4;
    };
    double lo = 0.1, hi = 0.45;
    REQUIRE(!off_origin(lo));
    REQUIRE(off_origin(hi));
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (off_origin(mid) ? hi : lo) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(critical_coupling(base)).epsilon(1e-4));
}

TEST_CASE("collapse coupling") {
    CHECK(collapse_coupling(make(1, 0, 0, 1)) == 0.5);
    CHECK(collapse_coupling(make(2, 0, 0, 1)) == 1.0);
    CHECK(collapse_coupling(make(0.5, 0, 0, 1)) == 0.25);
}

TEST_CASE("phase classification") {
    CHECK(classify_phase(make(1, 1, 0.45, 100)) == Phase::Normal);
    CHECK(classify_phase(make(1, 0.02, 0.45, 10)) == Phase::Superradiant);
    CHECK(classify_phase(make(1, 1, 0.6, 10)) == Phase::CollapseRegime);
    CHECK(classify_phase(make(1, 1, 0.5, 10)) == Phase::CollapseRegime);
    // gamma = gamma_c boundary is normal (closed set).
    const ModelParams p = make(1, 0.02, critical_coupling(make(1, 0.02, 0, 10)), 10);
    CHECK(classify_phase(p) == Phase::Normal);
    // gamma = 0 is normal for any omega0.
    for (double w0 : {-2.0, -0.1, 0.1, 2.0})
        CHECK(classify_phase(make(1, w0, 0, 7)) == Phase::Normal);
}

TEST_CASE("superradiant classification matches the numerical minimizer") {
    // (1, 0.02, 0.45, j=10): the global minimum sits away from the origin.
    const ModelParams p = make(1, 0.02, 0.45, 10);
    auto obj = [&](const std::vector<double>& v) {
        if (v[2] * v[2] + v[3] * v[3] >= 3.999) return 1e9;
        return classical::h_squeezed(p, v[0], v[1], v[2], v[3]);
    };
    const auto x = oracle::nelder_mead(obj, {0.2, 0.0, 1.0, 0.0}, 0.15, 5000);
    CHECK(obj(x) < -std::abs(p.omega0) - 1e-6);  // below the NP value -omega0
    CHECK(std::abs(x[0]) > 0.1);
}

TEST_CASE("parity labels") {
    const ModelParams p = make(1, 1, 0.1, 0.5);  // j = 1/2
    CHECK(parity_label({0, -1}, p) == ParitySector::Plus1);
    CHECK(parity_label({1, -1}, p) == ParitySector::PlusI);
    const ModelParams p2 = make(1, 1, 0.1, 2);  // j = 2: (n=2, m=-j+1)
    CHECK(parity_label({2, -2}, p2) == ParitySector::Plus1);
}

TEST_CASE("parity labels agree with exp(i pi Lambda) on a 12-state basis") {
    // Lambda = n/2 + m + j is diagonal; exponentiate it directly.
    const int two_j = 2;
    const auto basis = full_basis(two_j, 3);
    REQUIRE(basis.size() == 12);
    for (const auto& b : basis) {
        const double lambda = 0.5 * b.n + 0.5 * b.two_m + 0.5 * two_j;
        const std::complex<double> expected =
            std::exp(std::complex<double>(0.0, M_PI * lambda));
        double re, im;
        parity_eigenvalue(parity_label(b.n, b.two_m, two_j), re, im);
        CHECK(std::abs(expected - std::complex<double>(re, im)) < 1e-12);
    }
}

TEST_CASE("four sectors partition the basis") {
    oracle::Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const int two_j = rng.uniform_int(1, 23);
        const int n_max = rng.uniform_int(4, 41);
        std::size_t total = 0;
        for (int s = 0; s < 4; ++s)
            total += sector_basis(two_j, n_max, static_cast<ParitySector>(s)).size();
        CHECK(total == static_cast<std::size_t>(basis_dimension(two_j, n_max)));
    }
}

TEST_CASE("parity label invariant under the coupling pattern") {
    oracle::Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const int two_j = rng.uniform_int(1, 15);
        const int n = rng.uniform_int(0, 30);
        const int two_m = -two_j + 2 * rng.uniform_int(0, two_j);
        // (n, m) -> (n+2, m-1) and (n+2, m+1) stay in the sector.
        if (two_m - 2 >= -two_j)
            CHECK(parity_label(n, two_m, two_j) == parity_label(n + 2, two_m - 2, two_j));
        if (two_m + 2 <= two_j)
            CHECK(parity_label(n, two_m, two_j) == parity_label(n + 2, two_m + 2, two_j));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make(0, 1, 0.1, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make(1, 1, -0.1, 1).validate(), std::invalid_argument);
    const ModelParams zero_spin{1, 1, 0.1, 0};
    CHECK_THROWS_AS(zero_spin.validate(), std::invalid_argument);
    CHECK_NOTHROW(make(1, -1, 0.1, 0.5).validate());

    NumericalControls c;
    c.n_max = 3;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.n_cap = 8;
    c.n_max = 16;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.tol_abs = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("sector names and order") {
    CHECK(std::string(sector_name(ParitySector::Plus1)) == "+1");
    CHECK(std::string(sector_name(ParitySector::Minus1)) == "-1");
    CHECK(std::string(sector_name(ParitySector::PlusI)) == "+i");
    CHECK(std::string(sector_name(ParitySector::MinusI)) == "-i");
    CHECK(static_cast<int>(ParitySector::Plus1) < static_cast<int>(ParitySector::Minus1));
    CHECK(static_cast<int>(ParitySector::Minus1) < static_cast<int>(ParitySector::PlusI));
}
