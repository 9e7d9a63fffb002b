#include "doctest.h"

#include <cmath>
#include <vector>

#include "susyqm/analytic.hpp"
#include "susyqm/operators.hpp"
#include "susyqm/spectral.hpp"

using namespace susyqm;

TEST_CASE("hbar_of_c") {
    CHECK(hbar_of_c(0.0, 1.0) == doctest::Approx(1.0));
    CHECK(hbar_of_c(1.0 / 3.0, 1.0) == doctest::Approx(2.0));
    CHECK(hbar_of_c(2.0, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(hbar_of_c(1.0, 1.0), SingularCError);
}

TEST_CASE("alpha_of_c") {
    CHECK(alpha_of_c(0.0) == 1);
    CHECK(alpha_of_c(0.999) == 1);
    CHECK(alpha_of_c(-2.0) == -1);
    CHECK_THROWS_AS(alpha_of_c(-1.0), SingularCError);
}

TEST_CASE("identity (1-c)^2 hbar(c) = hbar |1-c^2|") {
    for (double c = -3.0; c <= 3.0; c += 0.07) {
        if (std::abs(std::abs(c) - 1.0) < 1e-9) continue;
        const double lhs = (1.0 - c) * (1.0 - c) * hbar_of_c(c, 1.0);
        CHECK(lhs == doctest::Approx(std::abs(1.0 - c * c)).epsilon(1e-12));
    }
}

TEST_CASE("dispatch table") {
    const DispatchEntry a = dispatch(0.5, -1, 1);
    CHECK(a.target_partner == -1);
    CHECK(!a.hbar_substituted);
    CHECK(a.prefactor == doctest::Approx(0.25));

    const DispatchEntry b = dispatch(2.0, -1, -1);
    CHECK(b.target_partner == 1);  // alpha = -1 swaps the partner
    CHECK(b.hbar_substituted);
    CHECK(b.prefactor == doctest::Approx(1.0));

    const DispatchEntry c = dispatch(2.0, 1, 1);
    CHECK(c.target_partner == -1);  // H_plus also hosts a zero mode
    CHECK(c.hbar_substituted);

    // Structural invariants: P = -s never substitutes, P = +s always does.
    for (double cc : {0.0, 0.5, -0.5, 2.0, -3.0}) {
        for (int s : {-1, 1}) {
            CHECK(dispatch(cc, s, -s).target_partner == s);
            CHECK(!dispatch(cc, s, -s).hbar_substituted);
            CHECK(dispatch(cc, s, s).hbar_substituted);
            CHECK(dispatch(cc, s, s).target_partner == alpha_of_c(cc) * s);
        }
    }
    CHECK_THROWS_AS(dispatch(1.0, -1, 1), SingularCError);
}

TEST_CASE("base_energy closed forms") {
    const BaseSuperpotential h = BaseSuperpotential::harmonic(2.0);
    CHECK(base_energy(h, -1, 3, 1.0) == doctest::Approx(6.0));
    CHECK(base_energy(h, 1, 0, 1.0) == doctest::Approx(2.0));
    CHECK(base_energy(h, -1, 0, 1.0) == 0.0);

    const BaseSuperpotential t = BaseSuperpotential::tanh_scarf(3.0, 1.0);
    CHECK(base_energy(t, -1, 0, 1.0) == 0.0);
    CHECK(base_energy(t, -1, 1, 1.0) == doctest::Approx(5.0));
    CHECK(base_energy(t, -1, 2, 1.0) == doctest::Approx(8.0));
    CHECK_THROWS_AS(base_energy(t, -1, 3, 1.0), NotBoundError);  // at threshold a^2
}

TEST_CASE("base_energy harmonic oracle") {
    // Independent eigensolve of T + diag(x^2 - 1).
    const Grid g = make_grid(12.0, 1001);
    Matrix m = kinetic_matrix(g, UnitSystem{}).entries;
    for (int i = 0; i < g.n_points(); ++i) {
        const double x = g.point(i);
        m(i, i) += x * x - 1.0;
    }
    const std::vector<double> vals =
        eigenvalues_symmetric(OperatorMatrix(g, std::move(m), true), 4);
    for (int n = 0; n < 4; ++n) {
        const double exact = base_energy(BaseSuperpotential::harmonic(2.0), -1, n, 1.0);
        CHECK(std::abs(vals[n] - exact) <= 1e-3);
    }
}

TEST_CASE("base_energy tanh oracle") {
    // Independent eigensolve of T + diag(9 - 12 sech^2 x) on L = 20.
    const Grid g = make_grid(20.0, 2001);
    Matrix m = kinetic_matrix(g, UnitSystem{}).entries;
    for (int i = 0; i < g.n_points(); ++i) {
        const double sech = 1.0 / std::cosh(g.point(i));
        m(i, i) += 9.0 - 12.0 * sech * sech;
    }
    const std::vector<double> vals =
        eigenvalues_symmetric(OperatorMatrix(g, std::move(m), true), 3);
    const BaseSuperpotential t = BaseSuperpotential::tanh_scarf(3.0, 1.0);
    for (int n = 0; n < 3; ++n)
        CHECK(std::abs(vals[n] - base_energy(t, -1, n, 1.0)) <= 1e-3);
}

TEST_CASE("deformed_energy branches") {
    const BaseSuperpotential h = BaseSuperpotential::harmonic(2.0);

    const AnalyticLevel n1 = deformed_energy(Deformation(1.0 / 3.0, h), -1, 1);
    CHECK(n1.energy == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
    CHECK(n1.parity == -1);
    CHECK(n1.branch == LevelBranch::HbarRescaled);

    const AnalyticLevel n2 = deformed_energy(Deformation(1.0 / 3.0, h), -1, 2);
    CHECK(n2.energy == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
    CHECK(n2.parity == 1);
    CHECK(n2.branch == LevelBranch::Undeformed);

    const AnalyticLevel plus0 = deformed_energy(Deformation(2.0, h), 1, 0);
    CHECK(plus0.energy == 0.0);

    for (double c : {0.0, 0.5, 2.0, -3.0})
        CHECK(deformed_energy(Deformation(c, h), -1, 0).energy == 0.0);

    CHECK_THROWS_AS(deformed_energy(Deformation(1.0, h), -1, 1), SingularCError);
}

TEST_CASE("deformed_energy SUSY pairing in closed form") {
    const BaseSuperpotential h = BaseSuperpotential::harmonic(2.0);
    for (double c : {0.0, 0.5, -0.5, 2.0, -3.0}) {
        const bool outer = std::abs(c) > 1.0;
        for (int n = 1; n <= 5; ++n) {
            const double e_minus = deformed_energy(Deformation(c, h), -1, n).energy;
            const int partner_n = (n % 2 == 0) ? n - 1 : (outer ? n + 1 : n - 1);
            const double e_plus = deformed_energy(Deformation(c, h), 1, partner_n).energy;
            CHECK(e_minus == doctest::Approx(e_plus).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic zero-mode census") {
    const BaseSuperpotential h = BaseSuperpotential::harmonic(2.0);
    for (double c : {0.0, 0.5, -0.5}) {
        CHECK(deformed_energy(Deformation(c, h), -1, 0).energy == 0.0);
        CHECK(deformed_energy(Deformation(c, h), 1, 0).energy > 0.0);
    }
    for (double c : {2.0, -3.0}) {
        CHECK(deformed_energy(Deformation(c, h), -1, 0).energy == 0.0);
        CHECK(deformed_energy(Deformation(c, h), 1, 0).energy == 0.0);
    }
}

TEST_CASE("deformed_eigenfunction") {
    const Grid g = make_grid(12.0, 1001);
    const BaseSuperpotential h = BaseSuperpotential::harmonic(2.0);

    SUBCASE("undeformed ground state is the Gaussian") {
        const Wavefunction psi = deformed_eigenfunction(Deformation(0.0, h), -1, 0, g);
        double worst = 0.0;
        for (int i = 0; i < g.n_points(); ++i) {
            const double x = g.point(i);
            const double exact = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
            worst = std::max(worst, std::abs(psi.values[i] - exact));
        }
        CHECK(worst <= 1e-6);
    }

    SUBCASE("c=2, n=1 matches the numerical eigenvector") {
        const Deformation d(2.0, h);
        const Wavefunction ana = deformed_eigenfunction(d, -1, 1, g);
        CHECK(count_nodes(ana) == 1);
        const OperatorMatrix hm = deformed_hamiltonian(d, -1, g);
        const Spectrum spectrum = solve_labeled(hm, g, 5);
        const SpectrumLevel* level = spectrum.by_nodes(1);
        REQUIRE(level != nullptr);
        CHECK(std::abs(inner_product(ana, level->eigenfunction)) > 0.999);
    }

    SUBCASE("node counts label the branch") {
        for (double c : {0.0, 0.5, 2.0})
            for (int s : {-1, 1})
                for (int n = 0; n <= 4; ++n)
                    CHECK(count_nodes(deformed_eigenfunction(Deformation(c, h), s, n, g)) == n);
    }

    SUBCASE("tanh eigenfunctions are unsupported in closed form") {
        const BaseSuperpotential t = BaseSuperpotential::tanh_scarf(3.0, 1.0);
        CHECK_THROWS_AS(deformed_eigenfunction(Deformation(0.5, t), -1, 0, g),
                        UnsupportedFamilyError);
    }
}
