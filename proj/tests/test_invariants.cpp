#include <doctest.h>

#include "oracles.hpp"

#include <orbitkit/coadjoint.hpp>
#include <orbitkit/invariants.hpp>
#include <orbitkit/linalg.hpp>

#include <cmath>

using namespace orbitkit;

namespace
{
    RowVectorXd row(double m, double h, double p, double k)
    {
        RowVectorXd xi(4);
        xi << m, h, p, k;
        return xi;
    }

    // C2 coefficients written out by hand over the degree <= 2 monomials in
    // (M, H, P, K), independently of the library's basis embedding.
    MatrixXd hand_casimirs(const CasimirBasis& basis, double omega)
    {
        MatrixXd out = MatrixXd::Zero(basis.monomials.size(), 2);
        const double w2 = omega * omega;
        for (std::size_t q = 0; q < basis.monomials.size(); ++q)
        {
            const auto& e = basis.monomials[q];
            if (e == Monomial{1, 0, 0, 0})
                out(q, 0) = 1.0;
            if (e == Monomial{0, 0, 0, 2})
                out(q, 1) = 1.0;
            if (e == Monomial{1, 1, 0, 0})
                out(q, 1) = -2.0 / w2;
            if (e == Monomial{0, 0, 2, 0})
                out(q, 1) = 1.0 / w2;
        }
        return out;
    }
} // namespace

TEST_CASE("structure_matrix examples")
{
    const auto g = nh_algebra(1.0);
    const MatrixXd lambda = structure_matrix(g, row(1.0, 0.5, 0.0, 1.0));
    CHECK(lambda(kH, kP) == 1.0);
    CHECK(lambda(kH, kK) == 0.0);
    CHECK(lambda(kP, kK) == -1.0);
    CHECK(lambda(kP, kH) == -1.0);
    CHECK(lambda.row(kM).isZero(0.0));
    CHECK(lambda.col(kM).isZero(0.0));
    CHECK((lambda + lambda.transpose()).isZero(0.0));

    CHECK(structure_matrix(g, row(0, 0, 0, 0)).isZero(0.0));
    CHECK(structure_matrix(g, row(0, 3.0, 0, 0)).isZero(0.0));
    CHECK_THROWS_AS(structure_matrix(g, RowVectorXd::Zero(3)), ShapeError);
}

TEST_CASE("symplectic_rank by stratum")
{
    const auto g = nh_algebra(1.3);
    CHECK(symplectic_rank(g, row(1, 0.2, -0.4, 0.7)) == 2);
    CHECK(symplectic_rank(g, row(-2, 0, 0, 0)) == 2);
    CHECK(symplectic_rank(g, row(0, 0, 0, 0)) == 0);
    CHECK(symplectic_rank(g, row(0, 5, 0, 0)) == 0);
    CHECK(symplectic_rank(g, row(0, 1, 0.3, 0)) == 2);
    CHECK(symplectic_rank(g, row(0, 0, 0, -0.8)) == 2);
}

TEST_CASE("monomial basis ordering")
{
    const auto basis = monomial_basis(2, 2);
    REQUIRE(basis.size() == 5);
    CHECK(basis[0] == Monomial{1, 0});
    CHECK(basis[1] == Monomial{0, 1});
    CHECK(basis[2] == Monomial{2, 0});
    CHECK(basis[3] == Monomial{1, 1});
    CHECK(basis[4] == Monomial{0, 2});
    CHECK(monomial_basis(4, 2).size() == 14);
    CHECK(monomial_name({1, 1, 0, 0}, {"M", "H", "P", "K"}) == "M*H");
    CHECK(monomial_name({0, 0, 2, 0}, {"M", "H", "P", "K"}) == "P^2");
}

TEST_CASE("fit_casimirs recovers span{m, C2} for Newton-Hooke")
{
    for (double omega : {0.5, 1.0, 2.0, 5.0})
    {
        CAPTURE(omega);
        const auto basis = fit_casimirs(nh_algebra(omega), 2, 140, 42);
        REQUIRE(basis.size() == 2);
        CHECK(basis.degrees == std::vector<int>{1, 2});

        const MatrixXd expected = hand_casimirs(basis, omega);
        const VectorXd angles = principal_angles(basis.coefficients.transpose(), expected);
        REQUIRE(angles.size() == 2);
        CHECK(angles.maxCoeff() < 1e-6);

        // The library's own closed form spans the same space.
        const VectorXd self = principal_angles(nh_casimir_coefficients(basis, omega).transpose(), expected);
        CHECK(self.maxCoeff() < 1e-12);
    }
}

TEST_CASE("fitted Casimirs are constant on coadjoint orbits")
{
    const double omega = 1.7;
    const auto g = nh_algebra(omega);
    const auto basis = fit_casimirs(g, 2, 140, 7);
    oracle::Rng rng(31);
    for (int trial = 0; trial < 200; ++trial)
    {
        const DualVector xi = make_dual(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
        const GroupCoords h{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const DualVector moved = coad_apply(g, xi, h);
        for (Index r = 0; r < basis.size(); ++r)
        {
            const double before = basis.evaluate(r, xi);
            const double after = basis.evaluate(r, moved);
            const double scale = 1.0 + std::max(xi.cwiseAbs().maxCoeff(), moved.cwiseAbs().maxCoeff());
            CHECK(std::abs(after - before) <= 1e-7 * scale * scale);
        }
        // Generic points: leaf dimension plus number of Casimirs fills the dual.
        CHECK(symplectic_rank(g, xi) + basis.size() == 4);
    }
}

TEST_CASE("fit_casimirs on other algebras")
{
    SUBCASE("abelian: every coordinate is a Casimir")
    {
        const auto basis = fit_casimirs(LieAlgebra::abelian(2), 1, 20, 1);
        CHECK(basis.size() == 2);
    }

    SUBCASE("Heisenberg: only the central coordinate at degree 2")
    {
        const auto basis = fit_casimirs(heisenberg_algebra(), 2, 60, 3);
        REQUIRE(basis.size() == 1);
        CHECK(basis.coefficients.row(0).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
        CHECK(std::abs(basis.coefficients(0, 0)) == doctest::Approx(1.0));
    }

    SUBCASE("same seed gives the same basis")
    {
        const auto a = fit_casimirs(nh_algebra(2.0), 2, 140, 99);
        const auto b = fit_casimirs(nh_algebra(2.0), 2, 140, 99);
        CHECK(a.coefficients == b.coefficients);
        CHECK(a.seed_used == b.seed_used);
    }
}

TEST_CASE("fit_casimirs argument checks")
{
    CHECK_THROWS_AS(fit_casimirs(nh_algebra(1.0), 2, 10, 1), DomainError);
    CHECK_THROWS_AS(fit_casimirs(nh_algebra(1.0), 0, 100, 1), DomainError);
}

TEST_CASE("orbit_invariants examples")
{
    const auto a = orbit_invariants(make_dual(1.0, 0.5, 0.0, 1.0), 1.0);
    CHECK(a.c1 == 1.0);
    CHECK(a.c2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

    // Oscillator state of amplitude A sits on C2 = 0 for every phase.
    const double m = 2.0, omega = 3.0, amp = 0.7;
    for (double t : {0.0, 0.4, 1.9})
    {
        const double p = -m * omega * amp * std::sin(omega * t);
        const double k = m * amp * std::cos(omega * t);
        const double h = p * p / (2 * m) + omega * omega * k * k / (2 * m);
        const auto inv = orbit_invariants(make_dual(m, h, p, k), omega);
        CHECK(inv.c1 == m);
        CHECK(std::abs(inv.c2) < 1e-14);
    }

    // p = k = 0: C2 = -2 m h / omega^2.
    const auto c = orbit_invariants(make_dual(2.0, 2.5, 0.0, 0.0), 1.0);
    CHECK(c.c1 == 2.0);
    CHECK(c.c2 == doctest::Approx(-10.0));

    CHECK(null_stratum_invariant(make_dual(0.0, 4.0, 2.0, 1.0), 2.0) == doctest::Approx(2.0));
}
