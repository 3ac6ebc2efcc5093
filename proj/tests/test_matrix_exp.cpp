#include <doctest.h>

#include "oracles.hpp"

#include <orbitkit/algebra.hpp>
#include <orbitkit/matrix_exp.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

using namespace orbitkit;

TEST_CASE("exp(0) is exactly the identity")
{
    CHECK(matrix_exp(Eigen::Matrix4d::Zero().eval()) == Eigen::Matrix4d::Identity());
    CHECK(matrix_exp(MatrixXd::Zero(3, 3)) == MatrixXd::Identity(3, 3));
}

TEST_CASE("exp(-b ad_H) carries the rotation block")
{
    for (double omega : {0.3, 1.0, 4.0})
        for (double b : {-2.0, 0.1, 1.3, 25.0})
        {
            const Eigen::Matrix4d a = -b * Eigen::Matrix4d(ad_matrix(nh_algebra(omega), kH));
            const Eigen::Matrix4d e = matrix_exp(a);
            const double c = std::cos(b * omega), s = std::sin(b * omega);
            Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
            expected(kP, kP) = c;
            expected(kP, kK) = s / omega;
            expected(kK, kP) = -omega * s;
            expected(kK, kK) = c;
            CHECK((e - expected).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, std::abs(b) * omega));
        }
}

TEST_CASE("nilpotent -a ad_P exponentiates to I + A + A^2/2")
{
    const double omega = 2.5;
    for (double a : {0.5, -3.0, 40.0})
    {
        const Eigen::Matrix4d A = -a * Eigen::Matrix4d(ad_matrix(nh_algebra(omega), kP));
        REQUIRE((A * A * A).isZero(0.0));
        const Eigen::Matrix4d expected = Eigen::Matrix4d::Identity() + A + A * A / 2.0;
        CHECK(matrix_exp(A) == expected);
    }
}

TEST_CASE("agrees with an independent Pade-based exponential on random matrices")
{
    oracle::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial)
    {
        const double scale = std::pow(10.0, rng.uniform(-2.0, 1.2));
        MatrixXd a(4, 4);
        for (Index i = 0; i < 4; ++i)
            for (Index j = 0; j < 4; ++j)
                a(i, j) = scale * rng.uniform(-1.0, 1.0);
        const MatrixXd ours = matrix_exp(a);
        const MatrixXd reference = a.exp();
        CHECK((ours - reference).norm() <= 1e-11 * reference.norm());
    }
}

TEST_CASE("matrix_exp argument checks")
{
    CHECK_THROWS_AS(matrix_exp(MatrixXd::Zero(2, 3)), ShapeError);
    MatrixXd bad = MatrixXd::Zero(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(matrix_exp(bad), DomainError);
}
