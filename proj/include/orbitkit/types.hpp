#pragma once

#include <Eigen/Core>

namespace orbitkit
{
    using Eigen::Index;
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    using Eigen::RowVectorXd;

    template <typename Scalar>
    using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

    template <typename Scalar>
    using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    /// Point of the dual space g*, stored as a row vector so that the
    /// coadjoint action is right multiplication by a matrix.
    template <typename Scalar>
    using DualVectorT = Eigen::Matrix<Scalar, 1, 4>;
    using DualVector = DualVectorT<double>;

    // Fixed basis numbering (M, H, P, K) used by every Newton-Hooke routine.
    inline constexpr Index kM = 0;
    inline constexpr Index kH = 1;
    inline constexpr Index kP = 2;
    inline constexpr Index kK = 3;

    template <typename Scalar = double>
    DualVectorT<Scalar> make_dual(Scalar m, Scalar h, Scalar p, Scalar k)
    {
        DualVectorT<Scalar> xi;
        xi << m, h, p, k;
        return xi;
    }
} // namespace orbitkit
