#pragma once

#include <orbitkit/types.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace orbitkit
{
    /// Number of singular values >= rel_tol * largest singular value.
    template <typename Derived>
    Index numerical_rank(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar rel_tol)
    {
        using Scalar = typename Derived::Scalar;
        if (a.size() == 0)
            return 0;
        Eigen::JacobiSVD<MatrixX<Scalar>> svd(a);
        const auto& s = svd.singularValues();
        if (s.size() == 0 || s(0) == Scalar(0))
            return 0;
        Index r = 0;
        for (Index i = 0; i < s.size(); ++i)
            if (s(i) >= rel_tol * s(0))
                ++r;
        return r;
    }

    /// Orthonormal basis (as columns) of the right nullspace of a, using
    /// singular values below rel_tol * largest. A zero matrix has the full
    /// space as nullspace.
    template <typename Derived>
    MatrixX<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar rel_tol)
    {
        using Scalar = typename Derived::Scalar;
        const Index n = a.cols();
        if (a.rows() == 0)
            return MatrixX<Scalar>::Identity(n, n);
        Eigen::JacobiSVD<MatrixX<Scalar>> svd(a, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        Index rank = 0;
        if (s.size() > 0 && s(0) > Scalar(0))
            for (Index i = 0; i < s.size(); ++i)
                if (s(i) >= rel_tol * s(0))
                    ++rank;
        return svd.matrixV().rightCols(n - rank);
    }

    /// Orthonormal basis of the column space of a (absolute threshold on
    /// singular values).
    template <typename Derived>
    MatrixX<typename Derived::Scalar> column_space(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar abs_tol)
    {
        using Scalar = typename Derived::Scalar;
        if (a.cols() == 0)
            return MatrixX<Scalar>(a.rows(), 0);
        Eigen::JacobiSVD<MatrixX<Scalar>> svd(a, Eigen::ComputeThinU);
        Index rank = 0;
        for (Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > abs_tol)
                ++rank;
        return svd.matrixU().leftCols(rank);
    }

    /// Principal angles between the column spans of a and b, largest first.
    /// Computed from sines, ||(I - Qa Qa^T) Qb||, which stays accurate for
    /// nearly coincident subspaces. Requires equal subspace dimensions.
    template <typename DerivedA, typename DerivedB>
    VectorXd principal_angles(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
    {
        const MatrixXd qa = column_space(MatrixXd(a), 1e-12 * std::max(1.0, MatrixXd(a).norm()));
        const MatrixXd qb = column_space(MatrixXd(b), 1e-12 * std::max(1.0, MatrixXd(b).norm()));
        if (qa.cols() != qb.cols())
        {
            VectorXd out(1);
            out(0) = M_PI / 2;
            return out;
        }
        if (qa.cols() == 0)
            return VectorXd(0);
        const MatrixXd residual = qb - qa * (qa.transpose() * qb);
        Eigen::JacobiSVD<MatrixXd> svd(residual);
        VectorXd angles = svd.singularValues();
        for (Index i = 0; i < angles.size(); ++i)
            angles(i) = std::asin(std::min(1.0, angles(i)));
        return angles;
    }
} // namespace orbitkit
