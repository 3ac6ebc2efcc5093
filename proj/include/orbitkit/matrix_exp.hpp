#pragma once

#include <orbitkit/errors.hpp>
#include <orbitkit/types.hpp>

#include <cmath>

namespace orbitkit
{
    template <typename Derived>
    typename Derived::Scalar norm1(const Eigen::MatrixBase<Derived>& a)
    {
        if (a.size() == 0)
            return typename Derived::Scalar(0);
        return a.cwiseAbs().colwise().sum().maxCoeff();
    }

    /// Matrix exponential by scaling and squaring with a truncated Taylor
    /// series. The argument is scaled by 2^-s so its 1-norm is at most 1/2,
    /// the series is summed until a term drops below tol relative to the
    /// partial sum, and the result is squared s times. Nilpotent arguments
    /// (A^q = 0 exactly for some q <= n) are summed in closed form without
    /// scaling, so exp(0) = I and exp(A) = I + A + A^2/2 when A^3 = 0.
    template <typename Derived>
    Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
    matrix_exp(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar tol = typename Derived::Scalar(1e-13))
    {
        using Scalar = typename Derived::Scalar;
        using Result = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
        using std::ceil;
        using std::isfinite;
        using std::log2;

        if (a.rows() != a.cols())
            throw ShapeError("matrix_exp requires a square matrix");
        if (!a.allFinite())
            throw DomainError("matrix_exp requires finite entries");

        const Index n = a.rows();
        const Result identity = Result::Identity(n, n);

        {
            Result sum = identity;
            Result term = identity;
            for (Index q = 1; q <= n; ++q)
            {
                term = (term * a.derived()) / Scalar(q);
                if ((term.array() == Scalar(0)).all())
                    return sum;
                sum += term;
            }
        }

        const Scalar norm = norm1(a);
        int squarings = 0;
        if (norm > Scalar(0.5))
            squarings = static_cast<int>(ceil(log2(norm / Scalar(0.5))));
        const Result scaled = a.derived() / std::ldexp(Scalar(1), squarings);

        Result sum = identity;
        Result term = identity;
        for (int q = 1; q <= 40; ++q)
        {
            term = (term * scaled) / Scalar(q);
            sum += term;
            if (norm1(term) <= tol * norm1(sum))
                break;
        }
        for (int s = 0; s < squarings; ++s)
            sum = (sum * sum).eval();
        return sum;
    }
} // namespace orbitkit
