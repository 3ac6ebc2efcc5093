#pragma once

#include <orbitkit/algebra.hpp>
#include <orbitkit/matrix_exp.hpp>

#include <cmath>

namespace orbitkit
{
    /// Coordinates of g = exp(eta M) exp(b H) exp(a P) exp(v K).
    /// eta is a dimensionless phase, b a time, a a length, v a velocity.
    template <typename Scalar>
    struct GroupCoordsT
    {
        Scalar eta = 0;
        Scalar b = 0;
        Scalar a = 0;
        Scalar v = 0;

        bool all_finite() const
        {
            using std::isfinite;
            return isfinite(eta) && isfinite(b) && isfinite(a) && isfinite(v);
        }
    };
    using GroupCoords = GroupCoordsT<double>;

    // One-parameter subgroups generated by single basis elements.
    template <typename Scalar>
    GroupCoordsT<Scalar> central_phase(Scalar eta) { return {eta, 0, 0, 0}; }
    template <typename Scalar>
    GroupCoordsT<Scalar> time_shift(Scalar tau) { return {0, tau, 0, 0}; }
    template <typename Scalar>
    GroupCoordsT<Scalar> spatial_shift(Scalar l) { return {0, 0, l, 0}; }
    template <typename Scalar>
    GroupCoordsT<Scalar> boost(Scalar u) { return {0, 0, 0, u}; }

    namespace detail
    {
        template <typename Scalar>
        void require_four(const LieAlgebraT<Scalar>& g)
        {
            if (g.dim() != 4)
                throw ShapeError("coadjoint matrices need a 4-dimensional algebra in the (M, H, P, K) basis");
        }
    } // namespace detail

    /// Coadjoint matrix exp(-v ad_K) exp(-a ad_P) exp(-b ad_H) exp(-eta ad_M).
    /// It acts on row vectors from the right: xi' = xi * coad_matrix(g).
    template <typename Scalar>
    Matrix4<Scalar> coad_matrix(const LieAlgebraT<Scalar>& algebra, const GroupCoordsT<Scalar>& g)
    {
        detail::require_four(algebra);
        const Matrix4<Scalar> ad_m = ad_matrix(algebra, kM);
        const Matrix4<Scalar> ad_h = ad_matrix(algebra, kH);
        const Matrix4<Scalar> ad_p = ad_matrix(algebra, kP);
        const Matrix4<Scalar> ad_k = ad_matrix(algebra, kK);
        return matrix_exp((-g.v * ad_k).eval()) * matrix_exp((-g.a * ad_p).eval()) *
               matrix_exp((-g.b * ad_h).eval()) * matrix_exp((-g.eta * ad_m).eval());
    }

    /// Coadjoint matrix of g^-1 = exp(-v K) exp(-a P) exp(-b H) exp(-eta M).
    template <typename Scalar>
    Matrix4<Scalar> coad_matrix_inverse(const LieAlgebraT<Scalar>& algebra, const GroupCoordsT<Scalar>& g)
    {
        detail::require_four(algebra);
        const Matrix4<Scalar> ad_m = ad_matrix(algebra, kM);
        const Matrix4<Scalar> ad_h = ad_matrix(algebra, kH);
        const Matrix4<Scalar> ad_p = ad_matrix(algebra, kP);
        const Matrix4<Scalar> ad_k = ad_matrix(algebra, kK);
        return matrix_exp((g.eta * ad_m).eval()) * matrix_exp((g.b * ad_h).eval()) *
               matrix_exp((g.a * ad_p).eval()) * matrix_exp((g.v * ad_k).eval());
    }

    template <typename Scalar>
    DualVectorT<Scalar> coad_apply(const LieAlgebraT<Scalar>& algebra, const DualVectorT<Scalar>& xi,
                                   const GroupCoordsT<Scalar>& g)
    {
        return xi * coad_matrix(algebra, g);
    }

    /// Closed-form Newton-Hooke coadjoint action:
    ///   m' = m
    ///   h' = h + m v^2/2 + m a^2 omega^2/2 - v p + a omega^2 k
    ///   p' = (p - m v) cos(b omega) - omega (m a + k) sin(b omega)
    ///   k' = (m a + k) cos(b omega) + (p - m v)/omega sin(b omega)
    template <typename Scalar>
    DualVectorT<Scalar> coad_apply_closed(const DualVectorT<Scalar>& xi, const GroupCoordsT<Scalar>& g, Scalar omega)
    {
        using std::cos;
        using std::sin;
        if (!(omega > Scalar(0)))
            throw DomainError("omega must be positive");
        const Scalar m = xi(kM), h = xi(kH), p = xi(kP), k = xi(kK);
        const Scalar w2 = omega * omega;
        const Scalar c = cos(g.b * omega);
        const Scalar s = sin(g.b * omega);
        const Scalar shifted_p = p - m * g.v;
        const Scalar shifted_k = m * g.a + k;
        return make_dual<Scalar>(m,
                                 h + m * g.v * g.v / 2 + m * g.a * g.a * w2 / 2 - g.v * p + g.a * w2 * k,
                                 shifted_p * c - omega * shifted_k * s,
                                 shifted_k * c + shifted_p / omega * s);
    }
} // namespace orbitkit
