#pragma once

#include <orbitkit/algebra.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace orbitkit
{
    /// Lie-Poisson structure matrix at a dual point: entry (i, j) = c(i, j, k) xi_k.
    template <typename Scalar, typename Derived>
    MatrixX<Scalar> structure_matrix(const LieAlgebraT<Scalar>& g, const Eigen::MatrixBase<Derived>& xi)
    {
        if (xi.size() != g.dim())
            throw ShapeError("dual vector length does not match the algebra dimension");
        const Index n = g.dim();
        MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
            {
                Scalar s = 0;
                for (Index k = 0; k < n; ++k)
                    s += g(i, j, k) * xi(k);
                out(i, j) = s;
                out(j, i) = -s;
            }
        return out;
    }

    /// Rank of the structure matrix, counting singular values >= tol * max.
    int symplectic_rank(const LieAlgebra& g, const RowVectorXd& xi, double tol = 1e-10);

    /// Exponent vector of a monomial in the dual coordinates.
    using Monomial = std::vector<int>;

    /// Monomials of total degree 1..max_degree in n variables, ordered by
    /// degree, then lexicographically by exponents with the first variable
    /// most significant (m^2 before m*h before h^2 ...).
    std::vector<Monomial> monomial_basis(Index n, int max_degree);

    std::string monomial_name(const Monomial& e, const std::vector<std::string>& labels);

    /// Polynomial Casimir generators recovered numerically. Row r of
    /// `coefficients` holds generator r over `monomials`; each row is scaled
    /// so that its largest-magnitude coefficient equals 1. Only functionally
    /// new generators are kept: products of lower-degree generators are
    /// projected out degree by degree.
    struct CasimirBasis
    {
        Index dim = 0;
        std::vector<std::string> labels;
        std::vector<Monomial> monomials;
        MatrixXd coefficients;
        std::vector<int> degrees;
        std::uint64_t seed_used = 0;

        Index size() const { return coefficients.rows(); }
        double evaluate(Index r, const RowVectorXd& xi) const;
        VectorXd gradient(Index r, const RowVectorXd& xi) const;
        /// Coefficient vector of an arbitrary polynomial given as (monomial, coefficient) terms.
        VectorXd embed(const std::vector<std::pair<Monomial, double>>& terms) const;
    };

    struct FitOptions
    {
        double null_tol = 1e-8;      // relative singular-value threshold
        double verify_tol = 1e-8;    // relative residual on fresh samples
        double sample_radius = 2.0;  // coordinates uniform on [-radius, radius]
        double central_gap = 0.1;    // |xi_c| >= gap for central coordinates c
        int max_attempts = 3;
    };

    /// Fits polynomial Casimirs up to degree_cap from sample_count random
    /// dual points. Throws DomainError on bad arguments and
    /// std::runtime_error if verification fails on max_attempts seeds.
    CasimirBasis fit_casimirs(const LieAlgebra& g, int degree_cap, int sample_count, std::uint64_t seed,
                              const FitOptions& options = {});

    struct OrbitInvariants
    {
        double c1 = 0;
        double c2 = 0;
    };

    /// C1 = m, C2 = k^2 - 2 m h / omega^2 + p^2 / omega^2.
    OrbitInvariants orbit_invariants(const DualVector& xi, double omega);

    /// The single invariant k^2 + p^2 / omega^2 left on the m = 0 stratum.
    double null_stratum_invariant(const DualVector& xi, double omega);

    /// Closed-form (C1, C2) written over the monomials of `basis` (dimension 4 only).
    MatrixXd nh_casimir_coefficients(const CasimirBasis& basis, double omega);
} // namespace orbitkit
