#pragma once

#include <orbitkit/errors.hpp>
#include <orbitkit/types.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace orbitkit
{
    /// Finite-dimensional real Lie algebra given by its structure constants
    /// [J_i, J_j] = c(i, j, k) J_k, indices 0-based. Dense dim^3 storage.
    /// Immutable once constructed; with_constant() returns a modified copy.
    template <typename Scalar>
    class LieAlgebraT
    {
    public:
        struct Entry
        {
            Index i, j, k;
            Scalar value;
        };

        LieAlgebraT() = default;

        /// Raw tensor constructor; `tensor` is laid out as c(i, j, k) at
        /// (i * dim + j) * dim + k. No antisymmetry is imposed here.
        LieAlgebraT(Index dim, std::vector<std::string> labels, std::vector<Scalar> tensor,
                    std::optional<Scalar> parameter = std::nullopt)
            : dim_(dim), labels_(std::move(labels)), c_(std::move(tensor)), parameter_(parameter)
        {
            if (dim_ <= 0)
                throw ShapeError("Lie algebra dimension must be positive");
            if (labels_.empty())
                labels_ = default_labels(dim_);
            if (static_cast<Index>(labels_.size()) != dim_)
                throw ShapeError("expected " + std::to_string(dim_) + " labels, got " +
                                 std::to_string(labels_.size()));
            if (static_cast<Index>(c_.size()) != dim_ * dim_ * dim_)
                throw ShapeError("structure tensor must hold dim^3 entries");
        }

        /// Builds the tensor from the listed constants, filling the
        /// antisymmetric partner c(j, i, k) = -c(i, j, k) of each entry.
        static LieAlgebraT from_constants(Index dim, std::vector<std::string> labels,
                                          const std::vector<Entry>& entries,
                                          std::optional<Scalar> parameter = std::nullopt)
        {
            if (dim <= 0)
                throw ShapeError("Lie algebra dimension must be positive");
            LieAlgebraT algebra(dim, std::move(labels),
                                std::vector<Scalar>(static_cast<std::size_t>(dim * dim * dim), Scalar(0)),
                                parameter);
            for (const auto& e : entries)
                algebra.assign(e.i, e.j, e.k, e.value);
            return algebra;
        }

        static LieAlgebraT abelian(Index dim)
        {
            return from_constants(dim, {}, {});
        }

        Index dim() const noexcept { return dim_; }
        const std::vector<std::string>& labels() const noexcept { return labels_; }
        const std::vector<Scalar>& tensor() const noexcept { return c_; }

        /// Construction parameter of parametrised families (omega for Newton-Hooke).
        std::optional<Scalar> parameter() const noexcept { return parameter_; }

        Scalar operator()(Index i, Index j, Index k) const
        {
            return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
        }

        /// Copy with c(i, j, k) = value and c(j, i, k) = -value.
        LieAlgebraT with_constant(Index i, Index j, Index k, Scalar value) const
        {
            LieAlgebraT copy = *this;
            copy.assign(i, j, k, value);
            return copy;
        }

    private:
        static std::vector<std::string> default_labels(Index dim)
        {
            std::vector<std::string> out;
            for (Index i = 0; i < dim; ++i)
                out.push_back("J" + std::to_string(i + 1));
            return out;
        }

        void assign(Index i, Index j, Index k, Scalar value)
        {
            if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
                throw std::out_of_range("structure constant index out of range");
            if (i == j && value != Scalar(0))
                throw ShapeError("c(i, i, k) must vanish");
            at(i, j, k) = value;
            at(j, i, k) = -value;
        }

        Scalar& at(Index i, Index j, Index k)
        {
            return c_[static_cast<std::size_t>((i * dim_ + j) * dim_ + k)];
        }

        Index dim_ = 0;
        std::vector<std::string> labels_;
        std::vector<Scalar> c_;
        std::optional<Scalar> parameter_;
    };

    using LieAlgebra = LieAlgebraT<double>;

    /// (1+1) Newton-Hooke algebra in the basis (M, H, P, K):
    /// [H, P] = omega^2 K, [H, K] = -P, [P, K] = -M.
    template <typename Scalar = double>
    LieAlgebraT<Scalar> nh_algebra(Scalar omega)
    {
        using std::isfinite;
        if (!isfinite(omega) || !(omega > Scalar(0)))
            throw DomainError("Newton-Hooke frequency must be positive and finite");
        return LieAlgebraT<Scalar>::from_constants(4, {"M", "H", "P", "K"},
                                                   {{kH, kP, kK, omega * omega},
                                                    {kH, kK, kP, Scalar(-1)},
                                                    {kP, kK, kM, Scalar(-1)}},
                                                   omega);
    }

    /// Three-dimensional Heisenberg algebra in the basis (M, P, K) with [K, P] = M.
    template <typename Scalar = double>
    LieAlgebraT<Scalar> heisenberg_algebra()
    {
        return LieAlgebraT<Scalar>::from_constants(3, {"M", "P", "K"}, {{2, 1, 0, Scalar(1)}});
    }

    template <typename Scalar>
    struct ValidationReport
    {
        bool passed = true;
        Scalar antisymmetry_residual = 0;
        Scalar jacobi_residual = 0;
        bool finite = true;
        // 0-based (i, j, k) of the worst antisymmetry violation.
        std::optional<std::array<Index, 3>> antisymmetry_at;
        // 0-based (i, j, k, l) of the worst Jacobi violation, l the output component.
        std::optional<std::array<Index, 4>> jacobi_at;
    };

    /// Checks antisymmetry and the Jacobi identity
    ///   sum_m c(i,j,m) c(m,k,l) + c(j,k,m) c(m,i,l) + c(k,i,m) c(m,j,l) = 0
    /// over all index quadruples. The reported location is the first
    /// lexicographic quadruple attaining the largest residual above tol.
    template <typename Scalar>
    ValidationReport<Scalar> validate(const LieAlgebraT<Scalar>& g, Scalar tol = Scalar(1e-12))
    {
        using std::abs;
        using std::isfinite;
        ValidationReport<Scalar> report;
        const Index n = g.dim();

        for (const Scalar& x : g.tensor())
            if (!isfinite(x))
                report.finite = false;
        if (!report.finite)
        {
            report.passed = false;
            return report;
        }

        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                {
                    const Scalar r = abs(g(i, j, k) + g(j, i, k));
                    if (r > report.antisymmetry_residual)
                    {
                        report.antisymmetry_residual = r;
                        if (r > tol)
                            report.antisymmetry_at = std::array<Index, 3>{i, j, k};
                    }
                }

        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                for (Index k = 0; k < n; ++k)
                    for (Index l = 0; l < n; ++l)
                    {
                        Scalar sum = 0;
                        for (Index m = 0; m < n; ++m)
                            sum += g(i, j, m) * g(m, k, l) + g(j, k, m) * g(m, i, l) + g(k, i, m) * g(m, j, l);
                        const Scalar r = abs(sum);
                        if (r > report.jacobi_residual)
                        {
                            report.jacobi_residual = r;
                            if (r > tol)
                                report.jacobi_at = std::array<Index, 4>{i, j, k, l};
                        }
                    }

        report.passed = report.antisymmetry_residual <= tol && report.jacobi_residual <= tol;
        return report;
    }

    /// Adjoint matrix of generator i: entry (j, k) = c(i, k, j).
    template <typename Scalar>
    MatrixX<Scalar> ad_matrix(const LieAlgebraT<Scalar>& g, Index i)
    {
        if (i < 0 || i >= g.dim())
            throw std::out_of_range("generator index " + std::to_string(i) + " out of range");
        MatrixX<Scalar> ad(g.dim(), g.dim());
        for (Index j = 0; j < g.dim(); ++j)
            for (Index k = 0; k < g.dim(); ++k)
                ad(j, k) = g(i, k, j);
        return ad;
    }

    /// Indices of generators whose adjoint matrices vanish within tol.
    template <typename Scalar>
    std::vector<Index> center(const LieAlgebraT<Scalar>& g, Scalar tol = Scalar(1e-12))
    {
        std::vector<Index> out;
        for (Index i = 0; i < g.dim(); ++i)
            if (ad_matrix(g, i).cwiseAbs().maxCoeff() <= tol)
                out.push_back(i);
        return out;
    }

    /// Reads the algebra text format:
    ///   dim <n>
    ///   labels <l1> ... <ln>        (optional)
    ///   <i> <j> <k> <value>         (1-based, one per nonzero constant)
    /// Blank lines and lines starting with '#' are skipped. Throws ParseError.
    LieAlgebra parse_algebra(const std::string& text);
    LieAlgebra read_algebra_file(const std::string& path);

    /// Writes the nonzero constants with i < j in the same text format.
    std::string format_algebra(const LieAlgebra& g);
} // namespace orbitkit
