#include <orbitkit/invariants.hpp>
#include <orbitkit/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace orbitkit
{
    int symplectic_rank(const LieAlgebra& g, const RowVectorXd& xi, double tol)
    {
        return static_cast<int>(numerical_rank(structure_matrix(g, xi), tol));
    }

    std::vector<Monomial> monomial_basis(Index n, int max_degree)
    {
        std::vector<Monomial> out;
        Monomial e(static_cast<std::size_t>(n), 0);
        // Fills e[pos..] with `left` remaining degree, larger leading exponents first.
        std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int left) {
            if (pos + 1 == e.size())
            {
                e[pos] = left;
                out.push_back(e);
                return;
            }
            for (int x = left; x >= 0; --x)
            {
                e[pos] = x;
                fill(pos + 1, left - x);
            }
        };
        for (int d = 1; d <= max_degree; ++d)
            if (n > 0)
                fill(0, d);
        return out;
    }

    std::string monomial_name(const Monomial& e, const std::vector<std::string>& labels)
    {
        std::string out;
        for (std::size_t i = 0; i < e.size(); ++i)
        {
            if (e[i] == 0)
                continue;
            if (!out.empty())
                out += '*';
            out += labels[i];
            if (e[i] > 1)
                out += '^' + std::to_string(e[i]);
        }
        return out.empty() ? "1" : out;
    }

    namespace
    {
        int degree_of(const Monomial& e)
        {
            int d = 0;
            for (int x : e)
                d += x;
            return d;
        }

        double eval_monomial(const Monomial& e, const RowVectorXd& xi)
        {
            double v = 1.0;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int q = 0; q < e[i]; ++q)
                    v *= xi(static_cast<Index>(i));
            return v;
        }

        // d/dxi_r of the monomial.
        double eval_monomial_derivative(const Monomial& e, std::size_t r, const RowVectorXd& xi)
        {
            if (e[r] == 0)
                return 0.0;
            Monomial lowered = e;
            --lowered[r];
            return e[r] * eval_monomial(lowered, xi);
        }

        using SparsePoly = std::map<Monomial, double>;

        SparsePoly multiply(const SparsePoly& a, const SparsePoly& b)
        {
            SparsePoly out;
            for (const auto& [ea, ca] : a)
                for (const auto& [eb, cb] : b)
                {
                    Monomial e = ea;
                    for (std::size_t i = 0; i < e.size(); ++i)
                        e[i] += eb[i];
                    out[e] += ca * cb;
                }
            return out;
        }

        // Gauss-Jordan with partial pivoting on the rows of w, then each row
        // scaled so its largest-magnitude coefficient is +1.
        MatrixXd canonical_rows(MatrixXd w)
        {
            const Index rows = w.rows();
            const Index cols = w.cols();
            Index lead = 0;
            for (Index r = 0; r < rows && lead < cols; ++lead)
            {
                Index pivot = r;
                for (Index i = r + 1; i < rows; ++i)
                    if (std::abs(w(i, lead)) > std::abs(w(pivot, lead)))
                        pivot = i;
                if (std::abs(w(pivot, lead)) < 1e-10)
                    continue;
                w.row(r).swap(w.row(pivot));
                w.row(r) /= w(r, lead);
                for (Index i = 0; i < rows; ++i)
                    if (i != r)
                        w.row(i) -= w(i, lead) * w.row(r);
                ++r;
            }
            for (Index r = 0; r < rows; ++r)
            {
                for (Index c = 0; c < cols; ++c)
                    if (std::abs(w(r, c)) < 1e-13)
                        w(r, c) = 0.0;
                Index arg = 0;
                w.row(r).cwiseAbs().maxCoeff(&arg);
                if (w(r, arg) != 0.0)
                    w.row(r) /= w(r, arg);
            }
            return w;
        }

        std::vector<RowVectorXd> draw_samples(const LieAlgebra& g, int count, std::mt19937_64& rng,
                                              const FitOptions& opt, const std::vector<Index>& central)
        {
            std::uniform_real_distribution<double> coord(-opt.sample_radius, opt.sample_radius);
            std::vector<RowVectorXd> out;
            out.reserve(static_cast<std::size_t>(count));
            while (static_cast<int>(out.size()) < count)
            {
                RowVectorXd xi(g.dim());
                for (Index i = 0; i < g.dim(); ++i)
                    xi(i) = coord(rng);
                bool near_singular = false;
                for (Index c : central)
                    near_singular = near_singular || std::abs(xi(c)) < opt.central_gap;
                if (!near_singular)
                    out.push_back(xi);
            }
            return out;
        }

        // Stacked rows Lambda(xi_s) * grad(monomial_c)(xi_s) for the given columns.
        MatrixXd casimir_system(const LieAlgebra& g, const std::vector<RowVectorXd>& samples,
                                const std::vector<Monomial>& monomials, const std::vector<Index>& columns)
        {
            const Index n = g.dim();
            MatrixXd system(n * static_cast<Index>(samples.size()), static_cast<Index>(columns.size()));
            for (std::size_t s = 0; s < samples.size(); ++s)
            {
                const MatrixXd lambda = structure_matrix(g, samples[s]);
                MatrixXd grad(n, static_cast<Index>(columns.size()));
                for (std::size_t c = 0; c < columns.size(); ++c)
                    for (Index r = 0; r < n; ++r)
                        grad(r, static_cast<Index>(c)) = eval_monomial_derivative(
                            monomials[static_cast<std::size_t>(columns[c])], static_cast<std::size_t>(r), samples[s]);
                system.middleRows(static_cast<Index>(s) * n, n) = lambda * grad;
            }
            return system;
        }

        bool verify(const LieAlgebra& g, const CasimirBasis& basis, const std::vector<RowVectorXd>& samples,
                    double tol)
        {
            for (const auto& xi : samples)
            {
                const MatrixXd lambda = structure_matrix(g, xi);
                for (Index r = 0; r < basis.size(); ++r)
                {
                    const VectorXd grad = basis.gradient(r, xi);
                    const double scale = lambda.norm() * grad.norm();
                    if ((lambda * grad).norm() > tol * std::max(scale, 1e-300))
                        return false;
                }
            }
            return true;
        }

        CasimirBasis fit_once(const LieAlgebra& g, int degree_cap, int sample_count, std::uint64_t seed,
                              const FitOptions& opt)
        {
            CasimirBasis basis;
            basis.dim = g.dim();
            basis.labels = g.labels();
            basis.monomials = monomial_basis(g.dim(), degree_cap);
            basis.seed_used = seed;
            const auto total = static_cast<Index>(basis.monomials.size());

            const auto central = center(g);
            std::mt19937_64 rng(seed);
            const auto samples = draw_samples(g, sample_count, rng, opt, central);

            std::vector<VectorXd> found;
            std::vector<int> found_degree;
            std::vector<SparsePoly> found_poly;

            for (int d = 1; d <= degree_cap; ++d)
            {
                std::vector<Index> columns;
                for (Index c = 0; c < total; ++c)
                    if (degree_of(basis.monomials[static_cast<std::size_t>(c)]) == d)
                        columns.push_back(c);
                const auto nd = static_cast<Index>(columns.size());

                // Casimirs of a Lie-Poisson structure split into homogeneous parts.
                const MatrixXd null = nullspace(casimir_system(g, samples, basis.monomials, columns), opt.null_tol);
                if (null.cols() == 0)
                    continue;

                // Degree-d products of generators found at lower degrees.
                std::vector<SparsePoly> products;
                std::function<void(std::size_t, int, SparsePoly)> expand = [&](std::size_t from, int left,
                                                                                SparsePoly acc) {
                    if (left == 0)
                    {
                        products.push_back(acc);
                        return;
                    }
                    for (std::size_t q = from; q < found_poly.size(); ++q)
                        if (found_degree[q] <= left)
                            expand(q, left - found_degree[q], multiply(acc, found_poly[q]));
                };
                SparsePoly one;
                one[Monomial(static_cast<std::size_t>(g.dim()), 0)] = 1.0;
                if (!found_poly.empty())
                    expand(0, d, one);

                MatrixXd decomposable(nd, static_cast<Index>(products.size()));
                for (std::size_t q = 0; q < products.size(); ++q)
                    for (Index c = 0; c < nd; ++c)
                    {
                        const auto it = products[q].find(basis.monomials[static_cast<std::size_t>(columns[c])]);
                        decomposable(c, static_cast<Index>(q)) = it == products[q].end() ? 0.0 : it->second;
                    }
                const MatrixXd qd = column_space(decomposable, 1e-10 * std::max(1.0, decomposable.norm()));
                const MatrixXd fresh = null - qd * (qd.transpose() * null);
                const MatrixXd span = column_space(fresh, 1e-6);
                if (span.cols() == 0)
                    continue;

                const MatrixXd rows = canonical_rows(span.transpose());
                for (Index r = 0; r < rows.rows(); ++r)
                {
                    VectorXd full = VectorXd::Zero(total);
                    SparsePoly poly;
                    for (Index c = 0; c < nd; ++c)
                    {
                        full(columns[static_cast<std::size_t>(c)]) = rows(r, c);
                        if (rows(r, c) != 0.0)
                            poly[basis.monomials[static_cast<std::size_t>(columns[c])]] = rows(r, c);
                    }
                    found.push_back(full);
                    found_degree.push_back(d);
                    found_poly.push_back(std::move(poly));
                }
            }

            basis.coefficients.resize(static_cast<Index>(found.size()), total);
            for (std::size_t r = 0; r < found.size(); ++r)
                basis.coefficients.row(static_cast<Index>(r)) = found[r].transpose();
            basis.degrees = found_degree;
            return basis;
        }
    } // namespace

    double CasimirBasis::evaluate(Index r, const RowVectorXd& xi) const
    {
        double sum = 0.0;
        for (std::size_t c = 0; c < monomials.size(); ++c)
            if (coefficients(r, static_cast<Index>(c)) != 0.0)
                sum += coefficients(r, static_cast<Index>(c)) * eval_monomial(monomials[c], xi);
        return sum;
    }

    VectorXd CasimirBasis::gradient(Index r, const RowVectorXd& xi) const
    {
        VectorXd grad = VectorXd::Zero(dim);
        for (std::size_t c = 0; c < monomials.size(); ++c)
        {
            const double coeff = coefficients(r, static_cast<Index>(c));
            if (coeff == 0.0)
                continue;
            for (Index i = 0; i < dim; ++i)
                grad(i) += coeff * eval_monomial_derivative(monomials[c], static_cast<std::size_t>(i), xi);
        }
        return grad;
    }

    VectorXd CasimirBasis::embed(const std::vector<std::pair<Monomial, double>>& terms) const
    {
        VectorXd out = VectorXd::Zero(static_cast<Index>(monomials.size()));
        for (const auto& [e, c] : terms)
        {
            const auto it = std::find(monomials.begin(), monomials.end(), e);
            if (it == monomials.end())
                throw std::out_of_range("monomial outside the fitted basis");
            out(it - monomials.begin()) += c;
        }
        return out;
    }

    CasimirBasis fit_casimirs(const LieAlgebra& g, int degree_cap, int sample_count, std::uint64_t seed,
                              const FitOptions& options)
    {
        if (degree_cap < 1)
            throw DomainError("degree cap must be at least 1");
        const auto monomial_count = monomial_basis(g.dim(), degree_cap).size();
        if (sample_count < 0 || static_cast<std::size_t>(sample_count) < 5 * monomial_count)
            throw DomainError("need at least " + std::to_string(5 * monomial_count) + " samples for " +
                              std::to_string(monomial_count) + " monomials");

        std::mt19937_64 verify_rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const auto central = center(g);
        for (int attempt = 0; attempt < options.max_attempts; ++attempt)
        {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * 0x100000001b3ULL;
            CasimirBasis basis = fit_once(g, degree_cap, sample_count, s, options);
            const auto fresh = draw_samples(g, std::max(8, sample_count / 4), verify_rng, options, central);
            if (verify(g, basis, fresh, options.verify_tol))
                return basis;
        }
        throw std::runtime_error("Casimir fit failed verification after " + std::to_string(options.max_attempts) +
                                 " sampling attempts");
    }

    OrbitInvariants orbit_invariants(const DualVector& xi, double omega)
    {
        if (!(omega > 0.0))
            throw DomainError("omega must be positive");
        const double w2 = omega * omega;
        return {xi(kM), xi(kK) * xi(kK) - 2.0 * xi(kM) * xi(kH) / w2 + xi(kP) * xi(kP) / w2};
    }

    double null_stratum_invariant(const DualVector& xi, double omega)
    {
        if (!(omega > 0.0))
            throw DomainError("omega must be positive");
        return xi(kK) * xi(kK) + xi(kP) * xi(kP) / (omega * omega);
    }

    MatrixXd nh_casimir_coefficients(const CasimirBasis& basis, double omega)
    {
        if (basis.dim != 4)
            throw ShapeError("Newton-Hooke Casimirs need a 4-dimensional basis");
        const double w2 = omega * omega;
        MatrixXd out(2, static_cast<Index>(basis.monomials.size()));
        out.row(0) = basis.embed({{{1, 0, 0, 0}, 1.0}}).transpose();
        out.row(1) = basis.embed({{{0, 0, 0, 2}, 1.0}, {{1, 1, 0, 0}, -2.0 / w2}, {{0, 0, 2, 0}, 1.0 / w2}}).transpose();
        return out;
    }
} // namespace orbitkit
