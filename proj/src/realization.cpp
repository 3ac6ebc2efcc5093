#include <orbitkit/realization.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <set>
#include <sstream>

namespace orbitkit
{
    PhasePolynomial PhasePolynomial::constant(double c) { return monomial(0, 0, c); }
    PhasePolynomial PhasePolynomial::p() { return monomial(1, 0); }
    PhasePolynomial PhasePolynomial::k() { return monomial(0, 1); }

    PhasePolynomial PhasePolynomial::monomial(int deg_p, int deg_k, double coeff)
    {
        if (deg_p < 0 || deg_k < 0)
            throw DomainError("negative exponent");
        PhasePolynomial out;
        out.add_term({deg_p, deg_k}, coeff);
        return out;
    }

    PhasePolynomial PhasePolynomial::oscillator_hamiltonian(double mass, double omega)
    {
        if (!(mass != 0.0) || !std::isfinite(mass))
            throw DomainError("oscillator mass must be nonzero and finite");
        return monomial(2, 0, 1.0 / (2.0 * mass)) + monomial(0, 2, omega * omega / (2.0 * mass));
    }

    double PhasePolynomial::coefficient(int deg_p, int deg_k) const
    {
        const auto it = terms_.find({deg_p, deg_k});
        return it == terms_.end() ? 0.0 : it->second;
    }

    int PhasePolynomial::degree() const noexcept
    {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e.first + e.second);
        return d;
    }

    double PhasePolynomial::operator()(double p, double k) const
    {
        double sum = 0.0;
        for (const auto& [e, c] : terms_)
            sum += c * std::pow(p, e.first) * std::pow(k, e.second);
        return sum;
    }

    PhasePolynomial PhasePolynomial::d_dp() const
    {
        PhasePolynomial out;
        for (const auto& [e, c] : terms_)
            if (e.first > 0)
                out.add_term({e.first - 1, e.second}, c * e.first);
        return out;
    }

    PhasePolynomial PhasePolynomial::d_dk() const
    {
        PhasePolynomial out;
        for (const auto& [e, c] : terms_)
            if (e.second > 0)
                out.add_term({e.first, e.second - 1}, c * e.second);
        return out;
    }

    PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& rhs)
    {
        for (const auto& [e, c] : rhs.terms_)
            add_term(e, c);
        return *this;
    }

    PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& rhs)
    {
        for (const auto& [e, c] : rhs.terms_)
            add_term(e, -c);
        return *this;
    }

    PhasePolynomial& PhasePolynomial::operator*=(double s)
    {
        if (s == 0.0)
        {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b)
    {
        PhasePolynomial out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return out;
    }

    void PhasePolynomial::add_term(Exponents e, double c)
    {
        if (e.first + e.second > kMaxDegree)
            throw DomainError("phase polynomial degree exceeds " + std::to_string(kMaxDegree));
        if (c == 0.0)
            return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted)
        {
            it->second += c;
            if (it->second == 0.0)
                terms_.erase(it);
        }
    }

    std::string PhasePolynomial::to_string() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        os.precision(17);
        bool first = true;
        for (const auto& [e, c] : terms_)
        {
            if (!first)
                os << " + ";
            os << c;
            if (e.first)
                os << "*p^" << e.first;
            if (e.second)
                os << "*k^" << e.second;
            first = false;
        }
        return os.str();
    }

    PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g, const BracketSpec& spec)
    {
        if (!(spec.mass_scale > 0.0))
            throw DomainError("bracket mass scale must be positive");
        PhasePolynomial out = f.d_dk() * g.d_dp() - f.d_dp() * g.d_dk();
        return out *= spec.mass_scale;
    }

    ExtractionResult extract_structure_constants(const std::vector<PhasePolynomial>& generators,
                                                 const BracketSpec& spec, double tol,
                                                 std::vector<std::string> labels)
    {
        const auto n = static_cast<Index>(generators.size());
        if (n == 0)
            throw ShapeError("no generators given");

        std::vector<PhasePolynomial> brackets(static_cast<std::size_t>(n * n));
        std::set<PhasePolynomial::Exponents> monomials;
        for (const auto& g : generators)
            for (const auto& [e, c] : g.terms())
                monomials.insert(e);
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
            {
                auto& b = brackets[static_cast<std::size_t>(i * n + j)];
                b = poisson_bracket(generators[static_cast<std::size_t>(i)],
                                    generators[static_cast<std::size_t>(j)], spec);
                for (const auto& [e, c] : b.terms())
                    monomials.insert(e);
            }

        const std::vector<PhasePolynomial::Exponents> basis(monomials.begin(), monomials.end());
        const auto rows = static_cast<Index>(basis.size());
        auto coefficients = [&](const PhasePolynomial& poly) {
            VectorXd v(rows);
            for (Index r = 0; r < rows; ++r)
                v(r) = poly.coefficient(basis[static_cast<std::size_t>(r)].first,
                                        basis[static_cast<std::size_t>(r)].second);
            return v;
        };

        MatrixXd A(rows, n);
        for (Index j = 0; j < n; ++j)
            A.col(j) = coefficients(generators[static_cast<std::size_t>(j)]);

        Eigen::ColPivHouseholderQR<MatrixXd> qr(A);
        qr.setThreshold(1e-12);
        if (rows < n || qr.rank() < n)
            throw DependentGeneratorsError("generators are linearly dependent (rank " +
                                           std::to_string(qr.rank()) + " < " + std::to_string(n) + ")");

        std::vector<LieAlgebra::Entry> entries;
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j)
            {
                const auto& b = brackets[static_cast<std::size_t>(i * n + j)];
                if (b.is_zero())
                    continue;
                const VectorXd rhs = coefficients(b);
                const VectorXd x = qr.solve(rhs);
                const VectorXd r = A * x - rhs;
                const double residual = r.cwiseAbs().maxCoeff();
                if (residual > tol)
                {
                    PhasePolynomial remainder;
                    for (Index q = 0; q < rows; ++q)
                        if (std::abs(r(q)) > tol)
                            remainder += PhasePolynomial::monomial(basis[static_cast<std::size_t>(q)].first,
                                                                   basis[static_cast<std::size_t>(q)].second,
                                                                   -r(q));
                    return ClosureFailure{i, j, residual, remainder};
                }
                for (Index k = 0; k < n; ++k)
                    if (x(k) != 0.0)
                        entries.push_back({i, j, k, x(k)});
            }

        return LieAlgebra::from_constants(n, std::move(labels), entries);
    }

    std::vector<PhasePolynomial> nh_generators(double mass, double omega)
    {
        return {PhasePolynomial::constant(mass), PhasePolynomial::oscillator_hamiltonian(mass, omega),
                PhasePolynomial::p(), PhasePolynomial::k()};
    }
} // namespace orbitkit
