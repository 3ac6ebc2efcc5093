#pragma once

#include <orbitkit/algebra.hpp>

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orbitkit
{
    /// Real polynomial in the phase-space pair (p, k) of total degree <= 4.
    /// Keys are exponent pairs (deg_p, deg_k); zero coefficients are never stored.
    class PhasePolynomial
    {
    public:
        using Exponents = std::pair<int, int>;
        static constexpr int kMaxDegree = 4;

        PhasePolynomial() = default;

        static PhasePolynomial constant(double c);
        static PhasePolynomial p();
        static PhasePolynomial k();
        static PhasePolynomial monomial(int deg_p, int deg_k, double coeff = 1.0);

        /// h(p, k) = p^2 / 2m + omega^2 k^2 / 2m.
        static PhasePolynomial oscillator_hamiltonian(double mass, double omega);

        const std::map<Exponents, double>& terms() const noexcept { return terms_; }
        double coefficient(int deg_p, int deg_k) const;
        bool is_zero() const noexcept { return terms_.empty(); }
        int degree() const noexcept;

        double operator()(double p, double k) const;

        PhasePolynomial d_dp() const;
        PhasePolynomial d_dk() const;

        PhasePolynomial& operator+=(const PhasePolynomial& rhs);
        PhasePolynomial& operator-=(const PhasePolynomial& rhs);
        PhasePolynomial& operator*=(double s);

        friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
        friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
        friend PhasePolynomial operator*(PhasePolynomial a, double s) { return a *= s; }
        friend PhasePolynomial operator*(double s, PhasePolynomial a) { return a *= s; }
        friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);

        friend bool operator==(const PhasePolynomial&, const PhasePolynomial&) = default;

        std::string to_string() const;

    private:
        void add_term(Exponents e, double c);

        std::map<Exponents, double> terms_;
    };

    /// Canonical bracket scaled by the mass, for the chart k = m x.
    struct BracketSpec
    {
        double mass_scale = 1.0;
    };

    /// {F, G} = m (dF/dk dG/dp - dF/dp dG/dk).
    PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g, const BracketSpec& spec);

    /// A pairwise bracket that leaves the span of the generators.
    struct ClosureFailure
    {
        Index first = 0;  // 0-based generator indices of the pair
        Index second = 0;
        double residual = 0;  // max abs coefficient of the residual
        PhasePolynomial remainder;
    };

    class DependentGeneratorsError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    using ExtractionResult = std::variant<LieAlgebra, ClosureFailure>;

    /// Fits {J_i, J_j} = c_ij^k J_k by least squares on monomial
    /// coefficients. Returns ClosureFailure for the first pair (i < j,
    /// lexicographic) whose residual exceeds tol. Throws
    /// DependentGeneratorsError if the generators are linearly dependent.
    ExtractionResult extract_structure_constants(const std::vector<PhasePolynomial>& generators,
                                                 const BracketSpec& spec, double tol = 1e-10,
                                                 std::vector<std::string> labels = {});

    /// Realised Newton-Hooke generators (m, h(p, k), p, k).
    std::vector<PhasePolynomial> nh_generators(double mass, double omega);
} // namespace orbitkit
