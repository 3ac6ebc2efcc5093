#pragma once

#include <orbitkit/orbit_dynamics.hpp>
#include <orbitkit/realization.hpp>

#include <iosfwd>
#include <vector>

namespace orbitkit
{
    /// Underdamped oscillator x'' + 2 gamma x' + omega0^2 x = 0 with
    /// gamma = beta / 2m. The effective frequency is omega = sqrt(omega0^2 - gamma^2).
    class DampedParams
    {
    public:
        /// Throws DomainError unless m > 0, beta >= 0, omega0 > 0 and omega0 > gamma.
        static DampedParams from_friction(double m, double beta, double omega0);
        static DampedParams from_gamma(double m, double gamma, double omega0);

        double mass() const noexcept { return m_; }
        double beta() const noexcept { return 2.0 * m_ * gamma_; }
        double gamma() const noexcept { return gamma_; }
        double omega0() const noexcept { return omega0_; }
        double omega() const noexcept { return omega_; }

    private:
        DampedParams(double m, double gamma, double omega0);

        double m_;
        double gamma_;
        double omega0_;
        double omega_;
    };

    /// Old canonical variables: displacement x and canonical momentum
    /// P_can = m x' e^{2 gamma t}.
    struct DampedState
    {
        double t = 0;
        double x = 0;
        double p_can = 0;
    };

    /// New variables Q = e^{gamma t} x and P (see to_new).
    struct NewState
    {
        double t = 0;
        double q = 0;
        double p = 0;
    };

    /// h = P_can^2 e^{-2 gamma t} / 2m + m omega0^2 e^{2 gamma t} x^2 / 2.
    double damped_hamiltonian(const DampedParams& params, const DampedState& s);

    /// Coefficients of the time-dependent brackets in the chart k = m x:
    ///   {h, P_can} = h_p * k,  {h, k} = h_k * P_can,  {k, P_can} = k_p.
    struct BracketTable
    {
        double t = 0;
        double h_p = 0;  // omega0^2 e^{2 gamma t}
        double h_k = 0;  // -e^{-2 gamma t}
        double k_p = 0;  // m
    };

    BracketTable bracket_table(const DampedParams& params, double t);

    /// Generators (m, h(P_can, k, t), P_can, k) frozen at time t, as phase
    /// polynomials in (P_can, k) for the mass-scaled bracket.
    std::vector<PhasePolynomial> frozen_generators(const DampedParams& params, double t);

    /// [P; Q] = [[e^{-gamma t}, m gamma e^{gamma t}], [0, e^{gamma t}]] [P_can; x].
    Eigen::Matrix2d forward_matrix(const DampedParams& params, double t);
    /// [P_can; x] = [[e^{gamma t}, -m gamma e^{gamma t}], [0, e^{-gamma t}]] [P; Q].
    Eigen::Matrix2d inverse_matrix(const DampedParams& params, double t);

    NewState to_new(const DampedParams& params, const DampedState& s);
    DampedState from_new(const DampedParams& params, const NewState& n);

    struct CanonicityCheck
    {
        double determinant = 0;
        double deviation = 0;  // |det - 1|
    };

    /// Determinant of the (P_can, x) -> (P, Q) Jacobian; one degree of
    /// freedom is canonical iff it equals 1.
    CanonicityCheck canonicity_check(const DampedParams& params, double t);

    /// H(P, Q) = P^2 / 2m + m (omega0^2 - gamma^2) Q^2 / 2.
    double transformed_hamiltonian(const DampedParams& params, const NewState& n);

    /// dF2/dt = gamma Q P - m gamma^2 Q^2, which equals H - h at corresponding states.
    double generating_function_rate(const DampedParams& params, const NewState& n);

    /// Generators (m, H, P, K = m Q) of the transformed autonomous system as
    /// phase polynomials in (P, K); they close onto nh_algebra(omega).
    std::vector<PhasePolynomial> transformed_generators(const DampedParams& params);

    struct DampedSample
    {
        double t = 0;
        double x = 0;
        double xdot = 0;
        double p_new = 0;
        double q = 0;
        double residual = 0;  // |x'' + 2 gamma x' + omega0^2 x|
    };

    /// Integrates the undamped Newton-Hooke dynamics of (P, K = m Q) at
    /// frequency omega, maps every sample back through from_new and reports
    /// the damped-equation residual. With `exact` the residual uses analytic
    /// derivatives of the mapped solution; with rk4/midpoint it uses central
    /// differences with h = dt/10 built from local integrator steps.
    std::vector<DampedSample> damped_trajectory(const DampedParams& params, double x0, double v0, double t0,
                                                double t1, double dt, Method method = Method::exact);

    /// CSV with header t,x,xdot,P,Q,residual.
    void write_damped_csv(std::ostream& os, const std::vector<DampedSample>& samples);
} // namespace orbitkit
