#include <orbitkit/csv.hpp>
#include <orbitkit/damped_map.hpp>
#include <orbitkit/errors.hpp>

#include <Eigen/LU>

#include <cmath>
#include <ostream>

namespace orbitkit
{
    DampedParams::DampedParams(double m, double gamma, double omega0) : m_(m), gamma_(gamma), omega0_(omega0)
    {
        if (!std::isfinite(m) || !(m > 0.0))
            throw DomainError("mass must be positive");
        if (!std::isfinite(gamma) || gamma < 0.0)
            throw DomainError("friction must be non-negative");
        if (!std::isfinite(omega0) || !(omega0 > 0.0))
            throw DomainError("undamped frequency omega0 must be positive");
        if (!(omega0 > gamma))
            throw DomainError("not underdamped: need omega0 > gamma = beta/2m (omega0 = " + csv::format(omega0) +
                              ", gamma = " + csv::format(gamma) + ")");
        omega_ = std::sqrt(omega0 * omega0 - gamma * gamma);
    }

    DampedParams DampedParams::from_friction(double m, double beta, double omega0)
    {
        if (!std::isfinite(m) || !(m > 0.0))
            throw DomainError("mass must be positive");
        return DampedParams(m, beta / (2.0 * m), omega0);
    }

    DampedParams DampedParams::from_gamma(double m, double gamma, double omega0)
    {
        return DampedParams(m, gamma, omega0);
    }

    double damped_hamiltonian(const DampedParams& params, const DampedState& s)
    {
        const double m = params.mass();
        const double e = std::exp(2.0 * params.gamma() * s.t);
        return s.p_can * s.p_can / (2.0 * m * e) + 0.5 * m * params.omega0() * params.omega0() * e * s.x * s.x;
    }

    BracketTable bracket_table(const DampedParams& params, double t)
    {
        const double e = std::exp(2.0 * params.gamma() * t);
        return {t, params.omega0() * params.omega0() * e, -1.0 / e, params.mass()};
    }

    std::vector<PhasePolynomial> frozen_generators(const DampedParams& params, double t)
    {
        const double m = params.mass();
        const double e = std::exp(2.0 * params.gamma() * t);
        const double w0 = params.omega0();
        PhasePolynomial h = PhasePolynomial::monomial(2, 0, 1.0 / (2.0 * m * e)) +
                            PhasePolynomial::monomial(0, 2, w0 * w0 * e / (2.0 * m));
        return {PhasePolynomial::constant(m), h, PhasePolynomial::p(), PhasePolynomial::k()};
    }

    Eigen::Matrix2d forward_matrix(const DampedParams& params, double t)
    {
        const double g = params.gamma();
        const double e = std::exp(g * t);
        Eigen::Matrix2d a;
        a << 1.0 / e, params.mass() * g * e, 0.0, e;
        return a;
    }

    Eigen::Matrix2d inverse_matrix(const DampedParams& params, double t)
    {
        const double g = params.gamma();
        const double e = std::exp(g * t);
        Eigen::Matrix2d a;
        a << e, -params.mass() * g * e, 0.0, 1.0 / e;
        return a;
    }

    NewState to_new(const DampedParams& params, const DampedState& s)
    {
        const Eigen::Vector2d pq = forward_matrix(params, s.t) * Eigen::Vector2d(s.p_can, s.x);
        return {s.t, pq(1), pq(0)};
    }

    DampedState from_new(const DampedParams& params, const NewState& n)
    {
        const Eigen::Vector2d px = inverse_matrix(params, n.t) * Eigen::Vector2d(n.p, n.q);
        return {n.t, px(1), px(0)};
    }

    CanonicityCheck canonicity_check(const DampedParams& params, double t)
    {
        const double det = forward_matrix(params, t).determinant();
        return {det, std::abs(det - 1.0)};
    }

    double transformed_hamiltonian(const DampedParams& params, const NewState& n)
    {
        const double m = params.mass();
        return n.p * n.p / (2.0 * m) + 0.5 * m * params.omega() * params.omega() * n.q * n.q;
    }

    double generating_function_rate(const DampedParams& params, const NewState& n)
    {
        const double g = params.gamma();
        return g * n.q * n.p - params.mass() * g * g * n.q * n.q;
    }

    std::vector<PhasePolynomial> transformed_generators(const DampedParams& params)
    {
        return nh_generators(params.mass(), params.omega());
    }

    std::vector<DampedSample> damped_trajectory(const DampedParams& params, double x0, double v0, double t0,
                                                double t1, double dt, Method method)
    {
        const double m = params.mass();
        const double g = params.gamma();
        const double w0sq = params.omega0() * params.omega0();
        const double w = params.omega();

        const NewState start = to_new(params, {t0, x0, m * v0 * std::exp(2.0 * g * t0)});
        // Orbit chart of the transformed system: p = P, k = m Q.
        const OrbitChart chart(m, 0.0, w);
        const Trajectory traj = integrate(chart, start.p, m * start.q, t0, t1, dt, method);

        auto map_back = [&](double t, double p, double k) { return from_new(params, {t, k / m, p}); };
        auto damped_residual = [&](double x, double xdot, double xddot) {
            return std::abs(xddot + 2.0 * g * xdot + w0sq * x);
        };

        std::vector<DampedSample> out;
        out.reserve(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i)
        {
            const double t = traj.times[i];
            const double p = traj.points[i](kP);
            const double k = traj.points[i](kK);
            const DampedState old = map_back(t, p, k);

            DampedSample s;
            s.t = t;
            s.x = old.x;
            s.xdot = old.p_can * std::exp(-2.0 * g * t) / m;
            s.p_new = p;
            s.q = k / m;

            if (method == Method::exact)
            {
                const double q = s.q;
                const double qdot = p / m;
                const double qddot = -w * w * q;
                const double decay = std::exp(-g * t);
                const double xdot = decay * (qdot - g * q);
                const double xddot = decay * (qddot - 2.0 * g * qdot + g * g * q);
                s.residual = damped_residual(decay * q, xdot, xddot);
            }
            else
            {
                const double h = dt / 10.0;
                const Eigen::Vector2d here(p, k);
                const Eigen::Vector2d fwd = step(chart, here, h, method);
                const Eigen::Vector2d bwd = step(chart, here, -h, method);
                const double xp = map_back(t + h, fwd(0), fwd(1)).x;
                const double xm = map_back(t - h, bwd(0), bwd(1)).x;
                const double xdot = (xp - xm) / (2.0 * h);
                const double xddot = (xp - 2.0 * s.x + xm) / (h * h);
                s.residual = damped_residual(s.x, xdot, xddot);
            }
            out.push_back(s);
        }
        return out;
    }

    void write_damped_csv(std::ostream& os, const std::vector<DampedSample>& samples)
    {
        csv::write_header(os, {"t", "x", "xdot", "P", "Q", "residual"});
        for (const auto& s : samples)
            csv::write_row(os, {s.t, s.x, s.xdot, s.p_new, s.q, s.residual});
    }
} // namespace orbitkit
