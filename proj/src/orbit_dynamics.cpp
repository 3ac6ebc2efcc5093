#include <orbitkit/orbit_dynamics.hpp>
#include <orbitkit/csv.hpp>
#include <orbitkit/errors.hpp>

#include <Eigen/LU>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace orbitkit
{
    OrbitChart::OrbitChart(double m, double c2, double omega) : m_(m), c2_(c2), omega_(omega)
    {
        if (!std::isfinite(m) || !std::isfinite(c2) || !std::isfinite(omega))
            throw DomainError("orbit parameters must be finite");
        if (m == 0.0)
            throw DomainError("C1 = m = 0 lies on the singular stratum: its orbits are flattened cylinders "
                              "with unrestricted h and are not charted");
        if (!(omega > 0.0))
            throw DomainError("omega must be positive");
    }

    OrbitChart OrbitChart::through(const DualVector& xi, double omega)
    {
        const auto inv = orbit_invariants(xi, omega);
        return OrbitChart(inv.c1, inv.c2, omega);
    }

    double OrbitChart::period() const { return 2.0 * M_PI / omega_; }

    double OrbitChart::reduced_hamiltonian(double p, double k) const
    {
        const double w2 = omega_ * omega_;
        return p * p / (2.0 * m_) + w2 * k * k / (2.0 * m_) - w2 * c2_ / (2.0 * m_);
    }

    DualVector OrbitChart::embed(double p, double k) const
    {
        return make_dual(m_, reduced_hamiltonian(p, k), p, k);
    }

    Eigen::Matrix2d OrbitChart::poisson_tensor() const
    {
        Eigen::Matrix2d lambda;
        lambda << 0.0, -m_, m_, 0.0;
        return lambda;
    }

    OrbitChart make_orbit(double c1, double c2, double omega) { return OrbitChart(c1, c2, omega); }

    Eigen::Vector2d hamiltonian_vector_field(const OrbitChart& chart, double p, double k)
    {
        return {-chart.omega() * chart.omega() * k, p};
    }

    std::string_view method_name(Method m)
    {
        switch (m)
        {
        case Method::exact:
            return "exact";
        case Method::rk4:
            return "rk4";
        case Method::midpoint:
            return "midpoint";
        }
        return "unknown";
    }

    Method parse_method(std::string_view name)
    {
        if (name == "exact")
            return Method::exact;
        if (name == "rk4")
            return Method::rk4;
        if (name == "midpoint")
            return Method::midpoint;
        throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected exact|rk4|midpoint)");
    }

    namespace
    {
        Eigen::Vector2d rotate(const OrbitChart& chart, const Eigen::Vector2d& s, double dt)
        {
            const double w = chart.omega();
            const double c = std::cos(w * dt);
            const double sn = std::sin(w * dt);
            return {s(0) * c - w * s(1) * sn, s(1) * c + s(0) / w * sn};
        }

        Eigen::Matrix2d field_matrix(const OrbitChart& chart)
        {
            Eigen::Matrix2d a;
            a << 0.0, -chart.omega() * chart.omega(), 1.0, 0.0;
            return a;
        }
    } // namespace

    Eigen::Vector2d step(const OrbitChart& chart, const Eigen::Vector2d& s, double dt, Method method)
    {
        switch (method)
        {
        case Method::exact:
            return rotate(chart, s, dt);
        case Method::rk4: {
            auto f = [&](const Eigen::Vector2d& z) { return hamiltonian_vector_field(chart, z(0), z(1)); };
            const Eigen::Vector2d k1 = f(s);
            const Eigen::Vector2d k2 = f(s + 0.5 * dt * k1);
            const Eigen::Vector2d k3 = f(s + 0.5 * dt * k2);
            const Eigen::Vector2d k4 = f(s + dt * k3);
            return s + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        case Method::midpoint: {
            // (I - dt/2 A) z' = (I + dt/2 A) z for the linear field z' = A z.
            const Eigen::Matrix2d a = field_matrix(chart);
            const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
            return (id - 0.5 * dt * a).partialPivLu().solve((id + 0.5 * dt * a) * s);
        }
        }
        throw std::invalid_argument("unknown method");
    }

    Trajectory integrate(const OrbitChart& chart, double p0, double k0, double t0, double t1, double dt,
                         Method method)
    {
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw DomainError("step size must be positive and finite");
        if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0)
            throw DomainError("integration interval must satisfy t0 <= t1");
        if (!std::isfinite(p0) || !std::isfinite(k0))
            throw DomainError("initial state must be finite");

        Trajectory traj;
        traj.method = method;
        traj.step = dt;

        auto record = [&](double t, const Eigen::Vector2d& s) {
            const DualVector xi = chart.embed(s(0), s(1));
            traj.times.push_back(t);
            traj.points.push_back(xi);
            traj.energy.push_back(xi(kH));
            traj.c2.push_back(orbit_invariants(xi, chart.omega()).c2);
        };

        const Eigen::Vector2d initial(p0, k0);
        record(t0, initial);

        const double span = t1 - t0;
        // Trailing remainders below this fraction of dt are absorbed into the last step.
        const double snap = 1e-9 * dt;
        const auto full_steps = static_cast<long long>(std::floor((span + snap) / dt));

        Eigen::Vector2d state = initial;
        double t_prev = t0;
        auto advance = [&](double t) {
            if (method == Method::exact)
                state = rotate(chart, initial, t - t0);
            else
                state = step(chart, state, t - t_prev, method);
            if (!state.allFinite())
                throw std::runtime_error("non-finite state during integration");
            record(t, state);
            t_prev = t;
        };

        for (long long i = 1; i <= full_steps; ++i)
        {
            double t = t0 + static_cast<double>(i) * dt;
            if (i == full_steps && std::abs(t1 - t) <= snap)
                t = t1;
            if (t > t1)
                t = t1;
            if (t <= t_prev)
                continue;
            advance(t);
        }
        if (t1 - t_prev > snap)
            advance(t1);
        return traj;
    }

    DriftReport drift_report(const Trajectory& traj)
    {
        if (traj.size() == 0)
            throw std::invalid_argument("drift_report needs a nonempty trajectory");
        auto drift = [](const std::vector<double>& xs) {
            const double ref = xs.front();
            double worst = 0.0;
            for (double x : xs)
                worst = std::max(worst, std::abs(x - ref));
            return ref != 0.0 ? worst / std::abs(ref) : worst;
        };
        return {drift(traj.energy), drift(traj.c2)};
    }

    void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
    {
        csv::write_header(os, {"t", "m", "h", "p", "k", "c2"});
        for (std::size_t i = 0; i < traj.size(); ++i)
        {
            const auto& xi = traj.points[i];
            csv::write_row(os, {traj.times[i], xi(kM), xi(kH), xi(kP), xi(kK), traj.c2[i]});
        }
    }
} // namespace orbitkit
