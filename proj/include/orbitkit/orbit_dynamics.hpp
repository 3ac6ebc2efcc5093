#pragma once

#include <orbitkit/invariants.hpp>
#include <orbitkit/types.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace orbitkit
{
    /// Coadjoint orbit of the Newton-Hooke group at fixed invariants
    /// (C1, C2) = (m, c2), charted globally by (p, k). The chart map embeds
    /// (p, k) as (m, h~(p, k), p, k) with
    ///   h~(p, k) = p^2 / 2m + omega^2 k^2 / 2m - omega^2 c2 / 2m.
    class OrbitChart
    {
    public:
        /// Throws DomainError for m = 0 (the singular stratum) or omega <= 0.
        OrbitChart(double m, double c2, double omega);

        /// Chart through a given dual point: (C1, C2) read off the point.
        static OrbitChart through(const DualVector& xi, double omega);

        double mass() const noexcept { return m_; }
        double omega() const noexcept { return omega_; }
        double c2() const noexcept { return c2_; }
        double period() const;

        double reduced_hamiltonian(double p, double k) const;
        DualVector embed(double p, double k) const;

        /// Poisson tensor [[0, -m], [m, 0]] in the (p, k) chart.
        Eigen::Matrix2d poisson_tensor() const;

    private:
        double m_;
        double c2_;
        double omega_;
    };

    OrbitChart make_orbit(double c1, double c2, double omega);

    /// (dp/dt, dk/dt) = (-omega^2 k, p).
    Eigen::Vector2d hamiltonian_vector_field(const OrbitChart& chart, double p, double k);

    enum class Method
    {
        exact,
        rk4,
        midpoint,
    };

    std::string_view method_name(Method m);
    /// Accepts "exact", "rk4" or "midpoint"; throws std::invalid_argument otherwise.
    Method parse_method(std::string_view name);

    struct Trajectory
    {
        std::vector<double> times;
        std::vector<DualVector> points;
        std::vector<double> energy;  // h~ at each sample
        std::vector<double> c2;      // C2 of the embedded point
        Method method = Method::exact;
        double step = 0;

        std::size_t size() const noexcept { return times.size(); }
    };

    /// Integrates from (p0, k0) at t0 to t1 with nominal step dt. Samples sit
    /// at t0 + i dt; a final shorter step lands exactly on t1. `exact`
    /// evaluates the rotation solution from the initial state at every
    /// sample; `rk4` is classical Runge-Kutta; `midpoint` is the implicit
    /// midpoint rule solved as a 2x2 linear system per step.
    Trajectory integrate(const OrbitChart& chart, double p0, double k0, double t0, double t1, double dt,
                         Method method);

    /// One step of the given method from (p, k) over dt (dt may be negative).
    Eigen::Vector2d step(const OrbitChart& chart, const Eigen::Vector2d& state, double dt, Method method);

    struct DriftReport
    {
        double energy = 0;
        double casimir = 0;
    };

    /// Sup-norm drift of h~ and C2 relative to their initial values
    /// (absolute when the initial value is zero).
    DriftReport drift_report(const Trajectory& traj);

    /// CSV with header t,m,h,p,k,c2 and 17 significant digits.
    void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
} // namespace orbitkit
