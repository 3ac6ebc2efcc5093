#pragma once

// Test-only reference computations. Nothing here calls into the library
// routine it is used to check.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle
{
    // Structure constants as a plain nested array, filled by hand in tests.
    template <int N>
    using Tensor = std::array<std::array<std::array<double, N>, N>, N>;

    template <int N>
    void set_constant(Tensor<N>& c, int i, int j, int k, double v)
    {
        c[i][j][k] = v;
        c[j][i][k] = -v;
    }

    struct JacobiWorst
    {
        double residual = 0;
        std::array<int, 4> at{-1, -1, -1, -1};
    };

    template <int N>
    JacobiWorst brute_force_jacobi(const Tensor<N>& c)
    {
        JacobiWorst out;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int k = 0; k < N; ++k)
                    for (int l = 0; l < N; ++l)
                    {
                        double s = 0;
                        for (int m = 0; m < N; ++m)
                            s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
                        if (std::abs(s) > out.residual)
                        {
                            out.residual = std::abs(s);
                            out.at = {i, j, k, l};
                        }
                    }
        return out;
    }

    /// Direct integration of x'' + 2 gamma x' + omega0^2 x = 0 with classical
    /// RK4 on (x, x') using `substeps` steps between consecutive output times.
    inline std::vector<std::array<double, 2>> damped_ode(double gamma, double omega0, double x0, double v0,
                                                         const std::vector<double>& times, int substeps)
    {
        auto f = [&](const std::array<double, 2>& s) {
            return std::array<double, 2>{s[1], -2.0 * gamma * s[1] - omega0 * omega0 * s[0]};
        };
        std::vector<std::array<double, 2>> out;
        std::array<double, 2> s{x0, v0};
        out.push_back(s);
        for (std::size_t i = 1; i < times.size(); ++i)
        {
            const double h = (times[i] - times[i - 1]) / substeps;
            for (int q = 0; q < substeps; ++q)
            {
                const auto k1 = f(s);
                const auto k2 = f({s[0] + 0.5 * h * k1[0], s[1] + 0.5 * h * k1[1]});
                const auto k3 = f({s[0] + 0.5 * h * k2[0], s[1] + 0.5 * h * k2[1]});
                const auto k4 = f({s[0] + h * k3[0], s[1] + h * k3[1]});
                for (int c = 0; c < 2; ++c)
                    s[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            }
            out.push_back(s);
        }
        return out;
    }

    /// Central difference of a scalar function.
    inline double central_difference(const std::function<double(double)>& f, double x, double h)
    {
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }

    struct Rng
    {
        explicit Rng(std::uint64_t seed) : engine(seed) {}
        double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
        std::mt19937_64 engine;
    };
} // namespace oracle
