#include "cli.hpp"

#include <orbitkit/orbitkit.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace orbitkit::cli
{
    namespace
    {
        struct Globals
        {
            std::string out_path;
            std::uint64_t seed = 42;
            std::optional<double> tol;
        };

        void require_positive(double value, const char* name)
        {
            if (!std::isfinite(value) || !(value > 0.0))
                throw DomainError(std::string(name) + " must be positive and finite");
        }

        void require_finite(double value, const char* name)
        {
            if (!std::isfinite(value))
                throw DomainError(std::string(name) + " must be finite");
        }

        std::string triple_name(const LieAlgebra& g, Index i, Index j, Index k)
        {
            return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ") = (" +
                   g.labels()[static_cast<std::size_t>(i)] + "," + g.labels()[static_cast<std::size_t>(j)] + "," +
                   g.labels()[static_cast<std::size_t>(k)] + ")";
        }

        // ---------------------------------------------------------------- validate

        struct ValidateArgs
        {
            std::string file;
        };

        int cmd_validate(const ValidateArgs& a, const Globals& gl, std::ostream& out)
        {
            const LieAlgebra g = read_algebra_file(a.file);
            const double tol = gl.tol.value_or(1e-12);
            const auto report = validate(g, tol);
            out << "dim " << g.dim() << '\n';
            out << "antisymmetry_residual " << csv::format(report.antisymmetry_residual) << '\n';
            out << "jacobi_residual " << csv::format(report.jacobi_residual) << '\n';
            if (report.passed)
            {
                out << "PASS\n";
                return kSuccess;
            }
            if (!report.finite)
                out << "FAIL non-finite structure constant\n";
            else if (report.antisymmetry_at)
            {
                const auto& [i, j, k] = *report.antisymmetry_at;
                out << "FAIL antisymmetry at " << triple_name(g, i, j, k) << '\n';
            }
            else if (report.jacobi_at)
            {
                const auto& [i, j, k, l] = *report.jacobi_at;
                out << "FAIL jacobi at triple " << triple_name(g, i, j, k) << " component " << l + 1 << " residual "
                    << csv::format(report.jacobi_residual) << '\n';
            }
            return kDomainFailure;
        }

        // ---------------------------------------------------------------- derive

        struct DeriveArgs
        {
            std::string system = "oscillator";
            double omega = 1.0;
            double m = 1.0;
            double beta = 0.0;
            double omega0 = 1.0;
            double t = 0.0;
        };

        int cmd_derive(const DeriveArgs& a, const Globals& gl, std::ostream& out)
        {
            std::vector<PhasePolynomial> gens;
            double mass = a.m;
            if (a.system == "oscillator")
            {
                require_positive(a.omega, "--omega");
                require_positive(a.m, "--m");
                gens = nh_generators(a.m, a.omega);
            }
            else
            {
                const auto params = DampedParams::from_friction(a.m, a.beta, a.omega0);
                mass = params.mass();
                gens = a.system == "damped" ? transformed_generators(params) : frozen_generators(params, a.t);
            }
            const auto result = extract_structure_constants(gens, BracketSpec{mass}, gl.tol.value_or(1e-10),
                                                            {"M", "H", "P", "K"});
            if (const auto* failure = std::get_if<ClosureFailure>(&result))
            {
                out << "# closure failure on pair (" << failure->first + 1 << "," << failure->second + 1
                    << ") residual " << csv::format(failure->residual) << ": " << failure->remainder.to_string()
                    << '\n';
                return kDomainFailure;
            }
            const auto& g = std::get<LieAlgebra>(result);
            const auto report = validate(g);
            out << "# generators realised for system '" << a.system << "'\n";
            out << "# jacobi_residual " << csv::format(report.jacobi_residual) << '\n';
            out << format_algebra(g);
            return kSuccess;
        }

        // ---------------------------------------------------------------- coad

        struct CoadArgs
        {
            double omega = 1.0;
            double m = 1.0, h = 0.0, p = 0.0, k = 0.0;
            double eta = 0.0, b = 0.0, a = 0.0, v = 0.0;
        };

        int cmd_coad(const CoadArgs& a, std::ostream& out)
        {
            require_positive(a.omega, "--omega");
            for (double x : {a.m, a.h, a.p, a.k, a.eta, a.b, a.a, a.v})
                require_finite(x, "coadjoint arguments");
            const DualVector xi = make_dual(a.m, a.h, a.p, a.k);
            const GroupCoords g{a.eta, a.b, a.a, a.v};
            const DualVector closed = coad_apply_closed(xi, g, a.omega);
            const DualVector product = coad_apply(nh_algebra(a.omega), xi, g);
            const DualVector deviation = (closed - product).cwiseAbs();

            csv::write_header(out, {"source", "m", "h", "p", "k"});
            auto row = [&](std::string_view label, const DualVector& v) {
                csv::write_row(out, label, std::span<const double>(v.data(), 4));
            };
            row("closed_form", closed);
            row("exp_product", product);
            row("abs_deviation", deviation);
            return kSuccess;
        }

        // ---------------------------------------------------------------- invariants

        struct InvariantsArgs
        {
            std::string algebra_file;
            double omega = 1.0;
            int degree = 2;
            int samples = 0;
        };

        int cmd_invariants(const InvariantsArgs& a, const Globals& gl, std::ostream& out)
        {
            LieAlgebra g;
            if (!a.algebra_file.empty())
                g = read_algebra_file(a.algebra_file);
            else
                g = nh_algebra(a.omega);
            if (a.degree < 1)
                throw DomainError("--degree must be at least 1");
            const int monomials = static_cast<int>(monomial_basis(g.dim(), a.degree).size());
            const int samples = a.samples > 0 ? a.samples : 10 * monomials;
            FitOptions options;
            if (gl.tol)
                options.null_tol = *gl.tol;
            const CasimirBasis basis = fit_casimirs(g, a.degree, samples, gl.seed, options);

            out << "casimir,degree";
            for (const auto& e : basis.monomials)
                out << ',' << monomial_name(e, basis.labels);
            out << '\n';
            for (Index r = 0; r < basis.size(); ++r)
            {
                out << 'C' << r + 1 << ',' << basis.degrees[static_cast<std::size_t>(r)];
                for (Index c = 0; c < basis.coefficients.cols(); ++c)
                    out << ',' << csv::format(basis.coefficients(r, c));
                out << '\n';
            }
            return kSuccess;
        }

        // ---------------------------------------------------------------- simulate

        struct SimulateArgs
        {
            double omega = 1.0;
            double m = 1.0;
            double amplitude = 1.0;
            double c2 = 0.0;
            std::optional<double> p0, k0;
            double t0 = 0.0;
            std::optional<double> t1, dt;
            std::string method = "exact";
        };

        int cmd_simulate(const SimulateArgs& a, std::ostream& out)
        {
            require_positive(a.omega, "--omega");
            const OrbitChart chart = make_orbit(a.m, a.c2, a.omega);
            const double period = chart.period();
            const double t1 = a.t1.value_or(a.t0 + period);
            const double dt = a.dt.value_or(period / 1000.0);
            const double p0 = a.p0.value_or(0.0);
            const double k0 = a.k0.value_or(a.m * a.amplitude);
            const Trajectory traj = integrate(chart, p0, k0, a.t0, t1, dt, parse_method(a.method));
            write_trajectory_csv(out, traj);
            return kSuccess;
        }

        // ---------------------------------------------------------------- figure

        struct FigureArgs
        {
            double omega = 1.0;
            double m = 1.0;
            double amplitude = 1.0;
            double shift = 0.5;
            double boost = 0.5;
            std::optional<double> tc;
            int points = 96;
            bool gnuplot = false;
        };

        struct FigureData
        {
            std::vector<std::pair<std::string, DualVector>> marks;
            std::vector<std::pair<std::string, std::vector<std::pair<double, DualVector>>>> loci;
        };

        FigureData figure_data(const FigureArgs& a)
        {
            require_positive(a.omega, "--omega");
            require_finite(a.shift, "--l");
            require_finite(a.boost, "--u");
            if (a.points < 3)
                throw DomainError("--points must be at least 3");
            const OrbitChart chart = make_orbit(a.m, 0.0, a.omega);
            const double period = chart.period();
            const double tc = a.tc.value_or(period / 8.0);

            const DualVector pa = chart.embed(0.0, a.m * a.amplitude);
            const DualVector pc = coad_apply_closed(pa, time_shift(tc), a.omega);
            const DualVector pb = coad_apply_closed(pa, spatial_shift(a.shift), a.omega);
            const DualVector pd = coad_apply_closed(pc, boost(a.boost), a.omega);

            FigureData data;
            data.marks = {{"A", pa}, {"B", pb}, {"C", pc}, {"D", pd}};
            for (const auto& [name, start] : {std::pair<std::string, DualVector>{"A", pa}, {"B", pb}, {"D", pd}})
            {
                std::vector<std::pair<double, DualVector>> locus;
                for (int j = 0; j <= a.points; ++j)
                {
                    const double tau = period * j / a.points;
                    locus.emplace_back(tau, coad_apply_closed(start, time_shift(tau), a.omega));
                }
                data.loci.emplace_back("locus_" + name, std::move(locus));
            }
            return data;
        }

        int cmd_figure(const FigureArgs& a, std::ostream& out)
        {
            const FigureData data = figure_data(a);
            if (a.gnuplot)
            {
                for (const auto& [name, locus] : data.loci)
                {
                    out << '$' << name << " << EOD\n";
                    for (const auto& [tau, xi] : locus)
                        out << csv::format(xi(kP)) << ' ' << csv::format(xi(kK)) << '\n';
                    out << "EOD\n";
                }
                out << "$marks << EOD\n";
                for (const auto& [label, xi] : data.marks)
                    out << csv::format(xi(kP)) << ' ' << csv::format(xi(kK)) << ' ' << label << '\n';
                out << "EOD\n";
                out << "set xlabel 'p'\nset ylabel 'k'\nset size ratio -1\n";
                out << "plot $locus_A using 1:2 with lines title 'time evolution through A and C', \\\n"
                       "     $locus_B using 1:2 with lines title 'through B = exp(lP) A', \\\n"
                       "     $locus_D using 1:2 with lines title 'through D = exp(uK) C', \\\n"
                       "     $marks using 1:2 with points pt 7 notitle, \\\n"
                       "     $marks using 1:2:3 with labels offset 1,1 notitle\n";
                return kSuccess;
            }

            bool first = true;
            for (const auto& [name, locus] : data.loci)
            {
                if (!first)
                    out << '\n';
                first = false;
                out << "# " << name << '\n';
                csv::write_header(out, {"tau", "m", "h", "p", "k"});
                for (const auto& [tau, xi] : locus)
                    csv::write_row(out, {tau, xi(kM), xi(kH), xi(kP), xi(kK)});
            }
            out << "\n# points\n";
            csv::write_header(out, {"label", "m", "h", "p", "k", "c1", "c2"});
            for (const auto& [label, xi] : data.marks)
            {
                const auto inv = orbit_invariants(xi, a.omega);
                const double row[] = {xi(kM), xi(kH), xi(kP), xi(kK), inv.c1, inv.c2};
                csv::write_row(out, label, row);
            }
            return kSuccess;
        }

        // ---------------------------------------------------------------- damped

        struct DampedArgs
        {
            double m = 1.0;
            double beta = 0.2;
            double omega0 = 1.0;
            double x0 = 1.0;
            double v0 = 0.0;
            double t0 = 0.0;
            double t1 = 10.0;
            std::optional<double> dt;
            std::string method = "exact";
            std::vector<double> bracket_times;
        };

        int cmd_damped(const DampedArgs& a, std::ostream& out)
        {
            const auto params = DampedParams::from_friction(a.m, a.beta, a.omega0);
            if (!a.bracket_times.empty())
            {
                const auto first = bracket_table(params, a.bracket_times[0]);
                const auto second = bracket_table(params, a.bracket_times[1]);
                out << "bracket,t=" << csv::format(first.t) << ",t=" << csv::format(second.t) << '\n';
                const double hp[] = {first.h_p, second.h_p};
                const double hk[] = {first.h_k, second.h_k};
                const double kp[] = {first.k_p, second.k_p};
                csv::write_row(out, "h_P", hp);
                csv::write_row(out, "h_k", hk);
                csv::write_row(out, "k_P", kp);
                return kSuccess;
            }
            require_finite(a.x0, "--x0");
            require_finite(a.v0, "--v0");
            const double dt = a.dt.value_or(2.0 * M_PI / params.omega() / 1000.0);
            const auto samples = damped_trajectory(params, a.x0, a.v0, a.t0, a.t1, dt, parse_method(a.method));
            write_damped_csv(out, samples);
            return kSuccess;
        }
    } // namespace

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
    {
        CLI::App app{"orbitkit: coadjoint orbits of the (1+1) Newton-Hooke group and the damped oscillator"};
        app.set_help_flag("--help", "Print this help message and exit");
        app.require_subcommand(1);
        app.fallthrough();

        Globals gl;
        app.add_option("--out", gl.out_path, "Write output to this file instead of standard output");
        app.add_option("--seed", gl.seed, "Random seed")->capture_default_str();
        app.add_option("--tol", gl.tol, "Tolerance override (module-specific default)");

        ValidateArgs va;
        auto* validate_cmd = app.add_subcommand("validate", "Check antisymmetry and the Jacobi identity of an algebra file");
        validate_cmd->add_option("file", va.file, "Algebra definition file")->required();

        DeriveArgs da;
        auto* derive_cmd = app.add_subcommand("derive", "Extract structure constants from a phase-space realisation");
        derive_cmd->add_option("--system", da.system, "oscillator | damped | frozen")
            ->check(CLI::IsMember({"oscillator", "damped", "frozen"}))
            ->capture_default_str();
        derive_cmd->add_option("--omega", da.omega, "Oscillator frequency")->capture_default_str();
        derive_cmd->add_option("--m", da.m, "Mass")->capture_default_str();
        derive_cmd->add_option("--beta", da.beta, "Friction coefficient (damped, frozen)")->capture_default_str();
        derive_cmd->add_option("--omega0", da.omega0, "Undamped frequency (damped, frozen)")->capture_default_str();
        derive_cmd->add_option("--t", da.t, "Time at which the frozen generators are taken")->capture_default_str();

        CoadArgs ca;
        auto* coad_cmd = app.add_subcommand("coad", "Coadjoint action: closed form against the exponential product");
        coad_cmd->add_option("--omega", ca.omega)->capture_default_str();
        coad_cmd->add_option("--m", ca.m)->capture_default_str();
        coad_cmd->add_option("--h", ca.h)->capture_default_str();
        coad_cmd->add_option("--p", ca.p)->capture_default_str();
        coad_cmd->add_option("--k", ca.k)->capture_default_str();
        coad_cmd->add_option("--eta", ca.eta)->capture_default_str();
        coad_cmd->add_option("--b", ca.b, "Time shift")->capture_default_str();
        coad_cmd->add_option("--a", ca.a, "Spatial shift")->capture_default_str();
        coad_cmd->add_option("--v", ca.v, "Boost velocity")->capture_default_str();

        InvariantsArgs ia;
        auto* inv_cmd = app.add_subcommand("invariants", "Fit polynomial Casimir invariants");
        inv_cmd->add_option("--algebra", ia.algebra_file, "Algebra file (default: Newton-Hooke at --omega)");
        inv_cmd->add_option("--omega", ia.omega)->capture_default_str();
        inv_cmd->add_option("--degree", ia.degree)->capture_default_str();
        inv_cmd->add_option("--samples", ia.samples, "Sample count (default 10 x monomials)");

        SimulateArgs sa;
        auto* sim_cmd = app.add_subcommand("simulate", "Integrate the motion on a coadjoint orbit");
        sim_cmd->add_option("--omega", sa.omega)->capture_default_str();
        sim_cmd->add_option("--m", sa.m, "Mass, the first invariant")->capture_default_str();
        sim_cmd->add_option("--A", sa.amplitude, "Amplitude; default start is p = 0, k = m A")->capture_default_str();
        sim_cmd->add_option("--c2", sa.c2, "Second invariant of the orbit")->capture_default_str();
        sim_cmd->add_option("--p0", sa.p0);
        sim_cmd->add_option("--k0", sa.k0);
        sim_cmd->add_option("--t0", sa.t0)->capture_default_str();
        sim_cmd->add_option("--t1", sa.t1, "End time (default t0 + one period)");
        sim_cmd->add_option("--dt", sa.dt, "Step (default period / 1000)");
        sim_cmd->add_option("--method", sa.method)
            ->check(CLI::IsMember({"exact", "rk4", "midpoint"}))
            ->capture_default_str();

        FigureArgs fa;
        auto* fig_cmd = app.add_subcommand("figure", "Data for the generator-action figure");
        fig_cmd->add_option("--omega", fa.omega)->capture_default_str();
        fig_cmd->add_option("--m", fa.m)->capture_default_str();
        fig_cmd->add_option("--A", fa.amplitude)->capture_default_str();
        fig_cmd->add_option("--l", fa.shift, "Spatial shift taking A to B")->capture_default_str();
        fig_cmd->add_option("--u", fa.boost, "Boost taking C to D")->capture_default_str();
        fig_cmd->add_option("--tc", fa.tc, "Time from A to C (default period / 8)");
        fig_cmd->add_option("--points", fa.points, "Samples per orbit locus")->capture_default_str();
        fig_cmd->add_flag("--gnuplot", fa.gnuplot, "Emit a self-contained gnuplot script instead of CSV");

        DampedArgs dpa;
        auto* damped_cmd = app.add_subcommand("damped", "Damped oscillator through the Newton-Hooke map");
        damped_cmd->add_option("--m", dpa.m)->capture_default_str();
        damped_cmd->add_option("--beta", dpa.beta, "Friction coefficient")->capture_default_str();
        damped_cmd->add_option("--omega0", dpa.omega0)->capture_default_str();
        damped_cmd->add_option("--x0", dpa.x0)->capture_default_str();
        damped_cmd->add_option("--v0", dpa.v0)->capture_default_str();
        damped_cmd->add_option("--t0", dpa.t0)->capture_default_str();
        damped_cmd->add_option("--t1", dpa.t1)->capture_default_str();
        damped_cmd->add_option("--dt", dpa.dt, "Step (default 2 pi / omega / 1000)");
        damped_cmd->add_option("--method", dpa.method)
            ->check(CLI::IsMember({"exact", "rk4", "midpoint"}))
            ->capture_default_str();
        damped_cmd->add_option("--bracket-table", dpa.bracket_times, "Print bracket coefficients at two times")
            ->expected(2);

        std::vector<const char*> argv;
        for (const auto& s : args)
            argv.push_back(s.c_str());
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp& e)
        {
            app.exit(e, out, err);
            return kSuccess;
        }
        catch (const CLI::ParseError& e)
        {
            err << e.what() << '\n';
            return kInputFailure;
        }

        std::ostringstream buffer;
        int code = kSuccess;
        try
        {
            if (*validate_cmd)
                code = cmd_validate(va, gl, buffer);
            else if (*derive_cmd)
                code = cmd_derive(da, gl, buffer);
            else if (*coad_cmd)
                code = cmd_coad(ca, buffer);
            else if (*inv_cmd)
                code = cmd_invariants(ia, gl, buffer);
            else if (*sim_cmd)
                code = cmd_simulate(sa, buffer);
            else if (*fig_cmd)
                code = cmd_figure(fa, buffer);
            else if (*damped_cmd)
                code = cmd_damped(dpa, buffer);
        }
        catch (const ParseError& e)
        {
            err << "parse error: " << e.what() << '\n';
            return kInputFailure;
        }
        catch (const DomainError& e)
        {
            err << "error: " << e.what() << '\n';
            return kDomainFailure;
        }
        catch (const std::exception& e)
        {
            err << "error: " << e.what() << '\n';
            return kInputFailure;
        }

        if (gl.out_path.empty())
        {
            out << buffer.str();
        }
        else
        {
            std::ofstream file(gl.out_path, std::ios::binary);
            if (!file)
            {
                err << "error: cannot write " << gl.out_path << '\n';
                return kInputFailure;
            }
            file << buffer.str();
        }
        return code;
    }
} // namespace orbitkit::cli
