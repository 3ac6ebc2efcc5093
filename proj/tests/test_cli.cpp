#include <doctest.h>

#include <cli.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace
{
    struct Result
    {
        int code;
        std::string out;
        std::string err;
    };

    Result run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "orbitkit");
        std::ostringstream out, err;
        const int code = orbitkit::cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::string data(const std::string& name) { return std::string(ORBITKIT_TEST_DATA) + "/" + name; }

    std::vector<std::string> split(const std::string& line)
    {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    }

    // Numeric table: header names -> columns, rows parsed with strtod.
    struct Table
    {
        std::vector<std::string> header;
        std::vector<std::vector<double>> rows;
        std::vector<std::string> first_cells;

        double at(std::size_t row, const std::string& column) const
        {
            for (std::size_t c = 0; c < header.size(); ++c)
                if (header[c] == column)
                    return rows.at(row).at(c);
            throw std::out_of_range(column);
        }
    };

    Table parse_table(const std::string& text)
    {
        Table t;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
        {
            if (line.empty() || line[0] == '#')
                continue;
            auto cells = split(line);
            if (t.header.empty())
            {
                t.header = cells;
                continue;
            }
            std::vector<double> row;
            for (const auto& c : cells)
            {
                char* end = nullptr;
                const double v = std::strtod(c.c_str(), &end);
                row.push_back(end == c.c_str() + c.size() ? v : std::nan(""));
            }
            t.first_cells.push_back(cells.front());
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    // Splits figure output into its "# name" sections.
    std::map<std::string, Table> sections(const std::string& text)
    {
        std::map<std::string, std::string> raw;
        std::string current;
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
        {
            if (line.rfind("# ", 0) == 0)
                current = line.substr(2);
            else
                raw[current] += line + "\n";
        }
        std::map<std::string, Table> out;
        for (const auto& [name, body] : raw)
            out[name] = parse_table(body);
        return out;
    }
} // namespace

TEST_CASE("validate")
{
    const auto ok = run({"validate", data("newton_hooke.alg")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);

    const auto bad = run({"validate", data("spurious.alg")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL jacobi at triple (2,3,4)") != std::string::npos);

    const auto dup = run({"validate", data("duplicate.alg")});
    CHECK(dup.code == 2);
    CHECK(dup.err.find("line 4") != std::string::npos);

    CHECK(run({"validate", data("missing.alg")}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("simulate")
{
    SUBCASE("starts at p = 0, k = m A and sits on C2 = 0")
    {
        const auto r = run({"simulate", "--omega", "1", "--m", "1", "--A", "1"});
        REQUIRE(r.code == 0);
        const auto t = parse_table(r.out);
        CHECK(t.header == std::vector<std::string>{"t", "m", "h", "p", "k", "c2"});
        CHECK(t.rows.size() == 1001);
        CHECK(t.at(0, "p") == 0.0);
        CHECK(t.at(0, "k") == 1.0);
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            CHECK(std::abs(t.at(i, "c2")) < 1e-12);
    }

    SUBCASE("t1 == t0 emits a single row")
    {
        const auto r = run({"simulate", "--t0", "1", "--t1", "1"});
        REQUIRE(r.code == 0);
        CHECK(parse_table(r.out).rows.size() == 1);
    }

    SUBCASE("rk4 tracks the exact solution")
    {
        const auto exact = parse_table(run({"simulate", "--omega", "2", "--method", "exact"}).out);
        const auto rk4 = parse_table(run({"simulate", "--omega", "2", "--method", "rk4"}).out);
        REQUIRE(exact.rows.size() == rk4.rows.size());
        double worst = 0;
        for (std::size_t i = 0; i < exact.rows.size(); ++i)
            worst = std::max(worst, std::abs(exact.at(i, "p") - rk4.at(i, "p")));
        CHECK(worst <= 1e-6);
    }

    CHECK(run({"simulate", "--m", "0"}).code == 1);
    CHECK(run({"simulate", "--method", "euler"}).code == 2);
    CHECK(run({"simulate", "--dt", "abc"}).code == 2);
}

TEST_CASE("figure")
{
    SUBCASE("B and D are the shifted and boosted points")
    {
        const double m = 2.0, l = 0.3, u = -0.7;
        const auto r = run({"figure", "--m", "2", "--omega", "1.5", "--l", "0.3", "--u", "-0.7", "--points", "12"});
        REQUIRE(r.code == 0);
        auto s = sections(r.out);
        REQUIRE(s.count("points") == 1);
        REQUIRE(s.count("locus_A") == 1);
        REQUIRE(s.count("locus_B") == 1);
        REQUIRE(s.count("locus_D") == 1);
        CHECK(s["locus_A"].rows.size() == 13);
        const auto& pts = s["points"];
        REQUIRE(pts.first_cells == std::vector<std::string>{"A", "B", "C", "D"});
        CHECK(pts.at(1, "k") == doctest::Approx(pts.at(0, "k") + m * l).epsilon(1e-14));
        CHECK(pts.at(1, "p") == pts.at(0, "p"));
        CHECK(pts.at(3, "p") == doctest::Approx(pts.at(2, "p") - m * u).epsilon(1e-14));
        CHECK(pts.at(3, "k") == pts.at(2, "k"));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(pts.at(i, "c1") == m);
        // Every locus sample keeps the invariants of its starting point.
        for (const auto& name : {"locus_A", "locus_B", "locus_D"})
        {
            const auto& locus = s[name];
            const double omega = 1.5;
            auto c2 = [&](std::size_t i) {
                const double mm = locus.at(i, "m"), h = locus.at(i, "h"), p = locus.at(i, "p"), k = locus.at(i, "k");
                return k * k - 2 * mm * h / (omega * omega) + p * p / (omega * omega);
            };
            for (std::size_t i = 1; i < locus.rows.size(); ++i)
                CHECK(std::abs(c2(i) - c2(0)) <= 1e-10);
        }
    }

    SUBCASE("zero shift and boost collapse B onto A and D onto C")
    {
        const auto r = run({"figure", "--l", "0", "--u", "0"});
        REQUIRE(r.code == 0);
        auto s = sections(r.out);
        const auto& pts = s["points"];
        for (const auto& column : {"m", "h", "p", "k", "c2"})
        {
            CHECK(pts.at(1, column) == pts.at(0, column));
            CHECK(pts.at(3, column) == pts.at(2, column));
        }
    }

    SUBCASE("gnuplot script is self-contained")
    {
        const auto r = run({"figure", "--gnuplot"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("$locus_A << EOD") != std::string::npos);
        CHECK(r.out.find("plot ") != std::string::npos);
    }

    CHECK(run({"figure", "--m", "0"}).code == 1);
}

TEST_CASE("invariants")
{
    const auto r = run({"invariants", "--omega", "2"});
    REQUIRE(r.code == 0);
    const auto t = parse_table(r.out);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.first_cells == std::vector<std::string>{"C1", "C2"});
    CHECK(t.at(0, "M") == 1.0);
    // C2 is proportional to K^2 - 2 M H / 4 + P^2 / 4.
    const double scale = t.at(1, "K^2");
    CHECK(t.at(1, "M*H") / scale == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(t.at(1, "P^2") / scale == doctest::Approx(0.25).epsilon(1e-9));

    const auto from_file = run({"invariants", "--algebra", data("newton_hooke.alg")});
    CHECK(from_file.code == 0);
    CHECK(run({"invariants", "--samples", "3"}).code == 1);
}

TEST_CASE("damped")
{
    SUBCASE("residual column stays small")
    {
        for (const char* method : {"exact", "rk4", "midpoint"})
        {
            const auto r = run({"damped", "--method", method});
            REQUIRE(r.code == 0);
            const auto t = parse_table(r.out);
            CHECK(t.header == std::vector<std::string>{"t", "x", "xdot", "P", "Q", "residual"});
            for (std::size_t i = 0; i < t.rows.size(); ++i)
                CHECK(t.at(i, "residual") <= 1e-6);
        }
    }

    SUBCASE("beta = 0 matches simulate with x = k / m")
    {
        const auto d = parse_table(run({"damped", "--beta", "0", "--m", "2", "--omega0", "1.5", "--x0", "0.5",
                                        "--t1", "4", "--dt", "0.1"})
                                       .out);
        const auto s = parse_table(run({"simulate", "--m", "2", "--omega", "1.5", "--A", "0.5", "--t1", "4",
                                        "--dt", "0.1"})
                                       .out);
        REQUIRE(d.rows.size() == s.rows.size());
        for (std::size_t i = 0; i < d.rows.size(); ++i)
            CHECK(std::abs(d.at(i, "x") - s.at(i, "k") / 2.0) <= 1e-13);
    }

    SUBCASE("bracket tables at two times differ")
    {
        const auto r = run({"damped", "--m", "1", "--beta", "1", "--omega0", "2", "--bracket-table", "0", "1"});
        REQUIRE(r.code == 0);
        const auto t = parse_table(r.out);
        REQUIRE(t.first_cells == std::vector<std::string>{"h_P", "h_k", "k_P"});
        CHECK(t.rows[0][1] == doctest::Approx(4.0));
        CHECK(t.rows[0][2] == doctest::Approx(4.0 * std::exp(1.0)).epsilon(1e-14));
        CHECK(t.rows[2][1] == t.rows[2][2]);
    }

    CHECK(run({"damped", "--beta", "2", "--omega0", "1"}).code == 1);
    CHECK(run({"damped", "--beta", "4", "--omega0", "1"}).code == 1);
}

TEST_CASE("derive")
{
    const auto r = run({"derive", "--system", "oscillator", "--omega", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("2 3 4 4") != std::string::npos);
    CHECK(run({"derive", "--system", "damped", "--beta", "0.2"}).code == 0);
    CHECK(run({"derive", "--system", "nope"}).code == 2);
}

TEST_CASE("coad")
{
    const auto r = run({"coad", "--omega", "1.3", "--m", "1", "--h", "0.2", "--p", "0.4", "--k", "-0.3", "--b", "0.7",
                        "--a", "-1.1", "--v", "0.5"});
    REQUIRE(r.code == 0);
    const auto t = parse_table(r.out);
    REQUIRE(t.first_cells == std::vector<std::string>{"closed_form", "exp_product", "abs_deviation"});
    for (std::size_t c = 1; c < t.header.size(); ++c)
        CHECK(t.rows[2][c] <= 1e-10);
}

TEST_CASE("CSV values re-parse exactly and runs are byte-identical")
{
    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--method", "rk4", "--omega", "1.7"},
        {"figure"},
        {"figure", "--gnuplot"},
        {"invariants", "--seed", "123"},
        {"damped", "--method", "midpoint"},
        {"coad", "--b", "0.4"},
        {"derive", "--system", "frozen", "--t", "1"},
        {"validate", data("spurious.alg")},
    };
    for (const auto& cmd : commands)
    {
        const auto a = run(cmd);
        const auto b = run(cmd);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }

    const auto sim = run({"simulate", "--omega", "1.3"}).out;
    const auto t = parse_table(sim);
    std::ostringstream again;
    char buf[40];
    for (double v : t.rows[7])
    {
        std::snprintf(buf, sizeof buf, "%.17g,", v == 0.0 ? 0.0 : v);
        again << buf;
    }
    std::string line = again.str();
    line.pop_back();
    CHECK(sim.find(line + "\n") != std::string::npos);
}

TEST_CASE("--out writes to a file")
{
    const auto path = std::filesystem::temp_directory_path() / "orbitkit_cli_out_test.csv";
    const auto r = run({"--out", path.string(), "simulate", "--t1", "1", "--dt", "0.5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str() == run({"simulate", "--t1", "1", "--dt", "0.5"}).out);
    std::filesystem::remove(path);
}
