#include <orbitkit/algebra.hpp>
#include <orbitkit/csv.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace orbitkit
{
    namespace
    {
        std::vector<std::string> split(const std::string& line)
        {
            std::istringstream is(line);
            std::vector<std::string> out;
            for (std::string tok; is >> tok;)
                out.push_back(tok);
            return out;
        }

        Index parse_index(const std::string& tok, Index dim, std::size_t line)
        {
            std::size_t used = 0;
            long value = 0;
            try
            {
                value = std::stol(tok, &used);
            }
            catch (const std::exception&)
            {
                throw ParseError(line, "bad index '" + tok + "'");
            }
            if (used != tok.size())
                throw ParseError(line, "bad index '" + tok + "'");
            if (value < 1 || value > dim)
                throw ParseError(line, "index " + tok + " outside 1.." + std::to_string(dim));
            return static_cast<Index>(value - 1);
        }
    } // namespace

    LieAlgebra parse_algebra(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        std::size_t line = 0;
        Index dim = 0;
        std::vector<std::string> labels;
        std::vector<LieAlgebra::Entry> entries;
        std::set<std::tuple<Index, Index, Index>> seen;

        while (std::getline(in, raw))
        {
            ++line;
            if (!raw.empty() && raw.back() == '\r')
                raw.pop_back();
            const auto tok = split(raw);
            if (tok.empty() || tok[0].front() == '#')
                continue;

            if (dim == 0)
            {
                if (tok.size() != 2 || tok[0] != "dim")
                    throw ParseError(line, "expected 'dim <n>' as the first line");
                try
                {
                    std::size_t used = 0;
                    const long n = std::stol(tok[1], &used);
                    if (used != tok[1].size() || n < 1)
                        throw ParseError(line, "dimension must be a positive integer");
                    dim = static_cast<Index>(n);
                }
                catch (const std::logic_error&)
                {
                    throw ParseError(line, "dimension must be a positive integer");
                }
                continue;
            }

            if (tok[0] == "labels")
            {
                if (!labels.empty() || !entries.empty())
                    throw ParseError(line, "labels must directly follow the dim line");
                if (static_cast<Index>(tok.size()) != dim + 1)
                    throw ParseError(line, "expected " + std::to_string(dim) + " labels");
                labels.assign(tok.begin() + 1, tok.end());
                continue;
            }

            if (tok.size() != 4)
                throw ParseError(line, "expected '<i> <j> <k> <value>'");
            const Index i = parse_index(tok[0], dim, line);
            const Index j = parse_index(tok[1], dim, line);
            const Index k = parse_index(tok[2], dim, line);
            double value = 0;
            try
            {
                value = csv::parse(tok[3]);
            }
            catch (const std::invalid_argument&)
            {
                throw ParseError(line, "bad value '" + tok[3] + "'");
            }
            if (!std::isfinite(value))
                throw ParseError(line, "value must be finite");
            if (i == j)
                throw ParseError(line, "c_{ii}^k must vanish");
            // (i, j, k) and its antisymmetric partner (j, i, k) name the same constant.
            const auto key = std::make_tuple(std::min(i, j), std::max(i, j), k);
            if (!seen.insert(key).second)
                throw ParseError(line, "duplicate entry for (" + tok[0] + "," + tok[1] + "," + tok[2] + ")");
            entries.push_back({i, j, k, value});
        }

        if (dim == 0)
            throw ParseError(line == 0 ? 1 : line, "missing 'dim <n>' line");
        return LieAlgebra::from_constants(dim, std::move(labels), entries);
    }

    LieAlgebra read_algebra_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_algebra(ss.str());
    }

    std::string format_algebra(const LieAlgebra& g)
    {
        std::ostringstream os;
        os << "dim " << g.dim() << '\n' << "labels";
        for (const auto& l : g.labels())
            os << ' ' << l;
        os << '\n';
        for (Index i = 0; i < g.dim(); ++i)
            for (Index j = i + 1; j < g.dim(); ++j)
                for (Index k = 0; k < g.dim(); ++k)
                    if (g(i, j, k) != 0.0)
                        os << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << csv::format(g(i, j, k)) << '\n';
        return os.str();
    }
} // namespace orbitkit
