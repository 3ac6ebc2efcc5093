#include <orbitkit/csv.hpp>

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace orbitkit::csv
{
    std::string format(double value)
    {
        if (value == 0.0)
            return "0";  // also folds -0
        char buf[40];
        const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
        return std::string(buf, static_cast<std::size_t>(n));
    }

    double parse(std::string_view text)
    {
        double value = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        if (first != last && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw std::invalid_argument("not a number: '" + std::string(text) + "'");
        return value;
    }

    void write_header(std::ostream& os, std::initializer_list<std::string_view> columns)
    {
        bool first = true;
        for (auto c : columns)
        {
            if (!first)
                os << ',';
            os << c;
            first = false;
        }
        os << '\n';
    }

    void write_row(std::ostream& os, std::span<const double> values)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (i)
                os << ',';
            os << format(values[i]);
        }
        os << '\n';
    }

    void write_row(std::ostream& os, std::initializer_list<double> values)
    {
        write_row(os, std::span<const double>(values.begin(), values.size()));
    }

    void write_row(std::ostream& os, std::string_view label, std::span<const double> values)
    {
        os << label;
        for (double v : values)
            os << ',' << format(v);
        os << '\n';
    }
} // namespace orbitkit::csv
