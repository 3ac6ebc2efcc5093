#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace orbitkit::csv
{
    /// 17 significant digits (%.17g), which round-trips
    /// every finite double exactly.
    std::string format(double value);

    /// Parses a decimal double; throws std::invalid_argument on trailing junk.
    double parse(std::string_view text);

    void write_header(std::ostream& os, std::initializer_list<std::string_view> columns);
    void write_row(std::ostream& os, std::span<const double> values);
    void write_row(std::ostream& os, std::initializer_list<double> values);
    void write_row(std::ostream& os, std::string_view label, std::span<const double> values);
} // namespace orbitkit::csv
