#ifndef CHIRALQB_TABLE_HPP
#define CHIRALQB_TABLE_HPP

#include <string>
#include <vector>

namespace chiralqb {

// Rectangular numeric table with '#'-prefixed provenance preamble lines.
// Floats are emitted as shortest round-trip decimals, so parse + emit of an
// emitted table is byte-identical.
struct ResultTable {
    std::vector<std::string> preamble;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);  // shortest round-trip decimal

std::string to_csv(const ResultTable& t);
ResultTable parse_csv(const std::string& text);  // throws ParseError

// Writes to a file path, or to stdout when path == "-".
void write_csv(const ResultTable& t, const std::string& path);

}  // namespace chiralqb

#endif
