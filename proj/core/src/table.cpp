#include "chiralqb/table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chiralqb/errors.hpp"

namespace chiralqb {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& t) {
    std::string out;
    for (const auto& line : t.preamble) {
        out += "# ";
        out += line;
        out += '\n';
    }
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ResultTable parse_csv(const std::string& text) {
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t start = 1;
            if (start < line.size() && line[start] == ' ') ++start;
            t.preamble.push_back(line.substr(start));
            continue;
        }
        if (!have_header) {
            t.columns = split_commas(line);
            have_header = true;
            continue;
        }
        const auto cells = split_commas(line);
        if (cells.size() != t.columns.size()) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(t.columns.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            double v = 0.0;
            const auto res =
                std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": bad number '" + cell + "'");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("no header row found");
    return t;
}

void write_csv(const ResultTable& t, const std::string& path) {
    const std::string text = to_csv(t);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << text;
}

}  // namespace chiralqb
