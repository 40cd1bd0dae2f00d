#include "detcs/matrix_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "detcs/errors.hpp"

namespace detcs {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::size_t parse_dimension(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
        throw ParseError(line, "expected a positive integer dimension, got '" +
                                   std::string(token) + "'");
    }
    return value;
}

double parse_real(std::string_view token, std::size_t line) {
    // from_chars rejects a leading '+', which some writers emit.
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, "malformed number '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line, "non-finite value '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

ComplexMatrix parse_matrix(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool have_header = false;
    std::vector<Complex> entries;
    std::size_t rows_read = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;

        if (!have_header) {
            if (tokens.size() != 2) throw ParseError(line_no, "header must be 'rows cols'");
            rows = parse_dimension(tokens[0], line_no);
            cols = parse_dimension(tokens[1], line_no);
            entries.reserve(rows * cols);
            have_header = true;
            continue;
        }
        if (rows_read == rows) throw ParseError(line_no, "more rows than the header declares");
        if (tokens.size() != 2 * cols) {
            throw ParseError(line_no, "expected " + std::to_string(2 * cols) +
                                          " numbers (re im pairs), got " +
                                          std::to_string(tokens.size()));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            entries.emplace_back(parse_real(tokens[2 * j], line_no),
                                 parse_real(tokens[2 * j + 1], line_no));
        }
        ++rows_read;
    }
    if (!have_header) throw ParseError(line_no, "missing 'rows cols' header");
    if (rows_read != rows) {
        throw ParseError(line_no, "expected " + std::to_string(rows) + " rows, got " +
                                      std::to_string(rows_read));
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

std::string serialize_matrix(const ComplexMatrix& a) {
    std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out += ' ';
            out += format_double(a(i, j).real());
            out += ' ';
            out += format_double(a(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractViolation("cannot open matrix file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_matrix(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.detail());
    }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& a) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ContractViolation("cannot write matrix file " + path.string());
    out << serialize_matrix(a);
}

}  // namespace detcs
