#pragma once

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "projbound/matrix.hpp"

namespace projbound {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest full-precision decimal that round-trips a double (17 significant
/// digits); report files are diff-able because of this.
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

namespace detail {

inline double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty()) throw ParseError("bad numeric token '" + text + "'");
    return v;
}

// Index of the sign that splits real and imaginary parts, or npos. Signs at
// position 0 or directly after an exponent marker do not split.
inline std::size_t split_sign_pos(const std::string& token) {
    for (std::size_t i = token.size(); i-- > 1;) {
        const char c = token[i];
        if ((c == '+' || c == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') return i;
    }
    return std::string::npos;
}

}  // namespace detail

/// Parse one entry: "a", "a+bi", "a-bi", or "bi".
inline Complex parse_complex_token(std::string token) {
    if (token.empty()) throw ParseError("empty matrix entry");
    const bool imaginary_tail = token.back() == 'i' || token.back() == 'I';
    if (!imaginary_tail) return Complex(detail::parse_double(token), 0.0);
    token.pop_back();
    const std::size_t pos = detail::split_sign_pos(token);
    if (pos == std::string::npos) return Complex(0.0, detail::parse_double(token));
    const double re = detail::parse_double(token.substr(0, pos));
    std::string imag = token.substr(pos);
    if (imag == "+") imag = "1";
    else if (imag == "-") imag = "-1";
    return Complex(re, detail::parse_double(imag));
}

/**
 * Matrix file format: one header line "m n complex|real", then m rows of n
 * whitespace-separated entries. Complex entries are written "a+bi".
 */
inline ComplexMatrix parse_matrix(std::istream& in, const std::string& origin = "<stream>") {
    std::string header;
    if (!std::getline(in, header)) throw ParseError(origin + ": missing header line");
    std::istringstream hs(header);
    long long m = 0, n = 0;
    std::string mode;
    if (!(hs >> m >> n >> mode) || m <= 0 || n <= 0 || (mode != "complex" && mode != "real"))
        throw ParseError(origin + ": header must be 'm n complex|real', got '" + header + "'");
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(m * n));
    for (long long i = 0; i < m; ++i) {
        std::string line;
        do {
            if (!std::getline(in, line)) throw ParseError(origin + ": unexpected end of file in row " + std::to_string(i + 1));
        } while (line.find_first_not_of(" \t\r\n") == std::string::npos);
        std::istringstream ls(line);
        std::string token;
        long long count = 0;
        while (ls >> token) {
            try {
                entries.push_back(mode == "real" ? Complex(detail::parse_double(token), 0.0)
                                                 : parse_complex_token(token));
            } catch (const ParseError& e) {
                throw ParseError(origin + ": row " + std::to_string(i + 1) + ": " + e.what());
            }
            ++count;
        }
        if (count != n)
            throw ParseError(origin + ": row " + std::to_string(i + 1) + " has " + std::to_string(count) +
                             " entries, expected " + std::to_string(n));
    }
    try {
        return ComplexMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(n), std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

inline ComplexMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return parse_matrix(in, path);
}

inline std::string format_matrix(const ComplexMatrix& mat) {
    bool any_imag = false;
    for (const Complex& z : mat.entries())
        if (z.imag() != 0.0) any_imag = true;
    std::string out = std::to_string(mat.rows()) + " " + std::to_string(mat.cols()) + (any_imag ? " complex" : " real");
    out += '\n';
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < mat.cols(); ++j) {
            if (j) out += ' ';
            const Complex z = mat(i, j);
            if (!any_imag) {
                out += format_full(z.real());
            } else {
                out += format_full(z.real());
                out += z.imag() < 0.0 ? "-" : "+";
                out += format_full(std::abs(z.imag()));
                out += 'i';
            }
        }
        out += '\n';
    }
    return out;
}

/// "start:stop:count" -> count uniformly spaced values, endpoints included.
inline std::vector<double> parse_grid_spec(const std::string& text) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("grid spec must be 'start:stop:count', got '" + text + "'");
    const double start = detail::parse_double(text.substr(0, c1));
    const double stop = detail::parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double count_raw = detail::parse_double(text.substr(c2 + 1));
    const long long count = static_cast<long long>(count_raw);
    if (count < 1 || static_cast<double>(count) != count_raw)
        throw ParseError("grid spec count must be a positive integer, got '" + text + "'");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (long long i = 0; i < count; ++i)
        grid.push_back(start + static_cast<double>(i) * (stop - start) / static_cast<double>(count - 1));
    return grid;
}

inline std::vector<double> linspace(double start, double stop, std::size_t count) {
    std::vector<double> grid;
    grid.reserve(count);
    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(start + static_cast<double>(i) * (stop - start) / static_cast<double>(count - 1));
    return grid;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Minimal CSV assembly: comma separators, '\n' line endings, header first.
class CsvBuilder {
public:
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += cells[i];
        }
        out_ += '\n';
    }
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

}  // namespace projbound
