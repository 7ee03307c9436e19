#include "voronoi/io.hpp"

#include <cctype>
#include <sstream>

namespace voronoi {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw ParseError("not a rational number: '" + std::string(text) + "'");
    if (num.front() == '+') num.remove_prefix(1);
    const Integer n{std::string(num)};
    const Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

RatMatrix parse_matrix(std::string_view text) {
    const auto rows = split(trim(text), ';');
    std::vector<std::vector<Rational>> cells;
    for (auto row : rows) {
        std::vector<Rational> r;
        for (auto cell : split(row, ',')) r.push_back(parse_rational(cell));
        cells.push_back(std::move(r));
    }
    if (cells.empty() || cells.front().empty()) throw ParseError("empty matrix");
    RatMatrix m(cells.size(), cells.front().size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].size() != m.cols()) throw ParseError("matrix rows have different lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cells[i][j];
    }
    return m;
}

QuadForm parse_form(std::string_view text) {
    RatMatrix m = parse_matrix(text);
    if (m.rows() != m.cols()) throw ParseError("Gram matrix must be square");
    if (!m.is_symmetric()) throw ParseError("Gram matrix must be symmetric");
    return QuadForm(std::move(m));
}

SymLatticePoint parse_lattice_point(std::string_view text) {
    RatMatrix m = parse_matrix(text);
    if (m.rows() != m.cols() || !m.is_symmetric()) throw ParseError("lattice point must be a symmetric square matrix");
    IntMatrix b(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw ParseError("lattice point entries must be integers");
            b(i, j) = m(i, j).get_num();
        }
    return SymLatticePoint(std::move(b));
}

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {
template <class M>
std::string matrix_string(const M& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j).get_str();
        }
    }
    return os.str();
}
}  // namespace

std::string to_string(const RatMatrix& m) { return matrix_string(m); }
std::string to_string(const IntMatrix& m) { return matrix_string(m); }

std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace voronoi
