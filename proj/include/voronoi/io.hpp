#pragma once

#include "voronoi/exact.hpp"

#include <string>
#include <string_view>

namespace voronoi {

/** Raised for malformed textual input. */
class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

Rational parse_rational(std::string_view text);

/** "2,1;1,2" -> [[2,1],[1,2]]; entries may be "p/q". */
RatMatrix parse_matrix(std::string_view text);
QuadForm parse_form(std::string_view text);
SymLatticePoint parse_lattice_point(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const RatMatrix& m);
std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

}  // namespace voronoi
