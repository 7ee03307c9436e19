#include "voronoi/picard.hpp"

namespace voronoi {

namespace {

void check_level(const DivisorClass& d) {
    if (d.n < 1) throw DomainError("level must be at least 1");
}

}  // namespace

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Negative: return "negative";
        case Sign::Zero: return "zero";
        case Sign::Positive: return "positive";
    }
    return "?";
}

Rational intersect_C1(const DivisorClass& d) {
    if (d.n != 1) throw DomainError("intersect_C1 needs a level-1 class; convert with to_level_one");
    return d.a / 12 - d.b;
}

Sign intersect_C2_sign(const DivisorClass& d) {
    check_level(d);
    return d.b > 0 ? Sign::Positive : d.b == 0 ? Sign::Zero : Sign::Negative;
}

bool is_nef(const DivisorClass& d) {
    check_level(d);
    return d.a >= Rational(12) / d.n * d.b && d.b >= 0;
}

bool is_ample(const DivisorClass& d) {
    check_level(d);
    return d.a > Rational(12) / d.n * d.b && d.b > 0;
}

DivisorClass canonical_class(long g, long n) {
    if (g < 2) throw DomainError("canonical class needs g >= 2");
    if (n < 1) throw DomainError("level must be at least 1");
    return DivisorClass{Rational(g + 1), Rational(1), g, n};
}

Rational slope(const DivisorClass& d) {
    if (d.b <= 0) throw DomainError("slope needs b > 0");
    return d.a / d.b;
}

bool finite_generation_flag(const DivisorClass& d) { return slope(d) > 12; }

DivisorClass to_level_one(const DivisorClass& d) {
    check_level(d);
    return DivisorClass{d.a, d.b / d.n, d.g, 1};
}

ProductCoefficients product_coefficients(long p, const Rational& s) {
    if (p < 1 || s <= 0) throw DomainError("product coefficients need p >= 1 and s > 0");
    long n = 1;
    while (Rational(n * n) <= p * s) ++n;
    const Rational b = s / (n * n);
    return {n, b, 1 - p * b};
}

}  // namespace voronoi
