#include <doctest.h>

#include "voronoi/picard.hpp"

using namespace voronoi;

namespace {

DivisorClass cls(long a, long b, long n = 1, long g = 5) { return {Rational(a), Rational(b), g, n}; }

Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("intersections") {
    CHECK(intersect_C1(cls(12, 1)) == 0);
    CHECK(intersect_C1(cls(13, 1)) == q(1, 12));
    CHECK(intersect_C1(cls(1, 0)) == q(1, 12));
    CHECK_THROWS_AS(intersect_C1(cls(6, 1, 2)), DomainError);
    CHECK(intersect_C2_sign(cls(12, 1)) == Sign::Positive);
    CHECK(intersect_C2_sign(cls(1, 0)) == Sign::Zero);
    CHECK(intersect_C2_sign(cls(0, -1)) == Sign::Negative);
}

TEST_CASE("nef and ample") {
    CHECK(is_nef(cls(12, 1)));
    CHECK_FALSE(is_nef(cls(11, 1)));
    CHECK_FALSE(is_nef(cls(1, 1, 2)));
    CHECK(is_nef(cls(6, 1, 2)));
    CHECK(is_ample(cls(13, 1)));
    CHECK_FALSE(is_ample(cls(12, 1)));
    CHECK_FALSE(is_ample(cls(1, 0)));
    CHECK(is_nef(cls(1, 0)));
}

TEST_CASE("canonical class") {
    const auto k12 = canonical_class(12);
    CHECK(k12.a == 13);
    CHECK(k12.b == 1);
    CHECK(is_ample(k12));
    CHECK(is_nef(canonical_class(11)));
    CHECK_FALSE(is_ample(canonical_class(11)));
    const auto k5 = canonical_class(5, 2);
    CHECK(k5.a == 6);
    CHECK(is_nef(k5));
    CHECK_FALSE(is_ample(k5));
    for (long g = 2; g <= 30; ++g) {
        CHECK(is_nef(canonical_class(g)) == (g >= 11));
        CHECK(is_ample(canonical_class(g)) == (g >= 12));
    }
    CHECK_THROWS_AS(canonical_class(1), DomainError);
}

TEST_CASE("slope") {
    CHECK(slope(cls(12, 1)) == 12);
    CHECK(slope(cls(13, 1)) == 13);
    CHECK(finite_generation_flag(cls(13, 1)));
    CHECK_FALSE(finite_generation_flag(cls(12, 1)));
    CHECK(slope(cls(24, 2)) == 12);
    CHECK_THROWS_AS(slope(cls(1, 0)), DomainError);
}

TEST_CASE("product coefficients") {
    const auto a = product_coefficients(3, 1);
    CHECK(a.n == 2);
    CHECK(a.b == q(1, 4));
    CHECK(a.c == q(1, 4));
    const auto b = product_coefficients(1, 1);
    CHECK(b.n == 2);
    CHECK(b.c == q(3, 4));
    const auto c = product_coefficients(6, 2);
    CHECK(c.n == 4);
    CHECK(c.b == q(1, 8));
    CHECK(c.c == q(1, 4));
    CHECK_THROWS_AS(product_coefficients(0, 1), DomainError);
    CHECK_THROWS_AS(product_coefficients(1, 0), DomainError);
}

TEST_CASE("property: picard predicates") {
    for (long n = 1; n <= 4; ++n)
        for (long an = -30; an <= 30; ++an)
            for (long bn = -3; bn <= 3; ++bn)
                for (long den : {1, 2, 7}) {
                    const DivisorClass d{q(an, den), q(bn, 3), 5, n};
                    CHECK((!is_ample(d) || is_nef(d)));
                    // level n is the level-1 class b/n
                    const auto d1 = to_level_one(d);
                    CHECK(is_nef(d) == is_nef(d1));
                    CHECK(is_ample(d) == is_ample(d1));
                    if (n == 1) CHECK(is_nef(d) == (intersect_C1(d) >= 0 && intersect_C2_sign(d) != Sign::Negative));
                    const DivisorClass s{d.a * 5, d.b * 5, 5, n};
                    CHECK(is_nef(s) == is_nef(d));
                    CHECK(is_ample(s) == is_ample(d));
                    if (d.b > 0) CHECK(slope(s) == slope(d));
                }
    for (long n = 1; n <= 4; ++n)
        for (long a = 0; a <= 24; ++a) CHECK(is_nef(cls(a, 1, n)) == (Rational(a) >= Rational(12) / n));
    for (long p = 1; p <= 30; ++p)
        for (long sn = 1; sn <= 12; ++sn) {
            const Rational s = q(sn, 4);
            const auto r = product_coefficients(p, s);
            CHECK(r.c + p * r.b == 1);
            CHECK(r.b * r.n * r.n == s);
            CHECK(r.b > 0);
            CHECK(r.c > 0);
            CHECK((r.n == 1 || Rational((r.n - 1) * (r.n - 1)) <= p * s));
        }
}
