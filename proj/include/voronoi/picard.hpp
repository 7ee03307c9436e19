#pragma once

// Divisor classes aM - bD on the perfect cone compactification (level n: aM - bD^(n)).

#include "voronoi/exact.hpp"

namespace voronoi {

struct DivisorClass {
    Rational a;  // coefficient of M
    Rational b;  // coefficient of -D (or -D^(n) at level n)
    long g = 2;
    long n = 1;
};

enum class Sign { Negative, Zero, Positive };

const char* to_string(Sign s);

/** (aM - bD).C1 = a/12 - b; level 1 only. */
Rational intersect_C1(const DivisorClass& d);

/** Sign of (aM - bD).C2, which is the sign of b since M.C2 = 0 and D.C2 < 0. */
Sign intersect_C2_sign(const DivisorClass& d);

/** a >= (12/n) b and b >= 0. */
bool is_nef(const DivisorClass& d);
/** a > (12/n) b and b > 0. */
bool is_ample(const DivisorClass& d);

/** K = (g+1)M - D^(n) in level-n coordinates. */
DivisorClass canonical_class(long g, long n = 1);

/** a / b; b must be positive. */
Rational slope(const DivisorClass& d);
/** Slope above 12. */
bool finite_generation_flag(const DivisorClass& d);

/** Level-1 class with the same pullback: D^(n) = D / n. */
DivisorClass to_level_one(const DivisorClass& d);

struct ProductCoefficients {
    long n;
    Rational b;
    Rational c;
};

/** Least n >= 1 with n^2 > p s, then b = s / n^2 and c = 1 - p b. */
ProductCoefficients product_coefficients(long p, const Rational& s);

}  // namespace voronoi
