#pragma once

#include "voronoi/exact.hpp"

#include <vector>

namespace voronoi {

/** Arithmetical minimum and minimal vectors, one representative per +- pair. */
struct MinVecSet {
    Rational minimum;
    std::vector<IntVector> reps;  // first nonzero coordinate positive, sorted lexicographically

    std::size_t kissing() const { return 2 * reps.size(); }
    /** Half the kissing number. */
    std::size_t pairs() const { return reps.size(); }
};

struct ShortVector {
    IntVector x;
    Rational norm;
};

/**
 * Fincke-Pohst enumeration of every +- pair of nonzero x with q(x) <= bound.
 * Exact: all accept/reject decisions are rational comparisons.
 */
std::vector<ShortVector> short_vectors(const QuadForm& q, const Rational& bound);

std::vector<IntVector> vectors_below(const QuadForm& q, const Rational& bound);

MinVecSet minimal_vectors(const QuadForm& q);

/** Minimal vectors of a form that is already known to be positive definite. */
MinVecSet minimal_vectors_unchecked(const QuadForm& q);

}  // namespace voronoi
