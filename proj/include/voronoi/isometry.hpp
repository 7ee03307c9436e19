#pragma once

#include "voronoi/exact.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace voronoi {

/**
 * U with U^T G1 U = G2, if q1 and q2 are integrally equivalent.
 *
 * Screens by determinant, minimum, kissing number and the multiset of
 * |x^T G y| over minimal vectors, then backtracks over images of a basis of
 * short vectors of q2 chosen among short vectors of q1.
 */
std::optional<UnimodularMap> is_equivalent(const QuadForm& q1, const QuadForm& q2);

/** |{U in GL_g(Z) : U^T G U = G}|. */
std::uint64_t automorphism_order(const QuadForm& q);

/**
 * Up to `count` automorphisms drawn uniformly (reservoir sampling with a fixed
 * seed) from the whole group; deterministic for a given form.
 */
std::vector<UnimodularMap> automorphism_sample(const QuadForm& q, std::size_t count, std::uint64_t seed = 1);

/**
 * Canonical representative of the GL_g(Z)-class of q.
 *
 * Let b be the least norm such that vectors of norm <= b contain a basis of
 * Z^g. Among all ordered bases drawn from those vectors, take the Gram matrix
 * whose columns (diagonal entry first, then the entries above it) are
 * lexicographically least.
 */
struct CanonicalForm {
    QuadForm form;
    UnimodularMap basis;  // form = basis^T q basis
};
CanonicalForm canonical_form(const QuadForm& q);

}  // namespace voronoi
