#pragma once

// The perfect cone fan as a decomposition of the positive semidefinite cone.

#include "voronoi/perfection.hpp"

#include <vector>

namespace voronoi {

/** One step of the locating walk: the facet crossed and the form reached. */
struct FacetCrossing {
    std::vector<Integer> facet;  // primitive dual functional of the crossed facet
    QuadForm reached;
};

/**
 * B lies in sigma(form), where form = twist^T G twist for the catalogue class
 * `class_id`; B = sum lambda_i generators_i with lambda >= 0.
 */
struct ConeMembershipCertificate {
    std::size_t g = 0;
    std::size_t class_id = 0;
    UnimodularMap twist = UnimodularMap::identity(1);
    QuadForm form;
    std::vector<SymLatticePoint> generators;
    std::vector<Rational> lambda;
    std::vector<FacetCrossing> path;
};

/** Exact re-check of B = sum lambda_i gen_i, lambda >= 0, and of the twist. */
bool verify_certificate(const ConeMembershipCertificate& cert, const SymLatticePoint& b);

/**
 * Walk from the A_g root-form cone along the segment from its interior point
 * towards B, crossing the facet where the segment leaves the current cone.
 */
ConeMembershipCertificate locate_cone(const SymLatticePoint& b);

/** pair(q, B) / m(q) for the perfect form q whose cone contains B. */
Rational cocore_height(const SymLatticePoint& b);

/** Block sum; with equal minima the minimal vectors are checked to be the embedded union. */
QuadForm direct_sum(const QuadForm& q1, const QuadForm& q2);

/** q + m(q) x_{g+1}^2, checked to gain exactly the minimal pair +-e_{g+1} and one rank. */
QuadForm extend(const QuadForm& q);

/** Rank of the sum of the generators. */
std::size_t interior_rank(const PolyCone& c);

}  // namespace voronoi
