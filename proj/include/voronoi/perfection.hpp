#pragma once

// Perfect forms, their cones, Voronoi's neighbour step and the enumeration
// of perfect forms up to integral equivalence.

#include "voronoi/exact.hpp"
#include "voronoi/isometry.hpp"
#include "voronoi/polycone.hpp"
#include "voronoi/shortvec.hpp"

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

namespace voronoi {

/** dim span{x x^T : x in min(q)}. */
std::size_t perfection_rank(const QuadForm& q);

bool is_perfect(const QuadForm& q);

/** Rank-1 generators x x^T over the minimal vectors, in MinVecSet order. */
std::vector<SymLatticePoint> minimal_squares(const MinVecSet& mv);

/** sigma(q) with its facets; q must be perfect. */
PolyCone perfect_cone(const QuadForm& q);

/** Rescale to minimum 2, then clear any remaining denominators. */
QuadForm normalize_scale(const QuadForm& q);

/** GL-invariant screening key; ordered lexicographically. */
struct InvariantKey {
    std::size_t g = 0;
    Rational det;
    Rational minimum;
    std::size_t kissing = 0;
    std::vector<Rational> pairwise;  // sorted |x^T G y| over distinct min-vector pairs

    bool operator==(const InvariantKey&) const = default;
    bool operator<(const InvariantKey& o) const {
        return std::tie(g, det, minimum, kissing, pairwise) < std::tie(o.g, o.det, o.minimum, o.kissing, o.pairwise);
    }
};

InvariantKey invariant_key(const QuadForm& q);

/**
 * Resolution of one facet. A facet whose normal is positive semidefinite lies
 * on the boundary of the positive cone and has no neighbour (only for g = 1).
 */
struct NeighborLink {
    std::size_t facet = 0;
    std::optional<std::size_t> neighbor_class;
    std::optional<QuadForm> neighbor_form;  // normalized contiguous form
    std::optional<UnimodularMap> witness;   // witness^T G_class witness = neighbor_form

    bool boundary() const { return !neighbor_class.has_value(); }
};

struct PerfectFormRecord {
    QuadForm form;
    MinVecSet minvecs;
    PolyCone cone;
    InvariantKey key;
    std::vector<NeighborLink> neighbors;  // one per facet, in facet order
    std::optional<std::uint64_t> aut_order;
};

PerfectFormRecord make_record(const QuadForm& q);

struct NeighborResult {
    QuadForm form;  // q + rho R, same minimum as q
    Rational rho;
};

/** The contiguous perfect form across facet `facet_index` of sigma(q). */
NeighborResult neighbor(const PerfectFormRecord& rec, std::size_t facet_index);
NeighborResult neighbor(const QuadForm& q, const PolyCone& cone, std::size_t facet_index);

struct EnumerationOptions {
    unsigned jobs = 1;
    bool compute_automorphisms = true;
};

constexpr std::size_t kMaxEnumerationRank = 7;

/**
 * All perfect forms in g variables up to GL_g(Z), each with its facet
 * neighbours resolved to catalogue classes. Returned sorted by invariant key,
 * ties broken by canonical Gram; the form of each record is canonical.
 */
std::vector<PerfectFormRecord> enumerate_perfect(std::size_t g, const EnumerationOptions& opts = {});

/**
 * Process-wide catalogue for g, enumerated on first use without automorphism
 * orders. Safe to call from several threads.
 */
const std::vector<PerfectFormRecord>& cached_catalog(std::size_t g);

/**
 * Every facet of every class has a neighbour link whose witness re-verifies;
 * with `recompute`, each neighbour form is also recomputed from scratch.
 */
bool closure_certificate_holds(const std::vector<PerfectFormRecord>& catalog, bool recompute = false);

}  // namespace voronoi
