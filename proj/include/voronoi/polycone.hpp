#pragma once

#include "voronoi/exact.hpp"

#include <vector>

namespace voronoi {

/**
 * Facet of a full-dimensional cone in the space of symmetric matrices.
 *
 * `dual` is the primitive integer functional in lattice-point coordinates
 * (so dual . coords(B) = <normal, B>); `on` lists the generators it vanishes on.
 */
struct Facet {
    QuadForm normal;
    std::vector<Integer> dual;
    std::vector<std::size_t> on;
};

/** Cone spanned by rank-1 lattice points x x^T, with its facets. */
class PolyCone {
public:
    PolyCone(std::size_t g, std::vector<SymLatticePoint> generators, std::vector<Facet> facets = {});

    /** Cone on the given generators; facets computed when the cone is full-dimensional. */
    static PolyCone with_facets(std::size_t g, std::vector<SymLatticePoint> generators);

    std::size_t g() const { return g_; }
    std::size_t ambient_dim() const { return sym_dim(g_); }
    const std::vector<SymLatticePoint>& generators() const { return generators_; }
    const std::vector<Facet>& facets() const { return facets_; }
    /** Dimension of the linear span of the generators. */
    std::size_t dim() const;
    bool is_simplicial() const { return dim() == generators_.size(); }
    /** Sum of the generators, a relative interior point. */
    SymLatticePoint interior_point() const;

private:
    std::size_t g_;
    std::vector<SymLatticePoint> generators_;
    std::vector<Facet> facets_;
};

/**
 * Facets of the cone spanned by integer vectors in Z^dim (double description).
 * The cone must be full-dimensional. Results are sorted by functional.
 */
struct RawFacet {
    std::vector<Integer> functional;
    std::vector<std::size_t> on;
};
std::vector<RawFacet> facet_enumeration(const std::vector<std::vector<Integer>>& generators, std::size_t dim);

/** The symmetric direction R with <R, B> = functional . coords(B). */
QuadForm normal_from_dual(std::size_t g, const std::vector<Integer>& functional);

}  // namespace voronoi
