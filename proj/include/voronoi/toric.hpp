#pragma once

// Toric singularity tests for cones of the perfect fan at height z <= 1.

#include "voronoi/perfection.hpp"
#include "voronoi/polycone.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace voronoi {

/** A lattice-point scan would exceed the configured candidate budget. */
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/** Default candidate budget; VORONOI_BUDGET overrides it. */
constexpr std::uint64_t kDefaultScanBudget = 100000000;
std::uint64_t scan_budget();

/** A cone whose generators all lie on the hyperplane z = pair(height, .) = 1. */
class ToricCone {
public:
    /** Throws DomainError unless z = 1 on every generator. */
    ToricCone(PolyCone cone, QuadForm height);

    /** sigma(q) with height q / m(q). */
    static ToricCone of_perfect(const QuadForm& q);

    const PolyCone& cone() const { return cone_; }
    const QuadForm& height() const { return height_; }
    Rational z(const SymLatticePoint& b) const { return pair(height_, b); }

    /** The face spanned by a subset of the generators, same height. */
    ToricCone face(const std::vector<std::size_t>& generator_indices) const;

private:
    PolyCone cone_;
    QuadForm height_;
};

/** Rank of the coordinate vectors of the points. */
std::size_t rank_of_points(const std::vector<SymLatticePoint>& pts);

/** Nonzero lattice points of the cone with z <= level, sorted. level in (0, 2]. */
std::vector<SymLatticePoint> lattice_points_below(const ToricCone& tc, const Rational& level);

enum class Singularity { Smooth, Terminal, CanonicalNotTerminal, NotCanonical };

const char* to_string(Singularity s);

Singularity classify_singularity(const ToricCone& tc);

/** Generator subsets of every nonempty face, including the cone itself, sorted. */
std::vector<std::vector<std::size_t>> faces(const PolyCone& cone);

/**
 * Every nonzero PSD symmetric integer B with |entries| <= box and
 * pair(q, B) <= m(q) has rank 1.
 */
bool verify_minima_rank1(const QuadForm& q, long box);

}  // namespace voronoi
