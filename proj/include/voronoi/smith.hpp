#pragma once

#include "voronoi/exact.hpp"

#include <vector>

namespace voronoi {

/** Nonzero invariant factors d1 | d2 | ... of an integer matrix. */
std::vector<Integer> smith_invariants(const IntMatrix& m);

/**
 * True when the rows of `m` are linearly independent and span a saturated
 * sublattice, i.e. they extend to a basis of Z^cols.
 */
bool extends_to_basis(const IntMatrix& m);

}  // namespace voronoi
