#pragma once

// Minimum over representative choices of sum_{i <= j} {(t_i + t_j) / m}.

#include "voronoi/exact.hpp"

#include <vector>

namespace voronoi {

enum class TaiConvention { ZeroAsOne, ZeroAsZero };

struct TaiProblem {
    long m = 0;
    long r = 0;                                  // phi(m) / 2
    std::vector<std::pair<long, long>> pairs;    // {u, m - u} with u < m - u, u coprime to m
    TaiConvention convention = TaiConvention::ZeroAsOne;

    /** Throws DomainError for m < 3 or r > kMaxTaiRank. */
    static TaiProblem make(long m, TaiConvention convention = TaiConvention::ZeroAsOne);
};

constexpr long kMaxTaiRank = 16;

struct TaiMinimum {
    Rational value;
    std::vector<long> minimizer;  // sorted; lexicographically least among minimizers
};

/** The sum for one choice of representatives (one element from each pair). */
Rational fractional_sum(const TaiProblem& p, const std::vector<long>& t);

/** Exhaustive minimum over all 2^r choices. */
TaiMinimum min_fractional_sum(const TaiProblem& p);

/** Euler phi. */
long euler_phi(long m);

/** r (r + 1)^2 / (4 m). */
Rational bound_original(long m);
/** (r^3 + 3 r^2 / 2 + r / 2) / (4 m). */
Rational bound_refined(long m);

enum class Comparison { Less, Equal, Greater };

struct TaiScanRow {
    long m;
    Rational bound;
    TaiMinimum minimum;
    Comparison versus_one;
};

/** Every 3 <= m <= m_max whose refined bound is below 1, with the exact minimum. */
std::vector<TaiScanRow> exceptional_scan(long m_max, TaiConvention convention = TaiConvention::ZeroAsOne);

}  // namespace voronoi
