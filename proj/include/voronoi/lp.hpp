#pragma once

#include "voronoi/exact.hpp"

#include <variant>
#include <vector>

namespace voronoi {

enum class RowSense { Equal, LessEqual, GreaterEqual };
enum class VarSign { NonNegative, Free };

/**
 * minimize c.x  subject to  a_i.x (=|<=|>=) b_i,  x_j >= 0 or free.
 */
struct LinearProgram {
    RatMatrix a;
    std::vector<Rational> b;
    std::vector<RowSense> sense;
    std::vector<Rational> c;
    std::vector<VarSign> sign;

    std::size_t num_vars() const { return a.cols(); }
    std::size_t num_rows() const { return a.rows(); }

    /** Feasibility system A x = b, x >= 0 with a zero objective. */
    static LinearProgram equality_system(const RatMatrix& a, const std::vector<Rational>& b);
    void validate() const;
};

struct LpOptimal {
    std::vector<Rational> point;
    Rational value;
};

/**
 * Farkas certificate: multipliers y (y_i >= 0 on <= rows, y_i <= 0 on >= rows)
 * with y^T A >= 0 on nonnegative variables, = 0 on free ones, and y.b < 0.
 */
struct LpInfeasible {
    std::vector<Rational> multipliers;
};

/** A feasible point plus a recession direction along which c decreases. */
struct LpUnbounded {
    std::vector<Rational> point;
    std::vector<Rational> ray;
};

using LpResult = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

/** Two-phase dense tableau simplex over Q with Bland's rule. */
LpResult lp_solve(const LinearProgram& p);

bool verify_feasible(const LinearProgram& p, const std::vector<Rational>& x);
bool verify_certificate(const LinearProgram& p, const LpInfeasible& cert);
bool verify_ray(const LinearProgram& p, const LpUnbounded& u);

}  // namespace voronoi
