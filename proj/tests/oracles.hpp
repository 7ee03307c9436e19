#pragma once

// Test-only oracles. Nothing in here calls the code paths under test
// beyond the value types themselves.

#include "voronoi/exact.hpp"
#include "voronoi/io.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using voronoi::Integer;
using voronoi::IntMatrix;
using voronoi::IntVector;
using voronoi::QuadForm;
using voronoi::RatMatrix;
using voronoi::Rational;

inline QuadForm form(const char* text) { return voronoi::parse_form(text); }

inline Rational eval(const RatMatrix& g, const std::vector<long>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += g(i, j) * x[i] * x[j];
    return s;
}

/** Calls f on every nonzero x with |x_i| <= radius. */
inline void for_each_box_vector(std::size_t g, long radius, const std::function<void(const std::vector<long>&)>& f) {
    std::vector<long> x(g, -radius);
    for (;;) {
        if (std::any_of(x.begin(), x.end(), [](long c) { return c != 0; })) f(x);
        std::size_t i = 0;
        while (i < g && x[i] == radius) x[i++] = -radius;
        if (i == g) return;
        ++x[i];
    }
}

inline bool first_nonzero_positive(const std::vector<long>& x) {
    for (long c : x) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

struct BruteMin {
    Rational minimum;
    std::vector<std::vector<long>> reps;  // sorted, first nonzero positive
};

inline BruteMin brute_minimal_vectors(const RatMatrix& g, long radius) {
    BruteMin out;
    bool first = true;
    for_each_box_vector(g.rows(), radius, [&](const std::vector<long>& x) {
        if (!first_nonzero_positive(x)) return;
        Rational v = eval(g, x);
        if (first || v < out.minimum) {
            out.minimum = v;
            out.reps.clear();
            first = false;
        }
        if (v == out.minimum) out.reps.push_back(x);
    });
    std::sort(out.reps.begin(), out.reps.end());
    return out;
}

inline std::vector<std::vector<long>> to_longs(const std::vector<IntVector>& vs) {
    std::vector<std::vector<long>> out;
    for (const auto& v : vs) {
        std::vector<long> x;
        for (const auto& c : v.coords()) x.push_back(c.get_si());
        out.push_back(std::move(x));
    }
    return out;
}

/** Determinant by cofactor expansion; independent of the library's elimination. */
inline Rational cofactor_det(const RatMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.empty()) return 1;
    if (rows.size() == 1) return m(rows[0], cols[0]);
    Rational s = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (m(rows[0], cols[k]) == 0) continue;
        std::vector<std::size_t> r(rows.begin() + 1, rows.end());
        std::vector<std::size_t> c = cols;
        c.erase(c.begin() + static_cast<long>(k));
        Rational term = m(rows[0], cols[k]) * cofactor_det(m, r, c);
        s += (k % 2 == 0) ? term : Rational(-term);
    }
    return s;
}

/** All leading principal minors positive. */
inline bool minors_positive_definite(const RatMatrix& g) {
    for (std::size_t k = 1; k <= g.rows(); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        if (cofactor_det(g, idx, idx) <= 0) return false;
    }
    return true;
}

/** All principal minors nonnegative. */
inline bool minors_positive_semidefinite(const RatMatrix& g) {
    const std::size_t n = g.rows();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        if (cofactor_det(g, idx, idx) < 0) return false;
    }
    return true;
}

inline RatMatrix random_symmetric(std::mt19937& rng, std::size_t g, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    RatMatrix m(g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) m(i, j) = m(j, i) = d(rng);
    return m;
}

inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t g, int steps = 6) {
    IntMatrix u = IntMatrix::identity(g);
    if (g == 1) {
        if (rng() % 2) u(0, 0) = -1;
        return u;
    }
    std::uniform_int_distribution<std::size_t> pick(0, g - 1);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) {
            for (std::size_t k = 0; k < g; ++k) u(k, i) = -u(k, i);
            continue;
        }
        const long c = coef(rng);
        for (std::size_t k = 0; k < g; ++k) u(k, i) += c * u(k, j);
    }
    return u;
}

/**
 * Random positive definite integer form whose minimal vectors provably lie
 * in the box |x_i| <= radius: x_i^2 <= q(x) (G^-1)_ii and m(q) <= min G_jj.
 */
inline RatMatrix random_pd_in_box(std::mt19937& rng, std::size_t g, long radius) {
    std::uniform_int_distribution<long> d(-3, 3);
    for (;;) {
        RatMatrix v(g, g);
        for (auto i = 0u; i < g; ++i)
            for (auto j = 0u; j < g; ++j) v(i, j) = d(rng);
        RatMatrix gram = v.transposed() * v;
        if (!minors_positive_definite(gram)) continue;
        Rational det = cofactor_det(gram, [&] { std::vector<std::size_t> a(g); for (auto i = 0u; i < g; ++i) a[i] = i; return a; }(),
                                    [&] { std::vector<std::size_t> a(g); for (auto i = 0u; i < g; ++i) a[i] = i; return a; }());
        Rational mdiag = gram(0, 0);
        for (auto i = 1u; i < g; ++i) mdiag = std::min(mdiag, gram(i, i));
        bool ok = true;
        for (auto i = 0u; i < g && ok; ++i) {
            std::vector<std::size_t> idx;
            for (auto k = 0u; k < g; ++k)
                if (k != i) idx.push_back(k);
            Rational inv_ii = cofactor_det(gram, idx, idx) / det;
            if (mdiag * inv_ii >= Rational((radius + 1) * (radius + 1))) ok = false;
        }
        if (ok) return gram;
    }
}

}  // namespace oracle

namespace oracle {

/**
 * Facets of a full-dimensional cone by brute force: every hyperplane through
 * dim-1 independent generators that leaves all generators on one side.
 * Returns primitive integer functionals, sorted.
 */
inline std::vector<std::vector<Integer>> brute_facets(const std::vector<std::vector<Integer>>& gens, std::size_t dim) {
    std::set<std::vector<Integer>> found;
    const std::size_t n = gens.size();
    std::vector<std::size_t> pick(dim - 1);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
        if (depth == dim - 1) {
            RatMatrix a(dim - 1, dim);
            for (std::size_t i = 0; i + 1 < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) a(i, j) = gens[pick[i]][j];
            if (voronoi::rank(a) != dim - 1) return;
            // normal vector from signed maximal minors (cofactors)
            std::vector<Integer> y(dim);
            std::vector<std::size_t> rows(dim - 1);
            for (std::size_t i = 0; i + 1 < dim; ++i) rows[i] = i;
            for (std::size_t k = 0; k < dim; ++k) {
                std::vector<std::size_t> cols;
                for (std::size_t j = 0; j < dim; ++j)
                    if (j != k) cols.push_back(j);
                Rational d = cofactor_det(a, rows, cols);
                y[k] = (k % 2 == 0 ? d : Rational(-d)).get_num();
            }
            int side = 0;
            for (const auto& v : gens) {
                Integer s = 0;
                for (std::size_t j = 0; j < dim; ++j) s += y[j] * v[j];
                const int sg = sgn(s);
                if (sg == 0) continue;
                if (side == 0) side = sg;
                if (sg != side) return;
            }
            if (side < 0)
                for (auto& c : y) c = -c;
            Integer gg = 0;
            for (const auto& c : y) gg = gcd(gg, c);
            for (auto& c : y) c /= gg;
            found.insert(y);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            pick[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    return {found.begin(), found.end()};
}

}  // namespace oracle

namespace oracle {

/** B = V^T V for random integer V (entries in [-3,3]) with rank(B) >= min_rank. */
inline IntMatrix random_psd(std::mt19937& rng, std::size_t g, std::size_t min_rank) {
    std::uniform_int_distribution<long> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> rows(min_rank, g);
    for (;;) {
        const std::size_t k = rows(rng);
        IntMatrix v(k, g);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < g; ++j) v(i, j) = entry(rng);
        IntMatrix b = v.transposed() * v;
        if (voronoi::rank(b) >= min_rank) return b;
    }
}

/**
 * min over U in GL_g(Z) with |entries| <= radius of <U^T G U, B> / m(G):
 * an upper bound for the co-core height of B, exact once the box reaches
 * the cone containing B.
 */
inline Rational height_upper_bound(const RatMatrix& gram, const Rational& minimum, const IntMatrix& b, long radius) {
    const std::size_t g = gram.rows();
    std::optional<Rational> best;
    std::vector<long> u(g * g, -radius);
    for (;;) {
        IntMatrix m(g, g);
        for (std::size_t i = 0; i < g * g; ++i) m(i / g, i % g) = u[i];
        const Integer d = voronoi::determinant(m);
        if (d == 1 || d == -1) {
            const RatMatrix t = to_rational(m).transposed() * gram * to_rational(m);
            Rational s = 0;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) s += t(i, j) * b(i, j);
            if (!best || s < *best) best = s;
        }
        std::size_t k = 0;
        while (k < u.size() && u[k] == radius) u[k++] = -radius;
        if (k == u.size()) break;
        ++u[k];
    }
    return *best / minimum;
}

}  // namespace oracle
