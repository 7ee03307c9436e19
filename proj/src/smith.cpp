#include "voronoi/smith.hpp"

#include <algorithm>
#include <utility>

namespace voronoi {

std::vector<Integer> smith_invariants(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pr == rows || abs(a(i, j)) < abs(a(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(pr, j));
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, t), a(i, pc));

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (a(i, t) == 0) continue;
            const Integer q = a(i, t) / a(t, t);
            for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
            if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (a(t, j) == 0) continue;
            const Integer q = a(t, j) / a(t, t);
            for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
            if (a(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // Pivot must divide the rest of the block.
        std::optional<std::pair<std::size_t, std::size_t>> bad;
        for (std::size_t i = t + 1; i < rows && !bad; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    bad = std::make_pair(i, j);
                    break;
                }
        if (bad) {
            for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bad->first, j);
            continue;
        }
        diag.push_back(abs(a(t, t)));
        ++t;
    }
    return diag;
}

bool extends_to_basis(const IntMatrix& m) {
    const auto d = smith_invariants(m);
    if (d.size() != m.rows()) return false;
    return std::all_of(d.begin(), d.end(), [](const Integer& v) { return v == 1; });
}

}  // namespace voronoi
