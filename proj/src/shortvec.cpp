#include "voronoi/shortvec.hpp"

#include <algorithm>
#include <cmath>

namespace voronoi {

namespace {

// q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
struct Decomposition {
    std::size_t n;
    std::vector<Rational> d;
    RatMatrix mu;
};

Decomposition decompose(const QuadForm& q) {
    const std::size_t n = q.dim();
    RatMatrix a = q.gram();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            a(j, i) = a(i, j);
            a(i, j) /= a(i, i);
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) a(k, l) -= a(k, i) * a(i, l);
    }
    Decomposition dec{n, std::vector<Rational>(n), RatMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        dec.d[i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) dec.mu(i, j) = a(i, j);
    }
    return dec;
}

// Integer range [lo, hi] of x with (x - c)^2 <= s, s >= 0.
std::pair<long, long> integer_window(const Rational& c, const Rational& s) {
    const double cd = c.get_d();
    const double r = std::sqrt(std::max(0.0, s.get_d()));
    long lo = static_cast<long>(std::floor(cd - r)) - 1;
    long hi = static_cast<long>(std::ceil(cd + r)) + 1;
    auto inside = [&](long x) {
        Rational t = Rational(x) - c;
        return t * t <= s;
    };
    while (lo <= hi && !inside(lo)) ++lo;
    while (hi >= lo && !inside(hi)) --hi;
    // A window wider than the float estimate is impossible for moderate
    // magnitudes, but keep it exact regardless.
    while (inside(lo - 1)) --lo;
    while (inside(hi + 1)) ++hi;
    return {lo, hi};
}

class Enumerator {
public:
    Enumerator(const QuadForm& q, const Rational& bound)
        : q_(q), dec_(decompose(q)), bound_(bound), x_(q.dim(), 0) {}

    std::vector<ShortVector> run() {
        recurse(dec_.n - 1, bound_);
        std::sort(out_.begin(), out_.end(), [](const ShortVector& a, const ShortVector& b) { return a.x < b.x; });
        return std::move(out_);
    }

private:
    void recurse(std::size_t i, const Rational& remaining) {
        Rational u = 0;
        for (std::size_t j = i + 1; j < dec_.n; ++j)
            if (x_[j] != 0) u += dec_.mu(i, j) * x_[j];
        const Rational center = -u;
        const auto [lo, hi] = integer_window(center, remaining / dec_.d[i]);
        for (long v = lo; v <= hi; ++v) {
            x_[i] = v;
            Rational t = Rational(v) - center;
            Rational rest = remaining - dec_.d[i] * t * t;
            if (i == 0)
                emit(bound_ - rest);
            else
                recurse(i - 1, rest);
        }
        x_[i] = 0;
    }

    void emit(const Rational& norm) {
        // keep one representative per pair: first nonzero coordinate positive
        for (long c : x_) {
            if (c < 0) return;
            if (c > 0) break;
        }
        if (std::all_of(x_.begin(), x_.end(), [](long c) { return c == 0; })) return;
        std::vector<Integer> coords(x_.begin(), x_.end());
        out_.push_back({IntVector(std::move(coords)), norm});
    }

    const QuadForm& q_;
    Decomposition dec_;
    Rational bound_;
    std::vector<long> x_;
    std::vector<ShortVector> out_;
};

}  // namespace

std::vector<ShortVector> short_vectors(const QuadForm& q, const Rational& bound) {
    if (!is_positive_definite(q)) throw DomainError("short vector enumeration needs a positive definite form");
    if (bound <= 0) return {};
    return Enumerator(q, bound).run();
}

std::vector<IntVector> vectors_below(const QuadForm& q, const Rational& bound) {
    std::vector<IntVector> out;
    for (auto& sv : short_vectors(q, bound)) out.push_back(std::move(sv.x));
    return out;
}

MinVecSet minimal_vectors_unchecked(const QuadForm& q) {
    Rational bound = q(0, 0);
    for (std::size_t i = 1; i < q.dim(); ++i) bound = std::min(bound, q(i, i));
    auto all = Enumerator(q, bound).run();
    MinVecSet result;
    result.minimum = bound;
    for (const auto& sv : all) result.minimum = std::min(result.minimum, sv.norm);
    for (auto& sv : all)
        if (sv.norm == result.minimum) result.reps.push_back(std::move(sv.x));
    return result;
}

MinVecSet minimal_vectors(const QuadForm& q) {
    if (!is_positive_definite(q)) throw DomainError("minimal vectors need a positive definite form");
    return minimal_vectors_unchecked(q);
}

}  // namespace voronoi
