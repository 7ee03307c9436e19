#include "voronoi/tai.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace voronoi {

long euler_phi(long m) {
    long out = m, n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        out -= out / p;
    }
    if (n > 1) out -= out / n;
    return out;
}

TaiProblem TaiProblem::make(long m, TaiConvention convention) {
    if (m < 3) throw DomainError("Tai problem needs m >= 3");
    TaiProblem p;
    p.m = m;
    p.convention = convention;
    for (long u = 1; 2 * u < m; ++u)
        if (std::gcd(u, m) == 1) p.pairs.emplace_back(u, m - u);
    p.r = static_cast<long>(p.pairs.size());
    if (p.r > kMaxTaiRank) throw DomainError("Tai problem too large for exhaustive search");
    return p;
}

Rational fractional_sum(const TaiProblem& p, const std::vector<long>& t) {
    long num = 0;  // sum of residues; the value is num / m
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i; j < t.size(); ++j) {
            const long s = (t[i] + t[j]) % p.m;
            num += (s == 0 && p.convention == TaiConvention::ZeroAsOne) ? p.m : s;
        }
    Rational v(num, p.m);
    v.canonicalize();
    return v;
}

TaiMinimum min_fractional_sum(const TaiProblem& p) {
    std::optional<TaiMinimum> best;
    for (unsigned long mask = 0; mask < (1ul << p.r); ++mask) {
        std::vector<long> t;
        for (long i = 0; i < p.r; ++i) t.push_back((mask >> i) & 1 ? p.pairs[i].second : p.pairs[i].first);
        std::sort(t.begin(), t.end());
        Rational v = fractional_sum(p, t);
        if (!best || v < best->value || (v == best->value && t < best->minimizer)) best = TaiMinimum{v, t};
    }
    return *best;
}

namespace {

Rational r_of(long m) {
    if (m < 3) throw DomainError("bound needs m >= 3");
    return Rational(euler_phi(m) / 2);
}

}  // namespace

Rational bound_original(long m) {
    const Rational r = r_of(m);
    return r * (r + 1) * (r + 1) / (4 * m);
}

Rational bound_refined(long m) {
    const Rational r = r_of(m);
    return (r * r * r + Rational(3, 2) * r * r + r / 2) / (4 * m);
}

std::vector<TaiScanRow> exceptional_scan(long m_max, TaiConvention convention) {
    if (m_max < 3) throw DomainError("scan needs m_max >= 3");
    std::vector<TaiScanRow> out;
    for (long m = 3; m <= m_max; ++m) {
        const Rational b = bound_refined(m);
        if (b >= 1) continue;
        auto mn = min_fractional_sum(TaiProblem::make(m, convention));
        const Comparison c = mn.value < 1 ? Comparison::Less : mn.value == 1 ? Comparison::Equal : Comparison::Greater;
        out.push_back({m, b, std::move(mn), c});
    }
    return out;
}

}  // namespace voronoi
