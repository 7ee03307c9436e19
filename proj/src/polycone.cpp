#include "voronoi/polycone.hpp"

#include <algorithm>
#include <bitset>

namespace voronoi {

namespace {

constexpr std::size_t kMaxGenerators = 256;
using Bits = std::bitset<kMaxGenerators>;

struct Ray {
    std::vector<Integer> y;
    Bits zero;
};

void make_primitive(std::vector<Integer>& y) {
    Integer g = 0;
    for (const auto& c : y) g = gcd(g, c);
    if (g > 1)
        for (auto& c : y) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<RawFacet> facet_enumeration(const std::vector<std::vector<Integer>>& gens, std::size_t dim) {
    if (gens.size() > kMaxGenerators) throw DomainError("too many generators for facet enumeration");

    // Greedy basis among the generators.
    std::vector<std::size_t> basis;
    {
        RatMatrix echelon(0, dim);
        std::vector<std::vector<Rational>> rows;
        std::vector<std::size_t> pivcols;
        for (std::size_t k = 0; k < gens.size() && basis.size() < dim; ++k) {
            std::vector<Rational> v(gens[k].begin(), gens[k].end());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (v[pivcols[r]] == 0) continue;
                const Rational f = v[pivcols[r]] / rows[r][pivcols[r]];
                for (std::size_t j = 0; j < dim; ++j) v[j] -= f * rows[r][j];
            }
            auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
            if (it == v.end()) continue;
            pivcols.push_back(static_cast<std::size_t>(it - v.begin()));
            rows.push_back(std::move(v));
            basis.push_back(k);
        }
    }
    if (basis.size() != dim) throw DomainError("facet enumeration needs a full-dimensional cone");

    // Initial simplicial cone: the dual rays are the columns of the inverse.
    RatMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = gens[basis[i]][j];
    std::vector<Ray> rays;
    Bits processed;
    for (auto b : basis) processed.set(b);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<Rational> e(dim, Rational(0));
        e[col] = 1;
        const auto x = solve_unique(a, e);
        Integer l = 1;
        for (const auto& c : *x) l = lcm(l, Integer(c.get_den()));
        Ray r;
        for (const auto& c : *x) r.y.push_back(Rational(c * l).get_num());
        make_primitive(r.y);
        for (std::size_t i = 0; i < dim; ++i)
            if (i != col) r.zero.set(basis[i]);
        rays.push_back(std::move(r));
    }

    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (processed.test(k)) continue;
        std::vector<Integer> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(rays[r].y, gens[k]);
            if (s[r] > 0) pos.push_back(r);
            if (s[r] < 0) neg.push_back(r);
        }
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (s[r] < 0) continue;
            next.push_back(rays[r]);
            if (s[r] == 0) next.back().zero.set(k);
        }
        for (auto p : pos)
            for (auto n : neg) {
                const Bits common = rays[p].zero & rays[n].zero;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != n && (common & rays[r].zero) == common) adjacent = false;
                if (!adjacent) continue;
                Ray nr;
                nr.y.resize(dim);
                for (std::size_t j = 0; j < dim; ++j) nr.y[j] = s[p] * rays[n].y[j] - s[n] * rays[p].y[j];
                make_primitive(nr.y);
                nr.zero = common;
                nr.zero.set(k);
                next.push_back(std::move(nr));
            }
        rays = std::move(next);
        processed.set(k);
    }

    std::vector<RawFacet> out;
    for (auto& r : rays) {
        RawFacet f{std::move(r.y), {}};
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (r.zero.test(k)) f.on.push_back(k);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const RawFacet& x, const RawFacet& y) { return x.functional < y.functional; });
    return out;
}

QuadForm normal_from_dual(std::size_t g, const std::vector<Integer>& functional) {
    if (functional.size() != sym_dim(g)) throw DimensionError("functional has wrong length");
    RatMatrix r(g, g);
    std::size_t k = 0;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            if (i == j)
                r(i, i) = functional[k];
            else {
                Rational h(functional[k], 2);
                h.canonicalize();
                r(i, j) = r(j, i) = h;
            }
            ++k;
        }
    return QuadForm(std::move(r));
}

PolyCone::PolyCone(std::size_t g, std::vector<SymLatticePoint> generators, std::vector<Facet> facets)
    : g_(g), generators_(std::move(generators)), facets_(std::move(facets)) {
    for (const auto& b : generators_)
        if (b.dim() != g_) throw DimensionError("cone generator has wrong dimension");
}

PolyCone PolyCone::with_facets(std::size_t g, std::vector<SymLatticePoint> generators) {
    std::vector<std::vector<Integer>> coords;
    for (const auto& b : generators) coords.push_back(b.coords());
    std::vector<Facet> facets;
    for (auto& raw : facet_enumeration(coords, sym_dim(g)))
        facets.push_back(Facet{normal_from_dual(g, raw.functional), std::move(raw.functional), std::move(raw.on)});
    return PolyCone(g, std::move(generators), std::move(facets));
}

std::size_t PolyCone::dim() const {
    IntMatrix m(generators_.size(), ambient_dim());
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto c = generators_[i].coords();
        for (std::size_t j = 0; j < c.size(); ++j) m(i, j) = c[j];
    }
    return rank(m);
}

SymLatticePoint PolyCone::interior_point() const {
    IntMatrix s(g_, g_);
    for (const auto& b : generators_)
        for (std::size_t i = 0; i < g_; ++i)
            for (std::size_t j = 0; j < g_; ++j) s(i, j) += b(i, j);
    return SymLatticePoint(std::move(s));
}

}  // namespace voronoi
