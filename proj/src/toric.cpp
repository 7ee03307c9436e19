#include "voronoi/toric.hpp"

#include "voronoi/lp.hpp"
#include "voronoi/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace voronoi {

std::uint64_t scan_budget() {
    if (const char* env = std::getenv("VORONOI_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("VORONOI_BUDGET is not a nonnegative integer");
        }
    }
    return kDefaultScanBudget;
}

ToricCone::ToricCone(PolyCone cone, QuadForm height) : cone_(std::move(cone)), height_(std::move(height)) {
    if (height_.dim() != cone_.g()) throw DimensionError("height form and cone differ in g");
    if (cone_.generators().empty()) throw DomainError("toric cone needs generators");
    for (const auto& b : cone_.generators())
        if (pair(height_, b) != 1) throw DomainError("height is not 1 on every generator");
}

ToricCone ToricCone::of_perfect(const QuadForm& q) {
    const auto mv = minimal_vectors(q);
    return ToricCone(perfect_cone(q), q.scaled(1 / mv.minimum));
}

ToricCone ToricCone::face(const std::vector<std::size_t>& idx) const {
    std::vector<SymLatticePoint> gens;
    for (auto k : idx) gens.push_back(cone_.generators().at(k));
    const bool full = rank_of_points(gens) == cone_.ambient_dim();
    return ToricCone(full ? PolyCone::with_facets(cone_.g(), gens) : PolyCone(cone_.g(), gens), height_);
}

std::size_t rank_of_points(const std::vector<SymLatticePoint>& pts) {
    if (pts.empty()) return 0;
    const std::size_t n = sym_dim(pts.front().dim());
    IntMatrix m(pts.size(), n);
    for (std::size_t r = 0; r < pts.size(); ++r) {
        const auto c = pts[r].coords();
        for (std::size_t j = 0; j < n; ++j) m(r, j) = c[j];
    }
    return rank(m);
}

namespace {

bool in_cone_lp(const PolyCone& cone, const std::vector<Integer>& x) {
    const std::size_t n = cone.ambient_dim();
    RatMatrix a(n, cone.generators().size());
    for (std::size_t k = 0; k < cone.generators().size(); ++k) {
        const auto c = cone.generators()[k].coords();
        for (std::size_t i = 0; i < n; ++i) a(i, k) = c[i];
    }
    std::vector<Rational> rhs(x.begin(), x.end());
    return std::holds_alternative<LpOptimal>(lp_solve(LinearProgram::equality_system(a, rhs)));
}

Integer floor_q(const Rational& r) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

Integer ceil_q(const Rational& r) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

}  // namespace

std::vector<SymLatticePoint> lattice_points_below(const ToricCone& tc, const Rational& level) {
    if (level <= 0 || level > 2) throw DomainError("level must lie in (0, 2]");
    const PolyCone& cone = tc.cone();
    const std::size_t n = cone.ambient_dim();

    // Box spanned by the vertices 0 and level * generator.
    std::vector<Integer> lo(n, 0), hi(n, 0);
    for (const auto& b : cone.generators()) {
        const auto c = b.coords();
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], floor_q(level * c[i]));
            hi[i] = std::max(hi[i], ceil_q(level * c[i]));
        }
    }
    const std::uint64_t budget = scan_budget();
    Integer count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= hi[i] - lo[i] + 1;
    if (count > Integer(std::to_string(budget)))
        throw BudgetError("lattice-point scan needs " + count.get_str() + " candidates, budget is " + std::to_string(budget));

    std::vector<Rational> zc(n);  // z as a functional on coordinates
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < cone.g(); ++i)
            for (std::size_t j = i; j < cone.g(); ++j, ++k) zc[k] = (i == j ? 1 : 2) * tc.height()(i, j);
    }

    std::vector<SymLatticePoint> out;
    std::vector<Integer> x = lo;
    for (;;) {
        bool zero = std::all_of(x.begin(), x.end(), [](const Integer& v) { return v == 0; });
        if (!zero) {
            Rational z = 0;
            for (std::size_t i = 0; i < n; ++i) z += zc[i] * x[i];
            bool keep = z <= level;
            for (std::size_t f = 0; keep && f < cone.facets().size(); ++f) {
                Integer s = 0;
                for (std::size_t i = 0; i < n; ++i) s += cone.facets()[f].dual[i] * x[i];
                if (s < 0) keep = false;
            }
            if (keep && in_cone_lp(cone, x)) out.push_back(SymLatticePoint::from_coords(cone.g(), x));
        }
        std::size_t k = 0;
        while (k < n && x[k] == hi[k]) {
            x[k] = lo[k];
            ++k;
        }
        if (k == n) break;
        ++x[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

const char* to_string(Singularity s) {
    switch (s) {
        case Singularity::Smooth: return "smooth";
        case Singularity::Terminal: return "terminal";
        case Singularity::CanonicalNotTerminal: return "canonical-not-terminal";
        case Singularity::NotCanonical: return "not-canonical";
    }
    return "?";
}

Singularity classify_singularity(const ToricCone& tc) {
    const auto& gens = tc.cone().generators();
    if (tc.cone().is_simplicial()) {
        IntMatrix m(gens.size(), tc.cone().ambient_dim());
        for (std::size_t r = 0; r < gens.size(); ++r) {
            const auto c = gens[r].coords();
            for (std::size_t j = 0; j < c.size(); ++j) m(r, j) = c[j];
        }
        const auto inv = smith_invariants(m);
        if (std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; })) return Singularity::Smooth;
    }
    const auto pts = lattice_points_below(tc, 1);
    bool extra = false;
    for (const auto& p : pts) {
        if (tc.z(p) < 1) return Singularity::NotCanonical;
        if (std::find(gens.begin(), gens.end(), p) == gens.end()) extra = true;
    }
    return extra ? Singularity::CanonicalNotTerminal : Singularity::Terminal;
}

std::vector<std::vector<std::size_t>> faces(const PolyCone& cone) {
    const std::size_t n = cone.generators().size();
    std::set<std::vector<std::size_t>> out;
    if (cone.is_simplicial()) {
        if (n > 20) throw DomainError("too many generators to list faces");
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (1u << k)) s.push_back(k);
            out.insert(std::move(s));
        }
        return {out.begin(), out.end()};
    }
    if (cone.facets().empty()) throw DomainError("faces of a non-simplicial cone need its facets");
    // Proper faces are the nonempty intersections of facets.
    std::vector<std::vector<std::size_t>> frontier;
    for (const auto& f : cone.facets())
        if (out.insert(f.on).second) frontier.push_back(f.on);
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : frontier)
            for (const auto& f : cone.facets()) {
                std::vector<std::size_t> meet;
                std::set_intersection(s.begin(), s.end(), f.on.begin(), f.on.end(), std::back_inserter(meet));
                if (!meet.empty() && out.insert(meet).second) next.push_back(std::move(meet));
            }
        frontier = std::move(next);
    }
    std::vector<std::size_t> all(n);
    for (std::size_t k = 0; k < n; ++k) all[k] = k;
    out.insert(all);
    return {out.begin(), out.end()};
}

bool verify_minima_rank1(const QuadForm& q, long box) {
    if (box < 2) throw DomainError("box must be at least 2");
    const Rational m = minimal_vectors(q).minimum;
    const std::size_t g = q.dim(), n = sym_dim(g);
    std::vector<long> x(n, -box);
    for (;;) {
        std::vector<Integer> c(x.begin(), x.end());
        const auto b = SymLatticePoint::from_coords(g, c);
        bool diag_ok = true;
        for (std::size_t i = 0; i < g; ++i)
            if (b(i, i) < 0) diag_ok = false;
        if (diag_ok && !b.entries().is_zero() && pair(q, b) <= m) {
            const auto d = definiteness(QuadForm(b.entries()));
            if (d.kind != Definiteness::Indefinite && d.rank != 1) return false;
        }
        std::size_t k = 0;
        while (k < n && x[k] == box) x[k++] = -box;
        if (k == n) break;
        ++x[k];
    }
    return true;
}

}  // namespace voronoi
