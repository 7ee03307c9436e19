#include "voronoi/conefan.hpp"

#include "voronoi/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace voronoi {

namespace {

constexpr std::size_t kMaxWalkSteps = 100000;

Rational dot(const std::vector<Integer>& y, const std::vector<Integer>& x) {
    Integer s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * x[i];
    return Rational(s);
}

Rational dot(const std::vector<Integer>& y, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * x[i];
    return s;
}

void require_psd_nonzero(const SymLatticePoint& b) {
    if (b.entries().is_zero()) throw DomainError("zero form has no cone");
    if (definiteness(QuadForm(b.entries())).kind == Definiteness::Indefinite)
        throw DomainError("form is not positive semidefinite");
}

std::vector<Rational> cone_coefficients(const PolyCone& cone, const SymLatticePoint& b) {
    const std::size_t n = sym_dim(cone.g());
    RatMatrix a(n, cone.generators().size());
    for (std::size_t k = 0; k < cone.generators().size(); ++k) {
        const auto c = cone.generators()[k].coords();
        for (std::size_t i = 0; i < n; ++i) a(i, k) = c[i];
    }
    std::vector<Rational> rhs;
    for (const auto& c : b.coords()) rhs.emplace_back(c);
    const auto res = lp_solve(LinearProgram::equality_system(a, rhs));
    if (const auto* opt = std::get_if<LpOptimal>(&res)) return opt->point;
    throw std::logic_error("cone membership: facet test and LP disagree");
}

}  // namespace

bool verify_certificate(const ConeMembershipCertificate& cert, const SymLatticePoint& b) {
    if (b.dim() != cert.g || cert.lambda.size() != cert.generators.size()) return false;
    if (cert.class_id >= cached_catalog(cert.g).size()) return false;
    if (!(transform(cached_catalog(cert.g)[cert.class_id].form, cert.twist) == cert.form)) return false;
    const auto mv = minimal_vectors(cert.form);
    if (minimal_squares(mv) != cert.generators) return false;
    RatMatrix sum(cert.g, cert.g);
    for (std::size_t k = 0; k < cert.generators.size(); ++k) {
        if (cert.lambda[k] < 0) return false;
        for (std::size_t i = 0; i < cert.g; ++i)
            for (std::size_t j = 0; j < cert.g; ++j) sum(i, j) += cert.lambda[k] * cert.generators[k](i, j);
    }
    return sum == to_rational(b.entries());
}

ConeMembershipCertificate locate_cone(const SymLatticePoint& b) {
    require_psd_nonzero(b);
    const std::size_t g = b.dim();
    const auto target = b.coords();

    PerfectFormRecord cur = make_record(root_form_a(g));
    std::vector<Rational> start;
    for (const auto& c : cur.cone.interior_point().coords()) start.emplace_back(c);
    std::vector<Rational> dir(target.size());
    for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = target[i] - start[i];

    ConeMembershipCertificate cert;
    cert.g = g;
    std::set<RatMatrix> visited{cur.form.gram()};
    Rational t_cur = 0;
    for (std::size_t step = 0;; ++step) {
        if (step > kMaxWalkSteps) throw std::logic_error("cone walk exceeded its step limit");
        // Parameter at which the segment start + t*dir leaves each facet half-space.
        std::optional<Rational> t_exit;
        std::vector<std::size_t> exits;
        for (std::size_t f = 0; f < cur.cone.facets().size(); ++f) {
            const auto& y = cur.cone.facets()[f].dual;
            if (dot(y, target) >= 0) continue;
            const Rational f0 = dot(y, start), slope = dot(y, dir);
            const Rational t = -f0 / slope;
            if (!t_exit || t < *t_exit) {
                t_exit = t;
                exits.assign(1, f);
            } else if (t == *t_exit) {
                exits.push_back(f);
            }
        }
        if (!t_exit) break;
        if (*t_exit < t_cur) throw std::logic_error("cone walk lost the segment");
        t_cur = *t_exit;

        // Prefer a crossing after which the segment continues inside the new
        // cone; among the rest, the least functional not yet visited.
        std::sort(exits.begin(), exits.end(), [&](std::size_t a, std::size_t c) {
            return cur.cone.facets()[a].dual < cur.cone.facets()[c].dual;
        });
        std::optional<PerfectFormRecord> next;
        std::size_t crossed = exits.front();
        std::optional<PerfectFormRecord> fallback;
        std::size_t fallback_facet = exits.front();
        for (auto f : exits) {
            PerfectFormRecord cand = make_record(neighbor(cur, f).form);
            if (visited.count(cand.form.gram())) continue;
            bool continues = true;
            for (const auto& facet : cand.cone.facets()) {
                const Rational at = dot(facet.dual, start) + t_cur * dot(facet.dual, dir);
                if (at == 0 && dot(facet.dual, dir) < 0) continues = false;
            }
            if (continues) {
                next = std::move(cand);
                crossed = f;
                break;
            }
            if (!fallback) {
                fallback = std::move(cand);
                fallback_facet = f;
            }
        }
        if (!next) {
            if (!fallback) throw std::logic_error("cone walk is cycling");
            next = std::move(fallback);
            crossed = fallback_facet;
        }
        cert.path.push_back({cur.cone.facets()[crossed].dual, next->form});
        visited.insert(next->form.gram());
        cur = std::move(*next);
    }

    cert.lambda = cone_coefficients(cur.cone, b);
    cert.generators = cur.cone.generators();
    cert.form = cur.form;
    const auto& catalog = cached_catalog(g);
    const InvariantKey key = invariant_key(cur.form);
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (!(catalog[c].key == key)) continue;
        if (auto u = is_equivalent(catalog[c].form, cur.form)) {
            cert.class_id = c;
            cert.twist = *u;
            return cert;
        }
    }
    throw std::logic_error("located cone matches no catalogued class");
}

Rational cocore_height(const SymLatticePoint& b) {
    const auto cert = locate_cone(b);
    return pair(cert.form, b) / minimal_vectors(cert.form).minimum;
}

QuadForm direct_sum(const QuadForm& q1, const QuadForm& q2) {
    if (!is_positive_definite(q1) || !is_positive_definite(q2)) throw DomainError("direct sum needs positive definite forms");
    QuadForm s = block_sum(q1, q2);
    const auto m1 = minimal_vectors_unchecked(q1), m2 = minimal_vectors_unchecked(q2);
    if (m1.minimum == m2.minimum) {
        std::vector<IntVector> expect;
        const std::size_t g1 = q1.dim(), g2 = q2.dim();
        for (const auto& x : m1.reps) {
            auto c = x.coords();
            c.resize(g1 + g2, 0);
            expect.emplace_back(std::move(c));
        }
        for (const auto& x : m2.reps) {
            std::vector<Integer> c(g1, 0);
            c.insert(c.end(), x.coords().begin(), x.coords().end());
            expect.push_back(IntVector(std::move(c)).canonical_sign());
        }
        std::sort(expect.begin(), expect.end());
        const auto ms = minimal_vectors_unchecked(s);
        if (ms.minimum != m1.minimum || ms.reps != expect) throw std::logic_error("direct sum: minimal vectors are not the union");
    }
    return s;
}

QuadForm extend(const QuadForm& q) {
    if (!is_positive_definite(q)) throw DomainError("extend needs a positive definite form");
    const std::size_t g = q.dim();
    const auto mv = minimal_vectors_unchecked(q);
    QuadForm f = block_sum(q, QuadForm(RatMatrix{{mv.minimum}}));
    const auto mf = minimal_vectors_unchecked(f);
    std::vector<IntVector> expect;
    for (const auto& x : mv.reps) {
        auto c = x.coords();
        c.push_back(0);
        expect.emplace_back(std::move(c));
    }
    std::vector<Integer> e(g + 1, 0);
    e[g] = 1;
    expect.emplace_back(std::move(e));
    std::sort(expect.begin(), expect.end());
    if (mf.minimum != mv.minimum || mf.reps != expect) throw std::logic_error("extend: minimal vectors are not min(q) and e");
    const auto r_old = perfection_rank(q), r_new = perfection_rank(f);
    if (r_new != r_old + 1) throw std::logic_error("extend: perfection rank did not grow by one");
    return f;
}

std::size_t interior_rank(const PolyCone& c) {
    if (c.generators().empty()) throw DomainError("empty cone");
    return rank(c.interior_point().entries());
}

}  // namespace voronoi
