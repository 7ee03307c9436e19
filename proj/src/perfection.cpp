#include "voronoi/perfection.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

namespace voronoi {

std::vector<SymLatticePoint> minimal_squares(const MinVecSet& mv) {
    std::vector<SymLatticePoint> out;
    out.reserve(mv.reps.size());
    for (const auto& x : mv.reps) out.push_back(rank1(x));
    return out;
}

namespace {

std::size_t squares_rank(std::size_t g, const MinVecSet& mv) {
    IntMatrix m(mv.reps.size(), sym_dim(g));
    for (std::size_t r = 0; r < mv.reps.size(); ++r) {
        const auto c = rank1(mv.reps[r]).coords();
        for (std::size_t j = 0; j < c.size(); ++j) m(r, j) = c[j];
    }
    return rank(m);
}

QuadForm add_multiple(const QuadForm& q, const Rational& rho, const QuadForm& r) {
    RatMatrix m = q.gram();
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j) m(i, j) += rho * r(i, j);
    return QuadForm(std::move(m));
}

}  // namespace

std::size_t perfection_rank(const QuadForm& q) { return squares_rank(q.dim(), minimal_vectors(q)); }

bool is_perfect(const QuadForm& q) { return perfection_rank(q) == sym_dim(q.dim()); }

PolyCone perfect_cone(const QuadForm& q) {
    const auto mv = minimal_vectors(q);
    if (squares_rank(q.dim(), mv) != sym_dim(q.dim())) throw DomainError("form is not perfect");
    return PolyCone::with_facets(q.dim(), minimal_squares(mv));
}

QuadForm normalize_scale(const QuadForm& q) {
    const Rational m = minimal_vectors(q).minimum;
    QuadForm s = q.scaled(Rational(2) / m);
    const Integer l = denominator_lcm(s.gram());
    return l == 1 ? s : s.scaled(Rational(l));
}

InvariantKey invariant_key(const QuadForm& q) {
    const auto mv = minimal_vectors(q);
    InvariantKey k{q.dim(), q.determinant(), mv.minimum, mv.kissing(), {}};
    for (std::size_t i = 0; i < mv.reps.size(); ++i)
        for (std::size_t j = i + 1; j < mv.reps.size(); ++j) k.pairwise.push_back(abs(q.bilinear(mv.reps[i], mv.reps[j])));
    std::sort(k.pairwise.begin(), k.pairwise.end());
    return k;
}

PerfectFormRecord make_record(const QuadForm& q) {
    auto mv = minimal_vectors(q);
    if (squares_rank(q.dim(), mv) != sym_dim(q.dim())) throw DomainError("form is not perfect");
    PolyCone cone = PolyCone::with_facets(q.dim(), minimal_squares(mv));
    return PerfectFormRecord{q, std::move(mv), std::move(cone), invariant_key(q), {}, std::nullopt};
}

NeighborResult neighbor(const PerfectFormRecord& rec, std::size_t facet_index) {
    return neighbor(rec.form, rec.cone, facet_index);
}

NeighborResult neighbor(const QuadForm& q, const PolyCone& cone, std::size_t facet_index) {
    if (facet_index >= cone.facets().size()) throw std::out_of_range("facet index out of range");
    const Facet& facet = cone.facets()[facet_index];
    const QuadForm& dir = facet.normal;
    if (definiteness(dir).kind != Definiteness::Indefinite)
        throw DomainError("facet lies on the boundary of the positive cone; it has no neighbour");
    const Rational m = minimal_vectors(q).minimum;

    // Bracket a step whose form is positive definite with minimum below m.
    Rational lo = 0, hi = 1;
    for (int guard = 0;; ++guard) {
        if (guard > 4096) throw std::logic_error("neighbour search: no admissible step found");
        const QuadForm trial = add_multiple(q, hi, dir);
        if (!is_positive_definite(trial)) {
            hi = (lo + hi) / 2;
            continue;
        }
        if (minimal_vectors_unchecked(trial).minimum < m) break;
        lo = hi;
        hi *= 2;
    }

    // Shrink to the first step where some new vector reaches m.
    Rational rho = hi;
    for (int guard = 0;; ++guard) {
        if (guard > 4096) throw std::logic_error("neighbour search did not converge");
        const QuadForm trial = add_multiple(q, rho, dir);
        bool below = false;
        Rational next = rho;
        for (const auto& sv : short_vectors(trial, m)) {
            if (sv.norm >= m) continue;
            below = true;
            const Rational rv = dir.value(sv.x);  // negative for these
            const Rational step = (m - q.value(sv.x)) / rv;
            if (step < next) next = step;
        }
        if (!below) break;
        rho = next;
    }

    QuadForm result = add_multiple(q, rho, dir);

    // Certify contiguity.
    const auto mv = minimal_vectors(result);
    if (mv.minimum != m) throw std::logic_error("neighbour has the wrong minimum");
    const auto old = minimal_vectors_unchecked(q);
    for (auto k : facet.on)
        if (!std::binary_search(mv.reps.begin(), mv.reps.end(), old.reps[k]))
            throw std::logic_error("neighbour lost a facet vector");
    bool fresh = false;
    for (const auto& x : mv.reps) {
        if (!std::binary_search(old.reps.begin(), old.reps.end(), x)) {
            fresh = true;
            continue;
        }
        if (dir.value(x) != 0) throw std::logic_error("neighbour shares a vector off the facet");
    }
    if (!fresh) throw std::logic_error("neighbour has no new minimal vectors");
    if (squares_rank(result.dim(), mv) != sym_dim(result.dim())) throw std::logic_error("neighbour is not perfect");
    return NeighborResult{std::move(result), rho};
}

namespace {

struct FacetOrbits {
    std::vector<std::size_t> reps;           // least facet index of each orbit
    std::vector<std::size_t> orbit_of;       // facet -> position in reps
    std::vector<UnimodularMap> carrier;      // facet f = carrier[f](reps[orbit_of[f]])
};

constexpr std::size_t kAutomorphismSample = 48;

// Orbits of the facets under a sample of Aut(q); a finer partition than the
// true orbits is harmless, every carrier is an exact automorphism.
FacetOrbits facet_orbits(const PerfectFormRecord& rec) {
    const auto& facets = rec.cone.facets();
    const std::size_t nf = facets.size(), g = rec.form.dim();
    FacetOrbits out;
    out.orbit_of.assign(nf, 0);
    out.carrier.assign(nf, UnimodularMap::identity(g));
    std::map<std::vector<std::size_t>, std::size_t> by_support;
    for (std::size_t f = 0; f < nf; ++f) by_support.emplace(facets[f].on, f);

    std::vector<UnimodularMap> gens = automorphism_sample(rec.form, kAutomorphismSample);
    // generator permutations of the facet list
    std::vector<std::vector<std::size_t>> perm;
    for (const auto& a : gens) {
        std::vector<std::size_t> gen_image(rec.minvecs.reps.size());
        for (std::size_t k = 0; k < rec.minvecs.reps.size(); ++k) {
            const auto& x = rec.minvecs.reps[k];
            std::vector<Integer> y(g, 0);
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j) y[i] += a.matrix()(i, j) * x[j];
            const IntVector img = IntVector(std::move(y)).canonical_sign();
            const auto it = std::lower_bound(rec.minvecs.reps.begin(), rec.minvecs.reps.end(), img);
            if (it == rec.minvecs.reps.end() || !(*it == img)) throw std::logic_error("automorphism does not preserve min(q)");
            gen_image[k] = static_cast<std::size_t>(it - rec.minvecs.reps.begin());
        }
        std::vector<std::size_t> p(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            std::vector<std::size_t> on;
            for (auto k : facets[f].on) on.push_back(gen_image[k]);
            std::sort(on.begin(), on.end());
            const auto it = by_support.find(on);
            if (it == by_support.end()) throw std::logic_error("automorphism does not permute facets");
            p[f] = it->second;
        }
        perm.push_back(std::move(p));
    }

    std::vector<bool> seen(nf, false);
    for (std::size_t f0 = 0; f0 < nf; ++f0) {
        if (seen[f0]) continue;
        const std::size_t id = out.reps.size();
        out.reps.push_back(f0);
        seen[f0] = true;
        out.orbit_of[f0] = id;
        std::vector<std::size_t> queue{f0};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::size_t f = queue[qi];
            for (std::size_t s = 0; s < perm.size(); ++s) {
                const std::size_t h = perm[s][f];
                if (seen[h]) continue;
                seen[h] = true;
                out.orbit_of[h] = id;
                out.carrier[h] = gens[s] * out.carrier[f];
                queue.push_back(h);
            }
        }
    }
    return out;
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<PerfectFormRecord> enumerate_perfect(std::size_t g, const EnumerationOptions& opts) {
    if (g < 1 || g > kMaxEnumerationRank)
        throw DomainError("perfect form enumeration supports 1 <= g <= " + std::to_string(kMaxEnumerationRank));

    std::vector<PerfectFormRecord> classes;
    classes.push_back(make_record(canonical_form(normalize_scale(root_form_a(g))).form));

    for (std::size_t c = 0; c < classes.size(); ++c) {
        const FacetOrbits orbits = facet_orbits(classes[c]);
        const std::size_t nr = orbits.reps.size();
        std::vector<std::optional<QuadForm>> found(nr);
        std::vector<InvariantKey> keys(nr);
        parallel_for(nr, opts.jobs, [&](std::size_t r) {
            const std::size_t f = orbits.reps[r];
            if (definiteness(classes[c].cone.facets()[f].normal).kind != Definiteness::Indefinite) return;
            found[r] = normalize_scale(neighbor(classes[c], f).form);
            keys[r] = invariant_key(*found[r]);
        });

        std::vector<NeighborLink> rep_links;
        for (std::size_t r = 0; r < nr; ++r) {
            NeighborLink link;
            link.facet = orbits.reps[r];
            if (!found[r]) {
                rep_links.push_back(std::move(link));
                continue;
            }
            const QuadForm& nform = *found[r];
            for (std::size_t j = 0; j < classes.size() && !link.neighbor_class; ++j) {
                if (!(classes[j].key == keys[r])) continue;
                if (auto u = is_equivalent(classes[j].form, nform)) {
                    link.neighbor_class = j;
                    link.witness = std::move(u);
                }
            }
            if (!link.neighbor_class) {
                classes.push_back(make_record(canonical_form(nform).form));
                link.neighbor_class = classes.size() - 1;
                link.witness = is_equivalent(classes.back().form, nform);
                if (!link.witness) throw std::logic_error("canonical form is not equivalent to its source");
            }
            link.neighbor_form = nform;
            rep_links.push_back(std::move(link));
        }

        // Carry each representative's link to its orbit: facet f = a(rep)
        // has neighbour a^-T N a^-1 and witness W a^-1.
        const std::size_t nf = classes[c].cone.facets().size();
        std::vector<NeighborLink> links(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            const NeighborLink& rep = rep_links[orbits.orbit_of[f]];
            NeighborLink& link = links[f];
            link.facet = f;
            if (rep.boundary()) continue;
            link.neighbor_class = rep.neighbor_class;
            if (f == rep.facet) {
                link = rep;
                continue;
            }
            const UnimodularMap inv = orbits.carrier[f].inverse();
            link.neighbor_form = transform(*rep.neighbor_form, inv);
            link.witness = *rep.witness * inv;
        }
        classes[c].neighbors = std::move(links);
    }

    if (opts.compute_automorphisms)
        parallel_for(classes.size(), opts.jobs, [&](std::size_t i) { classes[i].aut_order = automorphism_order(classes[i].form); });

    // Deterministic order: invariant key, then canonical Gram.
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (classes[a].key != classes[b].key) return classes[a].key < classes[b].key;
        return classes[a].form < classes[b].form;
    });
    std::vector<std::size_t> new_id(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = i;
    std::vector<PerfectFormRecord> sorted;
    sorted.reserve(classes.size());
    for (auto i : order) {
        sorted.push_back(std::move(classes[i]));
        for (auto& link : sorted.back().neighbors)
            if (link.neighbor_class) link.neighbor_class = new_id[*link.neighbor_class];
    }
    return sorted;
}

const std::vector<PerfectFormRecord>& cached_catalog(std::size_t g) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<std::vector<PerfectFormRecord>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[g];
    if (!slot) slot = std::make_unique<std::vector<PerfectFormRecord>>(enumerate_perfect(g, {1, false}));
    return *slot;
}

bool closure_certificate_holds(const std::vector<PerfectFormRecord>& catalog, bool recompute) {
    for (const auto& rec : catalog) {
        if (rec.neighbors.size() != rec.cone.facets().size()) return false;
        for (std::size_t f = 0; f < rec.neighbors.size(); ++f) {
            const auto& link = rec.neighbors[f];
            if (link.facet != f) return false;
            const bool boundary_normal = definiteness(rec.cone.facets()[f].normal).kind != Definiteness::Indefinite;
            if (link.boundary()) {
                if (!boundary_normal) return false;
                continue;
            }
            if (boundary_normal || !link.witness || !link.neighbor_form) return false;
            if (*link.neighbor_class >= catalog.size()) return false;
            if (!(transform(catalog[*link.neighbor_class].form, *link.witness) == *link.neighbor_form)) return false;
            if (recompute && !(normalize_scale(neighbor(rec, f).form) == *link.neighbor_form)) return false;
        }
    }
    return true;
}

}  // namespace voronoi
