#include <doctest.h>

#include "oracles.hpp"
#include "voronoi/io.hpp"
#include "voronoi/perfection.hpp"

#include <iostream>

using namespace voronoi;

namespace {

const QuadForm kA2 = parse_form("2,1;1,2");
const QuadForm kA3 = parse_form("2,-1,0;-1,2,-1;0,-1,2");
const QuadForm kA4 = parse_form("2,-1,0,0;-1,2,-1,0;0,-1,2,-1;0,0,-1,2");
const QuadForm kD4 = parse_form("2,0,-1,0;0,2,-1,0;-1,-1,2,-1;0,0,-1,2");

QuadForm identity(std::size_t g) { return QuadForm(RatMatrix::identity(g)); }

std::vector<std::vector<Integer>> coords_of(const PolyCone& c) {
    std::vector<std::vector<Integer>> out;
    for (const auto& b : c.generators()) out.push_back(b.coords());
    return out;
}

std::vector<std::vector<Integer>> duals_of(const PolyCone& c) {
    std::vector<std::vector<Integer>> out;
    for (const auto& f : c.facets()) out.push_back(f.dual);
    return out;
}

}  // namespace

TEST_CASE("perfection rank") {
    CHECK(perfection_rank(kA2) == 3);
    CHECK(perfection_rank(identity(2)) == 2);
    CHECK(perfection_rank(kA3) == 6);
    CHECK(perfection_rank(kD4) == 10);
    CHECK_THROWS_AS(perfection_rank(parse_form("1,1;1,1")), DomainError);
}

TEST_CASE("is_perfect") {
    CHECK(is_perfect(kA2));
    CHECK_FALSE(is_perfect(identity(2)));
    CHECK(is_perfect(kD4));
    CHECK(is_perfect(kA4));
    CHECK(minimal_vectors(kD4).kissing() == 24);
}

TEST_CASE("perfect cone of A2") {
    const PolyCone c = perfect_cone(kA2);
    const std::vector<std::vector<Integer>> gens{{0, 0, 1}, {1, -1, 1}, {1, 0, 0}};
    CHECK(coords_of(c) == gens);
    REQUIRE(c.facets().size() == 3);
    for (const auto& f : c.facets()) CHECK(f.on.size() == 2);
    CHECK(c.is_simplicial());
    CHECK_THROWS_AS(perfect_cone(identity(2)), DomainError);
}

TEST_CASE("perfect cones of A3, A4 and D4 match a brute-force facet scan") {
    const PolyCone a3 = perfect_cone(kA3);
    CHECK(a3.generators().size() == 6);
    CHECK(a3.facets().size() == 6);
    CHECK(a3.is_simplicial());
    CHECK(duals_of(a3) == oracle::brute_facets(coords_of(a3), 6));

    const PolyCone a4 = perfect_cone(kA4);
    CHECK(a4.generators().size() == 10);
    CHECK(a4.facets().size() == 10);
    CHECK(duals_of(a4) == oracle::brute_facets(coords_of(a4), 10));

    const PolyCone d4 = perfect_cone(kD4);
    CHECK(d4.generators().size() == 12);
    CHECK(d4.dim() == 10);
    CHECK(duals_of(d4) == oracle::brute_facets(coords_of(d4), 10));
    MESSAGE("D4 perfect cone facets: " << d4.facets().size());
}

TEST_CASE("property: facet normals are nonnegative on generators, zero exactly on the facet") {
    for (const auto& q : {kA2, kA3, kA4, kD4}) {
        const PolyCone c = perfect_cone(q);
        for (const auto& f : c.facets()) {
            for (std::size_t k = 0; k < c.generators().size(); ++k) {
                const Rational v = pair(f.normal, c.generators()[k]);
                const bool on = std::binary_search(f.on.begin(), f.on.end(), k);
                CHECK(v >= 0);
                CHECK((v == 0) == on);
            }
        }
    }
}

TEST_CASE("equivalence") {
    const QuadForm swapped = transform(kA2, UnimodularMap(IntMatrix{{0, 1}, {1, 0}}));
    const auto u = is_equivalent(kA2, swapped);
    REQUIRE(u);
    CHECK(transform(kA2, *u) == swapped);
    CHECK_FALSE(is_equivalent(kA4, kD4));
    CHECK_FALSE(is_equivalent(identity(3), parse_form("1,0,0;0,2,0;0,0,1")));
    CHECK(is_equivalent(kA2, parse_form("2,-1;-1,2")));
    CHECK_THROWS_AS(is_equivalent(kA2, kA3), DimensionError);
}

TEST_CASE("automorphism order") {
    CHECK(automorphism_order(kA2) == 12);
    CHECK(automorphism_order(identity(2)) == 8);
    CHECK(automorphism_order(identity(3)) == 48);
    CHECK(automorphism_order(kA3) == 48);    // W(A3) x {+-1}
    CHECK(automorphism_order(kD4) == 1152);  // W(F4)
    CHECK(automorphism_order(kA4) == 240);   // W(A4) x {+-1}
}

TEST_CASE("property: perfection and equivalence survive random conjugation") {
    std::mt19937 rng(4);
    for (int t = 0; t < 40; ++t) {
        const QuadForm& q = (t % 4 == 0) ? kA2 : (t % 4 == 1) ? kA3 : (t % 4 == 2) ? kA4 : kD4;
        const UnimodularMap u(oracle::random_unimodular(rng, q.dim()));
        const QuadForm moved = transform(q, u);
        CHECK(is_perfect(moved));
        const auto w = is_equivalent(q, moved);
        REQUIRE(w);
        CHECK(transform(q, *w) == moved);
        CHECK(invariant_key(moved) == invariant_key(q));
        CHECK(canonical_form(moved).form == canonical_form(q).form);
    }
}

TEST_CASE("canonical form separates classes and re-verifies") {
    CHECK_FALSE(canonical_form(kA4).form == canonical_form(kD4).form);
    for (const auto& q : {kA2, kA3, kD4, identity(3)}) {
        const auto c = canonical_form(q);
        CHECK(transform(q, c.basis) == c.form);
    }
}

TEST_CASE("neighbours") {
    const auto a2 = make_record(kA2);
    for (std::size_t f = 0; f < a2.cone.facets().size(); ++f) {
        const auto n = neighbor(a2, f);
        CHECK(n.rho > 0);
        CHECK(minimal_vectors(n.form).minimum == 2);
        CHECK(is_equivalent(kA2, n.form));
    }
    const auto a3 = make_record(kA3);
    for (std::size_t f = 0; f < a3.cone.facets().size(); ++f) CHECK(is_equivalent(kA3, neighbor(a3, f).form));

    const auto a4 = make_record(kA4);
    bool reaches_d4 = false;
    for (std::size_t f = 0; f < a4.cone.facets().size(); ++f) {
        const QuadForm n = normalize_scale(neighbor(a4, f).form);
        if (is_equivalent(n, kD4)) reaches_d4 = true;
    }
    CHECK(reaches_d4);
    CHECK_THROWS_AS(neighbor(a2, 3), std::out_of_range);
}

TEST_CASE("property: neighbour involution and facet sharing") {
    for (const auto& q : {kA2, kA3, kA4, kD4}) {
        const auto rec = make_record(q);
        for (std::size_t f = 0; f < rec.cone.facets().size(); ++f) {
            const auto n = neighbor(rec, f);
            // facet generators are minimal squares of the neighbour
            const auto nrec = make_record(n.form);
            std::size_t shared = 0;
            for (const auto& b : nrec.cone.generators())
                if (std::find(rec.cone.generators().begin(), rec.cone.generators().end(), b) != rec.cone.generators().end())
                    ++shared;
            CHECK(shared == rec.cone.facets()[f].on.size());
            // crossing back over the shared facet returns to q's class
            bool back = false;
            for (std::size_t g = 0; g < nrec.cone.facets().size() && !back; ++g) {
                const auto& on = nrec.cone.facets()[g].on;
                if (on.size() != shared) continue;
                bool all_shared = true;
                for (auto k : on)
                    if (std::find(rec.cone.generators().begin(), rec.cone.generators().end(), nrec.cone.generators()[k]) ==
                        rec.cone.generators().end())
                        all_shared = false;
                if (!all_shared) continue;
                back = neighbor(nrec, g).form == q;
            }
            CHECK(back);
        }
    }
}

TEST_CASE("property: a perfect form is determined by its minimum and minimal vectors") {
    for (const auto& q : {kA2, kA3, kA4, kD4}) {
        const auto mv = minimal_vectors(q);
        const std::size_t g = q.dim();
        // unknowns: upper-triangle Gram entries; equations q''(x) = m
        RatMatrix a(mv.reps.size(), sym_dim(g));
        std::vector<Rational> rhs(mv.reps.size(), mv.minimum);
        for (std::size_t r = 0; r < mv.reps.size(); ++r) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = i; j < g; ++j, ++k) a(r, k) = (i == j ? 1 : 2) * mv.reps[r][i] * mv.reps[r][j];
        }
        const auto sol = solve_unique(a, rhs);
        REQUIRE(sol);
        std::size_t k = 0;
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = i; j < g; ++j, ++k) CHECK((*sol)[k] == q(i, j));
    }
}

TEST_CASE("enumeration of perfect forms") {
    const std::size_t expected[] = {0, 1, 1, 1, 2, 3};
    for (std::size_t g = 1; g <= 4; ++g) {
        const auto cat = enumerate_perfect(g);
        CHECK(cat.size() == expected[g]);
        CHECK(closure_certificate_holds(cat, true));
        for (const auto& rec : cat) {
            CHECK(rec.cone.generators().size() * 2 == rec.minvecs.kissing());
            CHECK(is_perfect(rec.form));
            CHECK(rec.form.is_integral());
        }
    }
    const auto g2 = enumerate_perfect(2);
    CHECK(g2.front().minvecs.kissing() == 6);
    CHECK(*g2.front().aut_order == 12);
    const auto g4 = enumerate_perfect(4);
    REQUIRE(g4.size() == 2);
    std::vector<std::size_t> k{g4[0].minvecs.kissing(), g4[1].minvecs.kissing()};
    std::sort(k.begin(), k.end());
    CHECK(k == std::vector<std::size_t>{20, 24});
    CHECK_THROWS_AS(enumerate_perfect(0), DomainError);
    CHECK_THROWS_AS(enumerate_perfect(8), DomainError);
}

TEST_CASE("property: enumeration output does not depend on the worker count") {
    const auto one = enumerate_perfect(4, {1, true});
    const auto many = enumerate_perfect(4, {4, true});
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].form == many[i].form);
        REQUIRE(one[i].neighbors.size() == many[i].neighbors.size());
        for (std::size_t f = 0; f < one[i].neighbors.size(); ++f) {
            CHECK(one[i].neighbors[f].neighbor_class == many[i].neighbors[f].neighbor_class);
            CHECK(*one[i].neighbors[f].witness == *many[i].neighbors[f].witness);
        }
    }
}

TEST_CASE("g = 1 has one class whose only facet is on the boundary") {
    const auto cat = enumerate_perfect(1);
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].form == parse_form("2"));
    REQUIRE(cat[0].neighbors.size() == 1);
    CHECK(cat[0].neighbors[0].boundary());
    CHECK(closure_certificate_holds(cat));
}
