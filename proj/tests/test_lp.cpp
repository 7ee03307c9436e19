#include <doctest.h>

#include "oracles.hpp"
#include "voronoi/lp.hpp"

using namespace voronoi;

TEST_CASE("lp: forced optimum") {
    LinearProgram p = LinearProgram::equality_system(RatMatrix{{1, 0}, {0, 0}, {0, 1}}, {1, 0, 1});
    p.c = {1, 1};
    const auto r = lp_solve(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r));
    const auto& opt = std::get<LpOptimal>(r);
    CHECK(opt.value == 2);
    CHECK(verify_feasible(p, opt.point));
}

TEST_CASE("lp: unreachable coordinate is infeasible") {
    const LinearProgram p = LinearProgram::equality_system(RatMatrix{{1}, {0}, {0}}, {0, 1, 0});
    const auto r = lp_solve(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(r));
    CHECK(verify_certificate(p, std::get<LpInfeasible>(r)));
}

TEST_CASE("lp: unbounded") {
    LinearProgram p;
    p.a = RatMatrix(0, 1);
    p.c = {-1};
    p.sign = {VarSign::NonNegative};
    const auto r = lp_solve(p);
    REQUIRE(std::holds_alternative<LpUnbounded>(r));
    CHECK(verify_ray(p, std::get<LpUnbounded>(r)));
}

TEST_CASE("lp: inequalities and free variables") {
    // min x - y  s.t. x + y <= 4, x - y >= -2, y free, x >= 0 -> x=0, y=2, value -2
    LinearProgram p;
    p.a = RatMatrix{{1, 1}, {1, -1}};
    p.b = {4, -2};
    p.sense = {RowSense::LessEqual, RowSense::GreaterEqual};
    p.c = {1, -1};
    p.sign = {VarSign::NonNegative, VarSign::Free};
    const auto r = lp_solve(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r));
    CHECK(std::get<LpOptimal>(r).value == -2);

    p.b = {-4, -2};  // optimum at x = 0, y = -4
    const auto r1 = lp_solve(p);
    REQUIRE(std::holds_alternative<LpOptimal>(r1));
    CHECK(std::get<LpOptimal>(r1).value == 4);

    p.sign = {VarSign::NonNegative, VarSign::NonNegative};  // x, y >= 0 and x + y <= -4
    const auto r2 = lp_solve(p);
    REQUIRE(std::holds_alternative<LpInfeasible>(r2));
    CHECK(verify_certificate(p, std::get<LpInfeasible>(r2)));
}

TEST_CASE("lp: malformed program") {
    LinearProgram p = LinearProgram::equality_system(RatMatrix{{1, 0}}, {1});
    p.c = {1};
    CHECK_THROWS_AS(lp_solve(p), DimensionError);
}

TEST_CASE("property: random programs return re-verifiable answers") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> d(-3, 3);
    int seen[3] = {0, 0, 0};
    for (int t = 0; t < 300; ++t) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
        LinearProgram p;
        p.a = RatMatrix(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) p.a(i, j) = d(rng);
        for (std::size_t i = 0; i < rows; ++i) {
            p.b.push_back(d(rng));
            p.sense.push_back(static_cast<RowSense>(rng() % 3));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            p.c.push_back(d(rng));
            p.sign.push_back(rng() % 4 == 0 ? VarSign::Free : VarSign::NonNegative);
        }
        const auto r = lp_solve(p);
        ++seen[r.index()];
        if (auto* o = std::get_if<LpOptimal>(&r)) {
            CHECK(verify_feasible(p, o->point));
            // no feasible box point does better (weak optimality oracle)
            oracle::for_each_box_vector(cols, 2, [&](const std::vector<long>& x) {
                std::vector<Rational> xr(x.begin(), x.end());
                if (!verify_feasible(p, xr)) return;
                Rational v = 0;
                for (std::size_t j = 0; j < cols; ++j) v += p.c[j] * xr[j];
                CHECK(v >= o->value);
            });
        } else if (auto* c = std::get_if<LpInfeasible>(&r)) {
            CHECK(verify_certificate(p, *c));
        } else {
            CHECK(verify_ray(p, std::get<LpUnbounded>(r)));
        }
    }
    CHECK(seen[0] > 10);
    CHECK(seen[1] > 10);
    CHECK(seen[2] > 10);
}
