/*
   Copyright 2026 the dicritique authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "dicritique/mpoly.hpp"
#include "dicritique/util.hpp"

using namespace dicritique;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"X", "Y", "Z"};

MultiPoly rand_poly(const FieldPtr& F, rng64& rng, int maxdeg, bool force_y = false) {
    MultiPoly r = MultiPoly::zero(F, XY);
    int terms = 2 + static_cast<int>(rng.below(4));
    for (int i = 0; i < terms; ++i) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxdeg + 1)));
        int b = static_cast<int>(
            rng.below(static_cast<std::uint64_t>(maxdeg + 1 - a)));
        long c = static_cast<long>(rng.below(11)) - 5;
        if (c == 0) c = 1;
        r = r + MultiPoly::monomial(FE::from_int(F, c), XY, {a, b});
    }
    if (force_y && r.degree_in(1) <= 0)
        r = r + MultiPoly::monomial(FE::one(F), XY, {0, 1});
    return r;
}

// naive cofactor-expansion determinant, independent of the engine's
// fraction-free elimination
MultiPoly cofactor_det(const std::vector<std::vector<MultiPoly>>& M) {
    std::size_t n = M.size();
    if (n == 1) return M[0][0];
    const FieldPtr& F = M[0][0].field();
    MultiPoly acc = MultiPoly::zero(F, M[0][0].vars());
    for (std::size_t j = 0; j < n; ++j) {
        if (M[0][j].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(M[r][c]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = M[0][j] * cofactor_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Sylvester matrix of f, g eliminating y, evaluated by cofactor expansion
MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g) {
    int n = f.degree_in(1), m = g.degree_in(1);
    std::vector<MultiPoly> fc = f.coeffs_in(1), gc = g.coeffs_in(1);
    int dim = n + m;
    MultiPoly z = MultiPoly::zero(f.field(), f.vars());
    std::vector<std::vector<MultiPoly>> M(static_cast<std::size_t>(dim),
                                          std::vector<MultiPoly>(static_cast<std::size_t>(dim), z));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + n - k)] =
                fc[static_cast<std::size_t>(k)];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            M[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + m - k)] =
                gc[static_cast<std::size_t>(k)];
    return cofactor_det(M);
}

}  // namespace

TEST_CASE("parsing produces canonical term maps") {
    FieldPtr Q = Field::rationals();
    MultiPoly p1 = parse_poly("x^2 - y^3", Q, XY);
    REQUIRE(p1 == MultiPoly::monomial(FE::one(Q), XY, {2, 0}) +
                      MultiPoly::monomial(FE::from_int(Q, -1), XY, {0, 3}));

    FieldPtr F2 = Field::prime(2);
    REQUIRE(parse_poly("(x+y)^2", F2, XY) ==
            MultiPoly::monomial(FE::one(F2), XY, {2, 0}) +
                MultiPoly::monomial(FE::one(F2), XY, {0, 2}));

    MultiPoly p3 = parse_poly("3/2*x*y + x*y", Q, XY);
    REQUIRE(p3 == MultiPoly::monomial(FE::from_mpq(Q, mpq_class(5, 2)), XY, {1, 1}));
}

TEST_CASE("parse then print then parse is the identity") {
    for (const FieldPtr& F : {Field::rationals(), Field::prime(5)}) {
        rng64 rng(0x9a65e + F->ext_degree());
        for (int i = 0; i < 100; ++i) {
            MultiPoly p = rand_poly(F, rng, 4);
            REQUIRE(parse_poly(p.str(), F, XY) == p);
        }
    }
    // a fixed round trip with parentheses, rationals and powers
    FieldPtr Q = Field::rationals();
    MultiPoly q = parse_poly("(x - 2*y)^3 - 1/3*(x + y) + 7", Q, XY);
    REQUIRE(parse_poly(q.str(), Q, XY) == q);
}

TEST_CASE("parse errors carry positions and kinds") {
    FieldPtr Q = Field::rationals();
    REQUIRE_THROWS_AS(parse_poly("x + z", Q, XY), parse_error);
    REQUIRE_THROWS_AS(parse_poly("x^y", Q, XY), parse_error);
    REQUIRE_THROWS_AS(parse_poly("x + ", Q, XY), parse_error);
    REQUIRE_THROWS_AS(parse_poly("(x + y", Q, XY), parse_error);
    try {
        parse_poly("x + q", Q, XY);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(e.position() == 4);
    }
}

TEST_CASE("order at origin and initial forms") {
    FieldPtr Q = Field::rationals();
    REQUIRE(parse_poly("x^2 + y^3", Q, XY).order_at_origin() == 2);
    REQUIRE(parse_poly("x*y", Q, XY).order_at_origin() == 2);
    REQUIRE(parse_poly("1 + x", Q, XY).order_at_origin() == 0);

    REQUIRE(parse_poly("x^2 + y^3", Q, XY).initial_form(2) == parse_poly("x^2", Q, XY));
    REQUIRE(parse_poly("x^2 + x*y + y^3", Q, XY).initial_form(2) ==
            parse_poly("x^2 + x*y", Q, XY));
    REQUIRE(parse_poly("x", Q, XY).initial_form(1) == parse_poly("x", Q, XY));
    REQUIRE_THROWS_AS(parse_poly("x^2 + y^3", Q, XY).initial_form(1), engine_error);
    REQUIRE_THROWS_AS(MultiPoly::zero(Q, XY).order_at_origin(), engine_error);
}

TEST_CASE("order and initial form are multiplicative") {
    FieldPtr Q = Field::rationals();
    rng64 rng(0x111f);
    for (int i = 0; i < 60; ++i) {
        MultiPoly f = rand_poly(Q, rng, 3), g = rand_poly(Q, rng, 3);
        if (f.is_zero() || g.is_zero()) continue;
        int mf = f.order_at_origin(), mg = g.order_at_origin();
        MultiPoly prod = f * g;
        REQUIRE(prod.order_at_origin() == mf + mg);
        REQUIRE(prod.initial_form(mf + mg) == f.initial_form(mf) * g.initial_form(mg));
    }
}

TEST_CASE("homogenization examples and round trip") {
    FieldPtr Q = Field::rationals();
    REQUIRE(homogenize(parse_poly("y - x^2", Q, XY), 2) == parse_poly("Y*Z - X^2", Q, XYZ));
    REQUIRE(homogenize(parse_poly("x", Q, XY), 1) == parse_poly("X", Q, XYZ));
    REQUIRE(homogenize(parse_poly("x", Q, XY), 2) == parse_poly("X*Z", Q, XYZ));
    REQUIRE_THROWS_AS(homogenize(parse_poly("x^3", Q, XY), 2), engine_error);
    // dehomogenizing at Z = 1 recovers the affine polynomial
    rng64 rng(0x806e);
    for (int i = 0; i < 40; ++i) {
        MultiPoly f = rand_poly(Q, rng, 4);
        if (f.is_zero()) continue;
        REQUIRE(dehomogenize(homogenize(f, f.total_degree() + 1), 2) == f);
    }
}

TEST_CASE("resultant examples") {
    FieldPtr Q = Field::rationals();
    MultiPoly f = parse_poly("y^2", Q, XY), g = parse_poly("x^3", Q, XY);
    REQUIRE(resultant(f, g, "y").str() == "x^6");
    REQUIRE(resultant(parse_poly("y - x^2", Q, XY), parse_poly("y", Q, XY), "y").str() == "x^2");
    UniPoly r = resultant(parse_poly("y", Q, XY), parse_poly("y + 1", Q, XY), "y");
    REQUIRE(r.is_constant());
    REQUIRE(!r.is_zero());
    REQUIRE_THROWS_AS(resultant(parse_poly("x", Q, XY), parse_poly("x + 1", Q, XY), "y"),
                      engine_error);
}

TEST_CASE("resultant agrees with a cofactor-expansion Sylvester determinant") {
    FieldPtr Q = Field::rationals();
    rng64 rng(0x571);
    for (int i = 0; i < 25; ++i) {
        MultiPoly f = rand_poly(Q, rng, 3, true), g = rand_poly(Q, rng, 3, true);
        MultiPoly expect = sylvester_resultant(f, g);
        UniPoly got = resultant(f, g, "y");
        MultiPoly got_m = MultiPoly::from_univariate(got, XY, 0);
        REQUIRE(got_m == expect);
    }
}

TEST_CASE("resultant vanishes exactly when the gcd involves y") {
    FieldPtr Q = Field::rationals();
    rng64 rng(0xe5b0);
    int tested = 0;
    for (int i = 0; tested < 50 && i < 400; ++i) {
        MultiPoly f = rand_poly(Q, rng, 4), g = rand_poly(Q, rng, 4);
        if (f.degree_in(1) <= 0 || g.degree_in(1) <= 0) continue;
        // make a shared y-factor half the time
        if (rng.below(2) == 0) {
            MultiPoly h = parse_poly("y - x", Q, XY);
            f = f * h;
            g = g * h;
        }
        ++tested;
        bool res_zero = resultant(f, g, "y").is_zero();
        bool gcd_in_y = gcd_poly(f, g).degree_in(1) > 0;
        REQUIRE(res_zero == gcd_in_y);
    }
    REQUIRE(tested == 50);
}

TEST_CASE("gcd examples") {
    FieldPtr Q = Field::rationals();
    MultiPoly f0 = parse_poly("y + 1", Q, XY), g0 = parse_poly("x + y", Q, XY);
    MultiPoly x = parse_poly("x", Q, XY);
    MultiPoly g1 = gcd_poly(x * f0, x * g0);
    REQUIRE(g1 == x);  // monic normalization makes the associate exactly x
    REQUIRE(gcd_poly(parse_poly("x", Q, XY), parse_poly("y", Q, XY)).is_constant());
    REQUIRE(gcd_poly(parse_poly("y^2 - x^3", Q, XY), parse_poly("x^3", Q, XY)).is_constant());
}

TEST_CASE("radical drops repeated factors") {
    FieldPtr Q = Field::rationals();
    MultiPoly f = parse_poly("x*y^2 - x^2*y", Q, XY);  // x*y*(y-x)
    MultiPoly sq = f * f;
    REQUIRE(radical_poly(sq) == radical_poly(f));
    REQUIRE(radical_poly(sq).total_degree() == 3);
    // characteristic p: p-th powers are recovered through the p-th root path
    FieldPtr F5 = Field::prime(5);
    MultiPoly g = parse_poly("x + y", F5, XY);
    MultiPoly g5 = g.pow(5);
    REQUIRE(radical_poly(g5) == g);
}

TEST_CASE("substitution and evaluation agree") {
    FieldPtr Q = Field::rationals();
    rng64 rng(0x5eb5);
    MultiPoly xi = MultiPoly::variable(Q, XY, 0), yi = MultiPoly::variable(Q, XY, 1);
    for (int i = 0; i < 40; ++i) {
        MultiPoly f = rand_poly(Q, rng, 4);
        // substitute (x, y) -> (x + y, x*y) and spot-check on values
        MultiPoly sub = f.substitute({xi + yi, xi * yi});
        FE a = FE::from_int(Q, static_cast<long>(rng.below(7)) - 3);
        FE b = FE::from_int(Q, static_cast<long>(rng.below(7)) - 3);
        REQUIRE(sub.eval({a, b}) == f.eval({a + b, a * b}));
    }
}
