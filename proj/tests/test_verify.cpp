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

#include <algorithm>
#include <string>
#include <vector>

#include "dicritique/verify.hpp"

#include "corpus.hpp"

using namespace dicritique;
using dicritique::testing::corpus;
using dicritique::testing::corpus_pencil;

namespace {

const std::vector<std::string> XY{"x", "y"};

MultiPoly affine(const char* s, const FieldPtr& F = Field::rationals()) {
    return parse_poly(s, F, XY);
}

template <class Fn>
errc thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const engine_error& e) {
        return e.code();
    }
    return errc::internal_error;
}

// coprime local pairs of total degree <= 5 with a common zero at the origin
std::vector<std::pair<const char*, const char*>> oracle_pairs() {
    return {
        {"x", "y"},           {"x^2", "y^2"},         {"y^2", "x^3"},
        {"y - x^2", "y^2"},   {"x^2 + y^2", "x*y"},   {"y^2 - x^3", "x*y"},
        {"y^2 - x^3", "x^3"}, {"x^2", "y^3"},         {"y^3 - x^5", "x^2*y"},
        {"x*(x + y)", "y*(x - y)"},
    };
}

}  // namespace

TEST_CASE("Noether intersection numbers match hand computations") {
    REQUIRE(noether_intersection(affine("x"), affine("y")) == 1);
    REQUIRE(noether_intersection(affine("x^2"), affine("y")) == 2);
    REQUIRE(noether_intersection(affine("y^2"), affine("x^3")) == 6);
    REQUIRE(noether_intersection(affine("y"), affine("x^3")) == 3);
    REQUIRE(noether_intersection(affine("y - x^2"), affine("y^2")) == 4);
}

TEST_CASE("resultant intersection numbers match hand computations") {
    REQUIRE(resultant_intersection(affine("x"), affine("y")) == 1);
    REQUIRE(resultant_intersection(affine("x^2"), affine("y")) == 2);
    REQUIRE(resultant_intersection(affine("y^2"), affine("x^3")) == 6);
    REQUIRE(resultant_intersection(affine("y"), affine("x^3")) == 3);
}

TEST_CASE("resultant oracle validates its input") {
    FieldPtr Q = Field::rationals();
    REQUIRE(thrown_code([&] {
                resultant_intersection(MultiPoly::zero(Q, XY), affine("y"));
            }) == errc::zero_polynomial);
    REQUIRE(thrown_code([&] { resultant_intersection(affine("x + 1"), affine("y")); }) ==
            errc::not_a_base_point);
    REQUIRE(thrown_code([&] {
                resultant_intersection(affine("x*(x + y)"), affine("y*(x + y)"));
            }) == errc::not_coprime);
}

TEST_CASE("the two intersection oracles agree on coprime local pairs") {
    for (auto [f, g] : oracle_pairs()) {
        INFO(f << " | " << g);
        long n = noether_intersection(affine(f), affine(g));
        long r = resultant_intersection(affine(f), affine(g), 7);
        REQUIRE(n == r);
    }
    FieldPtr F5 = Field::prime(5);
    for (auto [f, g] : oracle_pairs()) {
        INFO(f << " | " << g << " over F5");
        long n = noether_intersection(affine(f, F5), affine(g, F5));
        long r = resultant_intersection(affine(f, F5), affine(g, F5), 7);
        REQUIRE(n == r);
    }
}

TEST_CASE("monomial balance oracle on hand examples") {
    auto one = [](long a, long b, long c, long d) {
        std::vector<MonomialDicritical> v = monomial_dicritical_oracle(a, b, c, d);
        REQUIRE(v.size() == 1);
        return std::pair<long, long>{v[0].vx, v[0].vy};
    };
    REQUIRE(one(1, 0, 0, 1) == std::pair<long, long>{1, 1});
    REQUIRE(one(0, 2, 3, 0) == std::pair<long, long>{2, 3});
    REQUIRE(one(2, 0, 0, 2) == std::pair<long, long>{1, 1});
    REQUIRE(one(2, 0, 0, 3) == std::pair<long, long>{3, 2});
    REQUIRE(one(0, 1, 1, 0) == std::pair<long, long>{1, 1});
    REQUIRE(one(1, 0, 0, 2) == std::pair<long, long>{2, 1});
}

TEST_CASE("monomial balance oracle validates its input") {
    REQUIRE(thrown_code([] { monomial_dicritical_oracle(-1, 0, 0, 1); }) ==
            errc::not_monomial);
    REQUIRE(thrown_code([] { monomial_dicritical_oracle(0, 0, 1, 1); }) ==
            errc::not_monomial);
    REQUIRE(thrown_code([] { monomial_dicritical_oracle(1, 0, 1, 0); }) ==
            errc::not_coprime);
    REQUIRE(thrown_code([] { monomial_dicritical_oracle(1, 1, 0, 2); }) ==
            errc::not_coprime);
}

TEST_CASE("engine matches the monomial oracle on small pure-power pencils") {
    FieldPtr Q = Field::rationals();
    for (long a = 1; a <= 4; ++a) {
        for (long b = 1; b <= 4; ++b) {
            INFO("(x^" << a << ", y^" << b << ")");
            MultiPoly f = affine("x").pow(static_cast<int>(a));
            MultiPoly g = affine("y").pow(static_cast<int>(b));
            ResolutionTree t = resolve_local(f, g, Q);
            std::vector<const ExceptionalDivisor*> dic;
            for (const auto& d : t.divisors)
                if (d.dicritical) dic.push_back(&d);
            REQUIRE(dic.size() == 1);
            std::vector<MonomialDicritical> want =
                monomial_dicritical_oracle(a, 0, 0, b);
            REQUIRE(dic[0]->vx == want[0].vx);
            REQUIRE(dic[0]->vy == want[0].vy);
        }
    }
}

TEST_CASE("resolution invariance probe on frozen pencils") {
    Analysis A1 = analyze(make_pencil(affine("x"), affine("y")));
    REQUIRE(invariance_probe(A1, 1, 3));
    REQUIRE(invariance_probe(A1, 2, 0));  // zero rounds: vacuously stable

    Analysis A2 = analyze(make_pencil(affine("y^2"), affine("x^3")));
    REQUIRE(invariance_probe(A2, 1, 3));
    REQUIRE(invariance_probe(A2, 2, 3));

    FieldPtr F5 = Field::prime(5);
    Analysis A3 = analyze(make_pencil(affine("x^2 + y^2", F5), affine("x*y", F5)));
    REQUIRE(invariance_probe(A3, 3, 3));
}

TEST_CASE("property suite passes across the corpus") {
    std::vector<std::string> names{"existence", "zero-valuation", "finiteness",
                                   "locality", "noether-vs-resultant"};
    for (const auto& e : corpus()) {
        INFO(e.name);
        Analysis A = analyze(corpus_pencil(e));
        std::vector<PropertyResult> rs = paper_property_suite(A, 1);
        REQUIRE(rs.size() == names.size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            INFO(rs[i].name << ": " << rs[i].detail);
            REQUIRE(rs[i].name == names[i]);
            REQUIRE(rs[i].pass);
        }
    }
}

TEST_CASE("shear exhaustion over F2 is a typed error") {
    FieldPtr F2 = Field::prime(2);
    // the top form x^2 + x*y vanishes at both points of P^1(F2), so every
    // shear leaves a degenerate leading coefficient
    MultiPoly f = affine("x^2 + x*y", F2);
    MultiPoly g = affine("y^2", F2);
    REQUIRE(thrown_code([&] { resultant_intersection(f, g); }) ==
            errc::shear_exhausted);
}

TEST_CASE("valuation fingerprints sort by their full key") {
    ValuationFingerprint a{1, 1, 1, 1, 1, 1};
    ValuationFingerprint b{1, 1, 1, 1, 2, 1};
    ValuationFingerprint c{2, 1, 1, 1, 1, 1};
    REQUIRE(a < b);
    REQUIRE(b < c);
    REQUIRE(a == ValuationFingerprint{1, 1, 1, 1, 1, 1});

    Analysis A = analyze(make_pencil(affine("y^2"), affine("x^3")));
    std::vector<ValuationFingerprint> fps = dicritical_fingerprints(A);
    REQUIRE(fps.size() == 2);
    REQUIRE(std::is_sorted(fps.begin(), fps.end()));

    std::size_t origin = 0;
    while (origin < A.bps.size() && A.bps[origin].chart != 2) ++origin;
    std::vector<ValuationFingerprint> tf = tree_fingerprints(A.trees[origin]);
    REQUIRE(tf.size() == 1);
    REQUIRE(tf[0] == ValuationFingerprint{2, 3, 6, 6, 1, 1});
}
