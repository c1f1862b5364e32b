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

#pragma once

#include <cstdlib>
#include <memory>
#include <numeric>
#include <tuple>

#include "pencil.hpp"

namespace dicritique {

namespace detail {

// sampling bound for random field elements: the whole field, capped
inline std::uint64_t sample_bound(const FieldPtr& F) {
    mpz_class card = F->cardinality();
    if (card > 1048576) return 1048576;
    return card.get_ui();
}

}  // namespace detail

// classical Noether sum: local intersection multiplicity at the origin
inline long noether_intersection(const MultiPoly& f, const MultiPoly& g, int cap = 64) {
    return noether_sum(resolve_local(f, g, f.field(), cap));
}

// independent oracle: order at 0 of Res_y after a seeded generic shear.
// A shear is rejected when either top form degenerates on it or when the line
// x = 0 picks up a second common zero.
inline long resultant_intersection(const MultiPoly& f, const MultiPoly& g,
                                   std::uint64_t seed = 0) {
    const FieldPtr& F = f.field();
    require(!f.is_zero() && !g.is_zero(), errc::zero_polynomial,
            "resultant oracle needs nonzero input");
    require(detail::vanishes_at_origin(f) && detail::vanishes_at_origin(g),
            errc::not_a_base_point, "resultant oracle needs a common zero at the origin");
    require(gcd_poly(f, g).is_constant(), errc::not_coprime,
            "resultant oracle needs coprime input");
    MultiPoly fd = detail::top_form(f);
    MultiPoly gd = detail::top_form(g);
    rng64 rng(0x5eed0000ULL ^ seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        FE l;
        if (attempt == 0)
            l = FE::zero(F);
        else if (F->kind() == field_kind::rationals)
            l = FE::from_int(F, static_cast<long>(rng.below(1000)) + 1);
        else
            l = fe_from_index(F, rng.below(detail::sample_bound(F)));
        FE one = FE::one(F);
        if (fd.eval({l, one}).is_zero() || gd.eval({l, one}).is_zero()) continue;
        MultiPoly X = MultiPoly::variable(F, detail::xy_vars(), 0);
        MultiPoly Y = MultiPoly::variable(F, detail::xy_vars(), 1);
        std::vector<MultiPoly> shear{X + MultiPoly::constant(l, detail::xy_vars()) * Y, Y};
        MultiPoly fs = f.substitute(shear);
        MultiPoly gs = g.substitute(shear);
        // fiber over x = 0 must meet the common zero locus only at the origin
        UniPoly f0 = fs.eval_var(0, FE::zero(F)).to_univariate(1);
        UniPoly g0 = gs.eval_var(0, FE::zero(F)).to_univariate(1);
        UniPoly h = f0.is_zero() ? g0 : (g0.is_zero() ? f0 : UniPoly::gcd(f0, g0));
        long drop = 0;
        while (h.deg() > 0 && h.coeff(0).is_zero()) {
            h = h.deflate(FE::zero(F));
            ++drop;
        }
        if (h.deg() > 0) continue;  // another common zero on the line, reshear
        UniPoly res = resultant(fs, gs, "y");
        long v = 0;
        while (res.deg() >= v + 1 && res.coeff(static_cast<int>(v)).is_zero()) ++v;
        return v;
    }
    raise(errc::shear_exhausted, "no usable shear after 16 attempts");
}

struct MonomialDicritical {
    long vx = 0, vy = 0;
};

// Rees-style balance for a pure monomial pair: the primitive (p, q), p,q >= 1
// with p*a + q*b = p*c + q*d, i.e. the expected (v_x, v_y) of the unique
// dicritical at the origin
inline std::vector<MonomialDicritical> monomial_dicritical_oracle(long a, long b, long c,
                                                                  long d) {
    require(a >= 0 && b >= 0 && c >= 0 && d >= 0, errc::not_monomial,
            "exponents must be natural numbers");
    require(a + b > 0 && c + d > 0, errc::not_monomial,
            "both generators must lie in the maximal ideal");
    require(std::min(a, c) == 0 && std::min(b, d) == 0, errc::not_coprime,
            "generators share a monomial factor");
    long s1 = a - c, s2 = d - b;
    if (s1 == 0 || s2 == 0 || (s1 > 0) != (s2 > 0)) return {};
    long p = std::labs(s2), q = std::labs(s1);
    long g = std::gcd(p, q);
    return {{p / g, q / g}};
}

struct ValuationFingerprint {
    long vx = 0, vy = 0, vf = 0, vg = 0;
    int degree = 0;        // residual map degree
    int distinct_poles = 0;

    auto key() const { return std::tie(vx, vy, vf, vg, degree, distinct_poles); }
    bool operator<(const ValuationFingerprint& o) const { return key() < o.key(); }
    bool operator==(const ValuationFingerprint& o) const { return key() == o.key(); }
};

inline std::vector<ValuationFingerprint> dicritical_fingerprints(const Analysis& A) {
    std::vector<ValuationFingerprint> out;
    for (const auto& r : A.dicriticals)
        out.push_back({r.vx, r.vy, r.vf, r.vg, r.residual.degree,
                       r.residual.distinct_pole_count()});
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<ValuationFingerprint> tree_fingerprints(const ResolutionTree& t) {
    std::vector<ValuationFingerprint> out;
    for (const auto& d : t.divisors) {
        if (!d.dicritical) continue;
        const auto& res = *t.nodes[static_cast<std::size_t>(d.node)].residual;
        out.push_back({d.vx, d.vy, d.vf, d.vg, res.degree, res.distinct_pole_count()});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// rebuild every local resolution with extra seeded blowups at non-base points
// of fresh exceptional divisors; the dicritical fingerprint multiset and each
// dicritical's v-values must not move
inline bool invariance_probe(const Analysis& A, std::uint64_t seed, unsigned rounds) {
    const FieldPtr& F = A.pencil.F;
    for (unsigned round = 1; round <= rounds; ++round) {
        auto probe_rng = std::make_shared<rng64>(0x9b0be000ULL ^ (seed * 1315423911ULL) ^ round);
        ProbeHook hook = [F, probe_rng](const ResolutionTree&, int,
                                        const std::vector<NodeCenter>& pts) {
            std::vector<FE> extra;
            if (probe_rng->below(2) == 0) return extra;  // skip this divisor
            for (int tries = 0; tries < 8; ++tries) {
                FE t;
                if (F->kind() == field_kind::rationals)
                    t = FE::from_int(F, static_cast<long>(probe_rng->below(11)));
                else
                    t = fe_from_index(F, probe_rng->below(detail::sample_bound(F)));
                bool taken = false;
                for (const auto& p : pts) taken |= !p.at_infinity && p.t == t;
                if (!taken) {
                    extra.push_back(t);
                    break;
                }
            }
            return extra;
        };
        for (std::size_t t = 0; t < A.trees.size(); ++t) {
            const BasePoint& bp = A.bps[t];
            ResolutionTree probed =
                resolve_local(bp.local_f, bp.local_g, F, A.cap, hook);
            if (tree_fingerprints(probed) != tree_fingerprints(A.trees[t])) return false;
        }
    }
    return true;
}

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// ordered property checks for one pencil: existence, zero-valuation,
// finiteness, locality, and the two intersection oracles agreeing
inline std::vector<PropertyResult> paper_property_suite(const Analysis& A,
                                                        std::uint64_t seed = 0) {
    std::vector<PropertyResult> out;
    const FieldPtr& F = A.pencil.F;

    {
        PropertyResult r{"existence", true, ""};
        std::vector<char> dominated(A.bps.size(), 0);
        for (const auto& d : A.dicriticals) dominated[static_cast<std::size_t>(d.base_point)] = 1;
        for (std::size_t i = 0; i < dominated.size(); ++i)
            if (!dominated[i]) {
                r.pass = false;
                r.detail = "base point " + std::to_string(i) + " has no dicritical";
            }
        if (r.pass) r.detail = std::to_string(A.dicriticals.size()) + " dicritical(s) over " +
                               std::to_string(A.bps.size()) + " base point(s)";
        out.push_back(r);
    }
    {
        PropertyResult r{"zero-valuation", true, "v_f = v_g on every dicritical"};
        for (const auto& d : A.dicriticals)
            if (d.vf != d.vg || d.residual.degree < 1) {
                r.pass = false;
                r.detail = "divisor E" + std::to_string(d.global_id) + " violates v_f = v_g";
            }
        out.push_back(r);
    }
    {
        PropertyResult r{"finiteness", true, ""};
        std::size_t total = 0;
        for (const auto& t : A.trees) total += t.nodes.size();
        r.pass = true;
        for (const auto& t : A.trees)
            if (static_cast<int>(t.nodes.size()) > A.cap) r.pass = false;
        r.detail = std::to_string(total) + " blowups across all trees (cap " +
                   std::to_string(A.cap) + ")";
        out.push_back(r);
    }
    {
        PropertyResult r{"locality", true, "no tree at sampled non-base points"};
        rng64 rng(0x10ca1171ULL ^ seed);
        int sampled = 0;
        for (int guard = 0; sampled < 5 && guard < 200; ++guard) {
            std::vector<FE> pt(3, FE::zero(F));
            for (auto& c : pt) {
                if (F->kind() == field_kind::rationals)
                    c = FE::from_int(F, static_cast<long>(rng.below(13)) - 6);
                else
                    c = fe_from_index(F, rng.below(detail::sample_bound(F)));
            }
            if (pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero()) continue;
            if (A.pencil.Fh.eval(pt).is_zero() && A.pencil.Gh.eval(pt).is_zero())
                continue;  // on the base locus, resample
            ++sampled;
            // a non-base point must not appear in the base point list
            int chart = 0;
            while (pt[static_cast<std::size_t>(chart)].is_zero()) ++chart;
            FE inv = pt[static_cast<std::size_t>(chart)].inverse();
            for (auto& c : pt) c = c * inv;
            for (const auto& bp : A.bps) {
                if (bp.coords[0] == pt[0] && bp.coords[1] == pt[1] && bp.coords[2] == pt[2]) {
                    r.pass = false;
                    r.detail = "sampled point unexpectedly owns a tree";
                }
            }
        }
        if (sampled < 5) {
            r.pass = false;
            r.detail = "could not sample 5 points off the base locus";
        }
        out.push_back(r);
    }
    {
        PropertyResult r{"noether-vs-resultant", true, ""};
        int compared = 0;
        for (std::size_t t = 0; t < A.bps.size(); ++t) {
            if (A.bps[t].chart != 2) continue;  // affine chart only
            long n = noether_sum(A.trees[t]);
            long m = resultant_intersection(A.bps[t].local_f, A.bps[t].local_g, seed);
            ++compared;
            if (n != m) {
                r.pass = false;
                r.detail = "base point " + std::to_string(t) + ": noether " +
                           std::to_string(n) + " != resultant " + std::to_string(m);
            }
        }
        if (r.pass)
            r.detail = std::to_string(compared) + " affine base point(s) agree";
        out.push_back(r);
    }
    return out;
}

}  // namespace dicritique
