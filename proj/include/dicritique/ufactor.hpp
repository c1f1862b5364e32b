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

#include <algorithm>
#include <utility>
#include <vector>

#include "upoly.hpp"

namespace dicritique {

inline UniPoly powmod(UniPoly a, mpz_class e, const UniPoly& m) {
    UniPoly r = UniPoly::constant(FE::one(m.field()), m.var());
    a = a % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

// canonical comparison for deterministic factor ordering
inline int upoly_cmp(const UniPoly& a, const UniPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i) {
        int c = a.coeff(i).cmp(b.coeff(i));
        if (c != 0) return c;
    }
    return 0;
}

namespace detail {

// distinct-degree split of a monic squarefree f over F_q: pairs (product, d)
inline std::vector<std::pair<UniPoly, int>> ddf(UniPoly f) {
    const FieldPtr& F = f.field();
    mpz_class q = F->cardinality();
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly t = UniPoly::variable(F, f.var());
    UniPoly h = t;
    int d = 0;
    while (f.deg() > 2 * (d + 1) - 1 && f.deg() > 0) {
        ++d;
        h = powmod(h, q, f);
        UniPoly g = UniPoly::gcd(h - t, f);
        if (g.deg() > 0) {
            out.emplace_back(g, d);
            f = (f / g).monic();
            h = h % f;
        }
    }
    if (f.deg() > 0) out.emplace_back(f, f.deg());
    return out;
}

// Cantor-Zassenhaus equal-degree split; f monic squarefree, all factors of degree d
inline void edf(const UniPoly& f, int d, rng64& rng, std::vector<UniPoly>& out) {
    const FieldPtr& F = f.field();
    if (f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    std::uint64_t p = F->characteristic();
    unsigned k = F->ext_degree();
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<FE> cs;
        cs.reserve(static_cast<std::size_t>(f.deg()));
        for (int i = 0; i < f.deg(); ++i) {
            fpv::vec digits;
            for (unsigned j = 0; j < k; ++j) digits.push_back(rng.below(p));
            fpv::trim(digits);
            if (k == 1) {
                cs.push_back(FE::from_int(F, digits.empty() ? 0 : static_cast<long>(digits[0])));
            } else {
                cs.push_back(FE::from_coeffs(F, digits));
            }
        }
        UniPoly a(F, std::move(cs), f.var());
        if (a.deg() < 1) continue;
        UniPoly b(F, f.var());
        if (p == 2) {
            // trace map over F_{2^(k*d)}
            b = a % f;
            UniPoly acc = b;
            mpz_class steps = mpz_class(k) * d;
            for (mpz_class i = 1; i < steps; ++i) {
                acc = (acc * acc) % f;
                b = b + acc;
            }
        } else {
            mpz_class Q;
            mpz_ui_pow_ui(Q.get_mpz_t(), static_cast<unsigned long>(p),
                          k * static_cast<unsigned>(d));
            b = powmod(a, (Q - 1) / 2, f) - UniPoly::constant(FE::one(F), f.var());
        }
        UniPoly g = UniPoly::gcd(b, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf((f / g).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// complete factorization over a finite field; factors monic, sorted, with multiplicity;
// f = lc * prod factor^mult.  Internally randomized but seeded per call, so the
// result is a deterministic function of the input.
inline std::vector<std::pair<UniPoly, int>> factor_fq(const UniPoly& f) {
    require(f.field()->kind() != field_kind::rationals, errc::internal_error,
            "factor_fq needs a finite field");
    require(!f.is_zero(), errc::zero_polynomial, "factoring the zero polynomial");
    std::vector<std::pair<UniPoly, int>> out;
    if (f.deg() == 0) return out;
    rng64 rng(0xd1c70001ull);
    UniPoly rad = f.radical();
    std::vector<UniPoly> irreducibles;
    for (const auto& [prod, d] : detail::ddf(rad)) detail::edf(prod, d, rng, irreducibles);
    std::sort(irreducibles.begin(), irreducibles.end(),
              [](const UniPoly& a, const UniPoly& b) { return upoly_cmp(a, b) < 0; });
    UniPoly rest = f.monic();
    for (const auto& q : irreducibles) {
        int m = 0;
        for (;;) {
            auto [quo, rem] = UniPoly::divrem(rest, q);
            if (!rem.is_zero()) break;
            rest = quo;
            ++m;
        }
        out.emplace_back(q, m);
    }
    require(rest.deg() == 0, errc::internal_error, "factorization lost a factor");
    return out;
}

struct Roots {
    std::vector<std::pair<FE, int>> roots;  // sorted, with multiplicities
    bool complete = false;                  // true when f splits into linears over the field
};

namespace detail {

inline Roots roots_fq(const UniPoly& f) {
    Roots out;
    UniPoly rad = f.radical();
    // roots of rad = roots of gcd(t^q - t, rad)
    mpz_class q = f.field()->cardinality();
    UniPoly t = UniPoly::variable(f.field(), f.var());
    UniPoly lin = UniPoly::gcd(powmod(t, q, rad) - t, rad);
    std::vector<UniPoly> linears;
    if (lin.deg() >= 1) {
        rng64 rng(0xd1c70002ull);
        edf(lin, 1, rng, linears);
    }
    int found = 0;
    for (const auto& l : linears) {
        FE root = -l.coeff(0);
        int m = f.root_multiplicity(root);
        out.roots.emplace_back(root, m);
        found += m;
    }
    out.complete = (found == f.deg());
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
    return out;
}

inline Roots roots_q(const UniPoly& f) {
    Roots out;
    const FieldPtr& F = f.field();
    // clear denominators and content
    mpz_class den_lcm = 1;
    for (const FE& c : f.coeffs()) den_lcm = lcm(den_lcm, c.rational().get_den());
    std::vector<mpz_class> ic;
    ic.reserve(f.coeffs().size());
    for (const FE& c : f.coeffs()) {
        mpq_class scaled = c.rational() * den_lcm;
        ic.push_back(scaled.get_num());
    }
    mpz_class content = 0;
    for (const auto& z : ic) content = gcd(content, z);
    if (content > 1)
        for (auto& z : ic) z /= content;
    // strip roots at zero
    std::size_t v = 0;
    while (v < ic.size() && ic[v] == 0) ++v;
    UniPoly rest = f;
    if (v > 0) {
        out.roots.emplace_back(FE::zero(F), static_cast<int>(v));
        std::vector<FE> fes;
        for (std::size_t i = v; i < ic.size(); ++i) fes.push_back(FE::from_mpz(F, ic[i]));
        rest = UniPoly(F, std::move(fes), f.var());
    } else {
        std::vector<FE> fes;
        for (const auto& z : ic) fes.push_back(FE::from_mpz(F, z));
        rest = UniPoly(F, std::move(fes), f.var());
    }
    if (rest.deg() >= 1) {
        mpz_class a0 = abs(rest.coeff(0).rational().get_num());
        mpz_class an = abs(rest.lc().rational().get_num());
        std::vector<mpz_class> rdiv = divisors_mpz(a0);
        std::vector<mpz_class> sdiv = divisors_mpz(an);
        std::vector<FE> candidates;
        for (const auto& r : rdiv) {
            for (const auto& s : sdiv) {
                if (gcd(r, s) != 1) continue;
                mpq_class pos(r, s);
                pos.canonicalize();
                candidates.push_back(FE::from_mpq(F, pos));
                candidates.push_back(FE::from_mpq(F, -pos));
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                     [](const FE& a, const FE& b) { return a == b; }),
                         candidates.end());
        for (const FE& cand : candidates) {
            if (rest.deg() < 1) break;
            if (!rest.eval(cand).is_zero()) continue;
            UniPoly quo;
            int m = rest.root_multiplicity(cand, &quo);
            out.roots.emplace_back(cand, m);
            rest = quo;
        }
    }
    out.complete = (rest.deg() == 0);
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return a.first.cmp(b.first) < 0; });
    return out;
}

}  // namespace detail

// all roots lying in the coefficient field, with multiplicities; complete=false
// signals roots outside the field (irrational over Q, or in a proper extension)
inline Roots univariate_roots(const UniPoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "root-finding on the zero polynomial");
    if (f.deg() == 0) return Roots{{}, true};
    return f.field()->kind() == field_kind::rationals ? detail::roots_q(f)
                                                      : detail::roots_fq(f);
}

// deterministic search for a monic irreducible of degree k over F_p
inline fpv::vec find_irreducible_modulus(std::uint64_t p, unsigned k) {
    require(k >= 2, errc::internal_error, "modulus degree must be >= 2");
    fpv::vec m(k + 1, 0);
    m[k] = 1;
    // count through the low coefficients in base p, least significant first
    for (std::uint64_t n = 1;; ++n) {
        std::uint64_t rest = n;
        for (unsigned i = 0; i < k && rest; ++i) {
            m[i] = rest % p;
            rest /= p;
        }
        if (rest) raise(errc::internal_error, "no irreducible modulus found");
        if (m[0] != 0 && Field::is_irreducible(m, p)) return m;
    }
}

// embedding of one finite field into a larger one of the same characteristic
struct Embedding {
    FieldPtr from, to;
    FE gen_image;  // image of the generator of `from` (unused for prime fields)

    FE map(const FE& e) const {
        require(e.field()->same(*from), errc::field_mismatch, "embedding source mismatch");
        if (from->kind() == field_kind::prime_field) {
            const auto& r = e.residue();
            return FE::from_int(to, r.empty() ? 0 : static_cast<long>(r[0]));
        }
        FE acc = FE::zero(to);
        const auto& digits = e.residue();
        for (std::size_t i = digits.size(); i-- > 0;)
            acc = acc * gen_image + FE::from_int(to, static_cast<long>(digits[i]));
        return acc;
    }
};

inline Embedding make_embedding(const FieldPtr& from, const FieldPtr& to) {
    require(from->characteristic() == to->characteristic(), errc::field_mismatch,
            "embedding requires equal characteristic");
    require(to->ext_degree() % std::max(1u, from->ext_degree()) == 0, errc::field_mismatch,
            "embedding requires a divisible extension degree");
    Embedding em{from, to, FE::zero(to)};
    if (from->kind() == field_kind::prime_field) return em;
    // lift the old modulus into the new field and take its smallest root
    std::vector<FE> lifted;
    for (std::uint64_t c : from->modulus()) lifted.push_back(FE::from_int(to, static_cast<long>(c)));
    UniPoly mod(to, std::move(lifted), "t");
    Roots r = univariate_roots(mod);
    require(!r.roots.empty(), errc::internal_error, "modulus has no root in target field");
    em.gen_image = r.roots.front().first;
    return em;
}

// element of a finite field by index: digits of idx in base p become coefficients
inline FE fe_from_index(const FieldPtr& F, std::uint64_t idx) {
    require(F->kind() != field_kind::rationals, errc::internal_error,
            "fe_from_index needs a finite field");
    std::uint64_t p = F->characteristic();
    if (F->kind() == field_kind::prime_field) return FE::from_int(F, static_cast<long>(idx % p));
    fpv::vec digits;
    unsigned k = F->ext_degree();
    for (unsigned i = 0; i < k; ++i) {
        digits.push_back(idx % p);
        idx /= p;
    }
    fpv::trim(digits);
    return FE::from_coeffs(F, digits);
}

}  // namespace dicritique
