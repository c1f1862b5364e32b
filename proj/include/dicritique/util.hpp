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

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace dicritique {

/* deterministic seeded RNG; raw draws only, so results are identical on
   every platform (std::uniform_int_distribution is not portable) */
class rng64 {
  public:
    explicit rng64(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform-ish draw in [0, n); the modulo bias is irrelevant for probing
    std::uint64_t below(std::uint64_t n) {
        require(n > 0, errc::internal_error, "rng range empty");
        return eng_() % n;
    }

    // draw in [lo, hi] inclusive
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

  private:
    std::mt19937_64 eng_;
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// deterministic Miller-Rabin, valid for all 64-bit inputs
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n, unsigned long c) {
    // Brent's cycle variant; n odd composite
    mpz_class x = 2, y = 2, d = 1, q = 1, ys = 0;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
    while (d == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) step(y);
        unsigned long k = 0;
        while (k < r && d == 1) {
            ys = y;
            unsigned long lim = std::min(m, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                step(y);
                mpz_class diff = x - y;
                if (diff < 0) diff = -diff;
                q = q * diff % n;
            }
            mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (d == n) {
        d = 1;
        while (d == 1) {
            step(ys);
            mpz_class diff = x - ys;
            if (diff < 0) diff = -diff;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
    }
    return d;
}

}  // namespace detail

/* full factorization of a positive integer: trial division, then GMP
   primality + Pollard rho for what is left.  Desk-scale coefficients keep
   this instantaneous; rho is insurance against the odd large cofactor. */
inline void factor_mpz(mpz_class n, std::vector<std::pair<mpz_class, unsigned>>& out) {
    require(n > 0, errc::internal_error, "factor_mpz needs a positive integer");
    auto push = [&out](const mpz_class& p) {
        for (auto& [q, e] : out) {
            if (q == p) { ++e; return; }
        }
        out.emplace_back(p, 1);
    };
    for (std::uint64_t d : {2ull, 3ull, 5ull}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) { push(d); n /= static_cast<unsigned long>(d); }
    }
    std::uint64_t d = 7;
    static const std::uint64_t wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    int wi = 0;
    while (d <= 1u << 20 && mpz_cmp_ui(n.get_mpz_t(), 1) > 0) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            push(d);
            n /= static_cast<unsigned long>(d);
            continue;
        }
        d += wheel[wi];
        wi = (wi + 1) & 7;
    }
    // recursive split of the remaining cofactor
    std::vector<mpz_class> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        mpz_class v = stack.back();
        stack.pop_back();
        if (mpz_probab_prime_p(v.get_mpz_t(), 40)) { push(v); continue; }
        mpz_class f = v;
        for (unsigned long c = 1; f == v; ++c) f = detail::pollard_rho(v, c);
        stack.push_back(f);
        stack.push_back(v / f);
    }
}

// all positive divisors, capped to keep rational-root search at desk scale
inline std::vector<mpz_class> divisors_mpz(const mpz_class& n, std::size_t cap = 1u << 16) {
    std::vector<std::pair<mpz_class, unsigned>> fac;
    factor_mpz(n, fac);
    std::vector<mpz_class> divs{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = divs.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) {
                divs.push_back(divs[j] * pk);
                require(divs.size() <= cap, errc::internal_error,
                        "divisor enumeration exceeded cap (coefficients too large)");
            }
        }
    }
    return divs;
}

}  // namespace dicritique
