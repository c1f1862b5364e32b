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
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "util.hpp"

namespace dicritique {

enum class field_kind { rationals, prime_field, ext_field };

/* raw arithmetic on F_p[w], coefficients little-endian, no trailing zeros;
   only used for extension-field moduli and element representations */
namespace fpv {

using vec = std::vector<std::uint64_t>;

inline void trim(vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const vec& a) { return static_cast<int>(a.size()) - 1; }

inline vec add(const vec& a, const vec& b, std::uint64_t p) {
    vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s >= p ? s - p : s;
    }
    trim(r);
    return r;
}

inline vec sub(const vec& a, const vec& b, std::uint64_t p) {
    vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + p - y;
    }
    trim(r);
    return r;
}

inline vec mul(const vec& a, const vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod_u64(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

inline vec scale(const vec& a, std::uint64_t c, std::uint64_t p) {
    vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod_u64(a[i], c % p, p);
    trim(r);
    return r;
}

// remainder of a modulo b (b nonzero)
inline vec rem(vec a, const vec& b, std::uint64_t p) {
    require(!b.empty(), errc::division_by_zero, "polynomial division by zero");
    std::uint64_t lcinv = powmod_u64(b.back(), p - 2, p);
    while (deg(a) >= deg(b)) {
        std::uint64_t c = mulmod_u64(a.back(), lcinv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t t = mulmod_u64(c, b[i], p);
            std::uint64_t& x = a[shift + i];
            x = x >= t ? x - t : x + p - t;
        }
        trim(a);
        if (a.size() <= shift && !a.empty() && deg(a) < deg(b)) break;
    }
    trim(a);
    return a;
}

inline vec mulmod(const vec& a, const vec& b, const vec& m, std::uint64_t p) {
    return rem(mul(a, b, p), m, p);
}

inline vec monic(vec a, std::uint64_t p) {
    trim(a);
    if (a.empty() || a.back() == 1) return a;
    return scale(a, powmod_u64(a.back(), p - 2, p), p);
}

inline vec gcd(vec a, vec b, std::uint64_t p) {
    trim(a); trim(b);
    while (!b.empty()) {
        vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// a^e mod m, e a 64-bit exponent
inline vec powmod(vec a, std::uint64_t e, const vec& m, std::uint64_t p) {
    vec r{1};
    a = rem(std::move(a), m, p);
    while (e) {
        if (e & 1) r = mulmod(r, a, m, p);
        a = mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

// extended gcd for inverses: returns g and s with s*a = g mod m
inline void xgcd_inverse(const vec& a, const vec& m, std::uint64_t p, vec& g, vec& s) {
    vec r0 = m, r1 = rem(a, m, p);
    vec s0{}, s1{1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        vec q{}, r = r0;
        std::uint64_t lcinv = powmod_u64(r1.back(), p - 2, p);
        while (deg(r) >= deg(r1)) {
            std::uint64_t c = mulmod_u64(r.back(), lcinv, p);
            std::size_t shift = r.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = (q[shift] + c) % p;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                std::uint64_t t = mulmod_u64(c, r1[i], p);
                std::uint64_t& x = r[shift + i];
                x = x >= t ? x - t : x + p - t;
            }
            trim(r);
        }
        vec s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    g = std::move(r0);
    s = std::move(s0);
}

inline std::string to_string(const vec& a, const std::string& var) {
    if (a.empty()) return "0";
    std::string out;
    for (int i = deg(a); i >= 0; --i) {
        if (a[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0 || a[i] != 1) out += std::to_string(a[i]);
        if (i > 0) {
            if (a[i] != 1) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace fpv

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
  public:
    static FieldPtr rationals() {
        static FieldPtr q = FieldPtr(new Field(field_kind::rationals, 0, {}));
        return q;
    }

    static FieldPtr prime(std::uint64_t p) {
        require(p >= 2 && p < (1ull << 31), errc::bad_field,
                "prime field characteristic must satisfy 2 <= p < 2^31");
        require(is_prime_u64(p), errc::bad_field, std::to_string(p) + " is not prime");
        return FieldPtr(new Field(field_kind::prime_field, p, {}));
    }

    // F_{p^k} given a monic irreducible modulus over F_p (validated here)
    static FieldPtr extension(std::uint64_t p, fpv::vec modulus) {
        require(p >= 2 && p < (1ull << 31), errc::bad_field,
                "extension field characteristic must satisfy 2 <= p < 2^31");
        require(is_prime_u64(p), errc::bad_field, std::to_string(p) + " is not prime");
        for (auto& c : modulus) c %= p;
        fpv::trim(modulus);
        int k = fpv::deg(modulus);
        require(k >= 2, errc::bad_field, "extension modulus must have degree >= 2");
        modulus = fpv::monic(std::move(modulus), p);
        require(is_irreducible(modulus, p), errc::bad_field,
                "extension modulus is not irreducible over F_p");
        return FieldPtr(new Field(field_kind::ext_field, p, std::move(modulus)));
    }

    static bool is_irreducible(const fpv::vec& m, std::uint64_t p) {
        int k = fpv::deg(m);
        if (k < 1) return false;
        if (k == 1) return true;
        // x^(p^j) mod m via j successive p-th powers
        auto frob = [&](fpv::vec h, int times) {
            for (int i = 0; i < times; ++i) h = fpv::powmod(h, p, m, p);
            return h;
        };
        fpv::vec x{0, 1};
        fpv::vec xpk = frob(x, k);
        if (fpv::sub(xpk, x, p) != fpv::vec{}) return false;
        for (int l = 2; l <= k; ++l) {
            if (k % l != 0) continue;
            bool lprime = true;
            for (int d = 2; d * d <= l; ++d)
                if (l % d == 0) { lprime = false; break; }
            if (!lprime) continue;
            fpv::vec h = frob(x, k / l);
            fpv::vec g = fpv::gcd(fpv::sub(h, x, p), m, p);
            if (fpv::deg(g) != 0) return false;
        }
        return true;
    }

    field_kind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }
    const fpv::vec& modulus() const { return modulus_; }

    // k for F_{p^k}, 1 for F_p, 0 for Q
    unsigned ext_degree() const {
        if (kind_ == field_kind::rationals) return 0;
        return kind_ == field_kind::prime_field ? 1 : static_cast<unsigned>(fpv::deg(modulus_));
    }

    mpz_class cardinality() const {
        require(kind_ != field_kind::rationals, errc::internal_error, "infinite field");
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p_), ext_degree());
        return q;
    }

    bool same(const Field& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && modulus_ == o.modulus_;
    }

    std::string name() const {
        switch (kind_) {
            case field_kind::rationals:  return "Q";
            case field_kind::prime_field: return "Fp:" + std::to_string(p_);
            case field_kind::ext_field:
                return "Fq:" + std::to_string(p_) + ":" + fpv::to_string(modulus_, "w");
        }
        return "?";
    }

  private:
    Field(field_kind k, std::uint64_t p, fpv::vec m) : kind_(k), p_(p), modulus_(std::move(m)) {}

    field_kind kind_;
    std::uint64_t p_;
    fpv::vec modulus_;
};

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    require(a && b && a->same(*b), errc::field_mismatch, "operands belong to different fields");
}

/* exact scalar: rational over Q, residue over F_p / F_{p^k}; canonical form
   throughout, so operator== is structural equality */
class FE {
  public:
    FE() : F_(Field::rationals()), q_(0) {}

    static FE zero(const FieldPtr& f) { return FE(f); }

    static FE one(const FieldPtr& f) { return from_int(f, 1); }

    static FE from_int(const FieldPtr& f, long v) {
        FE r(f);
        if (f->kind() == field_kind::rationals) {
            r.q_ = v;
        } else {
            std::uint64_t p = f->characteristic();
            long m = static_cast<long>(v % static_cast<long>(p));
            if (m < 0) m += static_cast<long>(p);
            if (m != 0) r.v_ = {static_cast<std::uint64_t>(m)};
        }
        return r;
    }

    // Accepts non-canonical input (negative or non-reduced denominator).
    // mpq_set assumes den > 0, so copy numerator and denominator as mpz
    // values before canonicalizing; copying the mpq whole would be UB.
    static FE from_mpq(const FieldPtr& f, const mpq_class& q) {
        require(sgn(q.get_den()) != 0, errc::division_by_zero,
                "rational with zero denominator");
        if (f->kind() == field_kind::rationals) {
            FE r(f);
            r.q_.get_num() = q.get_num();
            r.q_.get_den() = q.get_den();
            r.q_.canonicalize();
            return r;
        }
        FE num = from_mpz(f, q.get_num());
        FE den = from_mpz(f, q.get_den());
        return num / den;
    }

    static FE from_mpz(const FieldPtr& f, const mpz_class& z) {
        if (f->kind() == field_kind::rationals) {
            FE r(f);
            r.q_ = z;
            return r;
        }
        mpz_class m = z % static_cast<unsigned long>(f->characteristic());
        if (m < 0) m += static_cast<unsigned long>(f->characteristic());
        FE r(f);
        std::uint64_t u = mpz_get_ui(m.get_mpz_t());
        if (u != 0) r.v_ = {u};
        return r;
    }

    // extension-field element from coefficient digits (little-endian over F_p)
    static FE from_coeffs(const FieldPtr& f, fpv::vec coeffs) {
        require(f->kind() == field_kind::ext_field, errc::internal_error,
                "coefficient constructor is for extension fields");
        for (auto& c : coeffs) c %= f->characteristic();
        coeffs = fpv::rem(std::move(coeffs), f->modulus(), f->characteristic());
        FE r(f);
        r.v_ = std::move(coeffs);
        return r;
    }

    static FE generator(const FieldPtr& f) {
        require(f->kind() == field_kind::ext_field, errc::internal_error,
                "only extension fields have a generator");
        return from_coeffs(f, {0, 1});
    }

    const FieldPtr& field() const { return F_; }

    bool is_zero() const {
        return F_->kind() == field_kind::rationals ? q_ == 0 : v_.empty();
    }

    bool is_one() const {
        if (F_->kind() == field_kind::rationals) return q_ == 1;
        return v_.size() == 1 && v_[0] == 1;
    }

    const mpq_class& rational() const {
        require(F_->kind() == field_kind::rationals, errc::internal_error, "not a rational");
        return q_;
    }

    const fpv::vec& residue() const { return v_; }

    friend FE operator+(const FE& a, const FE& b) {
        require_same_field(a.F_, b.F_);
        FE r(a.F_);
        if (a.F_->kind() == field_kind::rationals) r.q_ = a.q_ + b.q_;
        else r.v_ = fpv::add(a.v_, b.v_, a.F_->characteristic());
        return r;
    }

    friend FE operator-(const FE& a, const FE& b) {
        require_same_field(a.F_, b.F_);
        FE r(a.F_);
        if (a.F_->kind() == field_kind::rationals) r.q_ = a.q_ - b.q_;
        else r.v_ = fpv::sub(a.v_, b.v_, a.F_->characteristic());
        return r;
    }

    FE operator-() const {
        FE r(F_);
        if (F_->kind() == field_kind::rationals) r.q_ = -q_;
        else r.v_ = fpv::sub({}, v_, F_->characteristic());
        return r;
    }

    friend FE operator*(const FE& a, const FE& b) {
        require_same_field(a.F_, b.F_);
        FE r(a.F_);
        switch (a.F_->kind()) {
            case field_kind::rationals: r.q_ = a.q_ * b.q_; break;
            case field_kind::prime_field:
                if (!a.v_.empty() && !b.v_.empty()) {
                    std::uint64_t m = mulmod_u64(a.v_[0], b.v_[0], a.F_->characteristic());
                    if (m) r.v_ = {m};
                }
                break;
            case field_kind::ext_field:
                r.v_ = fpv::mulmod(a.v_, b.v_, a.F_->modulus(), a.F_->characteristic());
                break;
        }
        return r;
    }

    FE inverse() const {
        require(!is_zero(), errc::division_by_zero, "inverse of zero");
        FE r(F_);
        switch (F_->kind()) {
            case field_kind::rationals: r.q_ = 1 / q_; break;
            case field_kind::prime_field:
                r.v_ = {powmod_u64(v_[0], F_->characteristic() - 2, F_->characteristic())};
                break;
            case field_kind::ext_field: {
                fpv::vec g, s;
                fpv::xgcd_inverse(v_, F_->modulus(), F_->characteristic(), g, s);
                require(fpv::deg(g) == 0, errc::internal_error, "modulus not irreducible?");
                std::uint64_t ginv = powmod_u64(g[0], F_->characteristic() - 2, F_->characteristic());
                r.v_ = fpv::scale(s, ginv, F_->characteristic());
                break;
            }
        }
        return r;
    }

    friend FE operator/(const FE& a, const FE& b) { return a * b.inverse(); }

    FE pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FE base = *this, r = one(F_);
        std::uint64_t u = static_cast<std::uint64_t>(e);
        while (u) {
            if (u & 1) r = r * base;
            base = base * base;
            u >>= 1;
        }
        return r;
    }

    FE pow_mpz(const mpz_class& e) const {
        require(e >= 0, errc::internal_error, "pow_mpz wants e >= 0");
        FE base = *this, r = one(F_);
        mpz_class u = e;
        while (u > 0) {
            if (mpz_odd_p(u.get_mpz_t())) r = r * base;
            base = base * base;
            u >>= 1;
        }
        return r;
    }

    // Frobenius inverse: the unique c with c^p = *this (finite fields are perfect)
    FE pth_root() const {
        require(F_->kind() != field_kind::rationals, errc::internal_error,
                "p-th root only defined in characteristic p");
        unsigned k = F_->ext_degree();
        if (k == 1) return *this;  // Frobenius is the identity on F_p
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F_->characteristic()), k - 1);
        return pow_mpz(e);
    }

    friend bool operator==(const FE& a, const FE& b) {
        return a.F_->same(*b.F_) &&
               (a.F_->kind() == field_kind::rationals ? a.q_ == b.q_ : a.v_ == b.v_);
    }

    friend bool operator!=(const FE& a, const FE& b) { return !(a == b); }

    // total order for deterministic sorting (not an algebraic order)
    int cmp(const FE& b) const {
        require_same_field(F_, b.F_);
        if (F_->kind() == field_kind::rationals) return ::cmp(q_, b.q_);
        if (v_.size() != b.v_.size()) return v_.size() < b.v_.size() ? -1 : 1;
        for (std::size_t i = v_.size(); i-- > 0;) {
            if (v_[i] != b.v_[i]) return v_[i] < b.v_[i] ? -1 : 1;
        }
        return 0;
    }

    friend bool operator<(const FE& a, const FE& b) { return a.cmp(b) < 0; }

    std::string str() const {
        switch (F_->kind()) {
            case field_kind::rationals: return q_.get_str();
            case field_kind::prime_field: return v_.empty() ? "0" : std::to_string(v_[0]);
            case field_kind::ext_field: return fpv::to_string(v_, "w");
        }
        return "?";
    }

    // true when printing inside a product requires parentheses
    bool needs_parens() const {
        if (F_->kind() == field_kind::ext_field) return v_.size() > 1;
        return false;
    }

  private:
    explicit FE(const FieldPtr& f) : F_(f), q_(0) {}

    FieldPtr F_;
    mpq_class q_;
    fpv::vec v_;
};

}  // namespace dicritique
