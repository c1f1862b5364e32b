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

#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace dicritique {

// dense univariate polynomial over an exact field, coefficients little-endian
class UniPoly {
  public:
    UniPoly() : F_(Field::rationals()), var_("t") {}

    explicit UniPoly(FieldPtr f, std::string var = "t")
        : F_(std::move(f)), var_(std::move(var)) {}

    UniPoly(FieldPtr f, std::vector<FE> coeffs, std::string var = "t")
        : F_(std::move(f)), c_(std::move(coeffs)), var_(std::move(var)) {
        trim();
    }

    static UniPoly zero(const FieldPtr& f, const std::string& var = "t") {
        return UniPoly(f, var);
    }

    static UniPoly constant(const FE& a, const std::string& var = "t") {
        UniPoly r(a.field(), var);
        if (!a.is_zero()) r.c_ = {a};
        return r;
    }

    static UniPoly variable(const FieldPtr& f, const std::string& var = "t") {
        UniPoly r(f, var);
        r.c_ = {FE::zero(f), FE::one(f)};
        return r;
    }

    // c * t^e
    static UniPoly monomial(const FE& c, int e, const std::string& var = "t") {
        UniPoly r(c.field(), var);
        if (!c.is_zero()) {
            r.c_.assign(static_cast<std::size_t>(e) + 1, FE::zero(c.field()));
            r.c_.back() = c;
        }
        return r;
    }

    const FieldPtr& field() const { return F_; }
    const std::string& var() const { return var_; }
    void set_var(const std::string& v) { var_ = v; }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    FE coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return FE::zero(F_);
        return c_[static_cast<std::size_t>(i)];
    }

    const FE& lc() const {
        require(!c_.empty(), errc::zero_polynomial, "leading coefficient of zero");
        return c_.back();
    }

    const std::vector<FE>& coeffs() const { return c_; }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        require_same_field(a.F_, b.F_);
        UniPoly r(a.F_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), FE::zero(a.F_));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        r.trim();
        return r;
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        require_same_field(a.F_, b.F_);
        UniPoly r(a.F_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), FE::zero(a.F_));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        r.trim();
        return r;
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        require_same_field(a.F_, b.F_);
        UniPoly r(a.F_, a.var_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, FE::zero(a.F_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }

    friend UniPoly operator*(const FE& s, const UniPoly& a) {
        UniPoly r = a;
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }

    // quotient and remainder; divisor must be nonzero
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
        require_same_field(a.F_, b.F_);
        require(!b.is_zero(), errc::division_by_zero, "polynomial division by zero");
        UniPoly q(a.F_, a.var_), r = a;
        FE lcinv = b.lc().inverse();
        while (r.deg() >= b.deg()) {
            FE c = r.lc() * lcinv;
            int shift = r.deg() - b.deg();
            UniPoly term = monomial(c, shift, a.var_);
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }

    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divrem(a, b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divrem(a, b).second; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (!a.F_->same(*b.F_) || a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly monic() const {
        if (is_zero() || lc().is_one()) return *this;
        return lc().inverse() * *this;
    }

    UniPoly derivative() const {
        UniPoly r(F_, var_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1, FE::zero(F_));
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = FE::from_int(F_, static_cast<long>(i)) * c_[i];
        r.trim();
        return r;
    }

    FE eval(const FE& a) const {
        FE r = FE::zero(F_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
        return r;
    }

    // f(g) by Horner over polynomials
    UniPoly compose(const UniPoly& g) const {
        UniPoly r(F_, g.var_);
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * g + constant(c_[i], g.var_);
        return r;
    }

    // f(t + a)
    UniPoly shifted(const FE& a) const {
        UniPoly lin(F_, var_);
        lin.c_ = {a, FE::one(F_)};
        return compose(lin);
    }

    // t^deg * f(1/t), exact coefficient reversal
    UniPoly reversed() const {
        UniPoly r = *this;
        std::reverse(r.c_.begin(), r.c_.end());
        r.trim();
        return r;
    }

    UniPoly shifted_var(int e) const {  // f * t^e, e >= 0
        if (is_zero() || e == 0) return *this;
        UniPoly r(F_, var_);
        r.c_.assign(static_cast<std::size_t>(e), FE::zero(F_));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        require_same_field(a.F_, b.F_);
        while (!b.is_zero()) {
            UniPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // multiplicity of a as a root, together with the fully deflated quotient
    int root_multiplicity(const FE& a, UniPoly* quotient = nullptr) const {
        UniPoly cur = *this;
        int m = 0;
        while (!cur.is_zero() && cur.eval(a).is_zero() && cur.deg() >= 1) {
            cur = cur.deflate(a);
            ++m;
        }
        if (quotient) *quotient = cur;
        return m;
    }

    // divide by (t - a); caller guarantees a is a root
    UniPoly deflate(const FE& a) const {
        require(deg() >= 1, errc::internal_error, "deflating a constant");
        std::vector<FE> q(c_.size() - 1, FE::zero(F_));
        FE carry = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = c_[i] + carry * a;
        }
        require(carry.is_zero(), errc::internal_error, "deflate: not a root");
        return UniPoly(F_, std::move(q), var_);
    }

    // product of the distinct irreducible factors, monic
    UniPoly radical() const {
        require(!is_zero(), errc::zero_polynomial, "radical of zero");
        if (deg() <= 0) return constant(FE::one(F_), var_);
        std::uint64_t p = F_->characteristic();
        UniPoly d = derivative();
        if (p == 0) return (*this / gcd(*this, d)).monic();
        if (d.is_zero()) {
            // f = v(t)^p with v obtained from p-th roots of the t^(jp) coefficients
            UniPoly v(F_, var_);
            v.c_.resize(c_.size() / p + 1, FE::zero(F_));
            for (std::size_t j = 0; j * p < c_.size(); ++j)
                v.c_[j] = c_[j * p].pth_root();
            v.trim();
            return v.radical();
        }
        UniPoly g = gcd(*this, d);
        UniPoly w = (*this / g).monic();  // factors of multiplicity not divisible by p
        for (;;) {
            UniPoly h = gcd(g, w);
            if (h.deg() <= 0) break;
            g = g / h;
        }
        // g is now a p-th power: its remaining factors had multiplicity divisible by p
        if (g.deg() <= 0) return w;
        return (w * g.radical()).monic();
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            const FE& c = c_[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            std::string cs = c.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) { out += "-"; cs = cs.substr(1); }
            } else {
                out += neg ? "-" : "+";
                if (neg) cs = cs.substr(1);
            }
            bool unit_coeff = (cs == "1") && i > 0;
            if (i == 0) {
                out += c.needs_parens() ? "(" + cs + ")" : cs;
            } else {
                if (!unit_coeff) {
                    out += c.needs_parens() ? "(" + cs + ")" : cs;
                    out += "*";
                }
                out += var_;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldPtr F_;
    std::vector<FE> c_;
    std::string var_;
};

}  // namespace dicritique
