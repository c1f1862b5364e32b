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

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ufactor.hpp"

namespace dicritique {

// graded lex order; the last-listed variable is the strongest in the lex tie-break,
// so with variables (x, y, z): x < y < z as monomials
inline int grlex_cmp(const std::vector<int>& a, const std::vector<int>& b) {
    int ta = std::accumulate(a.begin(), a.end(), 0);
    int tb = std::accumulate(b.begin(), b.end(), 0);
    if (ta != tb) return ta < tb ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

struct GrlexDescending {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        return grlex_cmp(a, b) > 0;
    }
};

// sparse multivariate polynomial; terms kept in descending graded-lex order
class MultiPoly {
  public:
    using TermMap = std::map<std::vector<int>, FE, GrlexDescending>;

    MultiPoly() : F_(Field::rationals()), vars_{"x", "y"} {}

    MultiPoly(FieldPtr f, std::vector<std::string> vars)
        : F_(std::move(f)), vars_(std::move(vars)) {}

    static MultiPoly zero(const FieldPtr& f, const std::vector<std::string>& vars) {
        return MultiPoly(f, vars);
    }

    static MultiPoly constant(const FE& c, const std::vector<std::string>& vars) {
        MultiPoly r(c.field(), vars);
        r.add_term(std::vector<int>(vars.size(), 0), c);
        return r;
    }

    static MultiPoly one(const FieldPtr& f, const std::vector<std::string>& vars) {
        return constant(FE::one(f), vars);
    }

    static MultiPoly variable(const FieldPtr& f, const std::vector<std::string>& vars,
                              std::size_t idx) {
        MultiPoly r(f, vars);
        std::vector<int> e(vars.size(), 0);
        e[idx] = 1;
        r.add_term(e, FE::one(f));
        return r;
    }

    static MultiPoly monomial(const FE& c, const std::vector<std::string>& vars,
                              std::vector<int> exps) {
        MultiPoly r(c.field(), vars);
        r.add_term(std::move(exps), c);
        return r;
    }

    const FieldPtr& field() const { return F_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return t_; }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        raise(errc::unknown_variable, "unknown variable '" + name + "'");
    }

    bool is_zero() const { return t_.empty(); }

    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && total_of(t_.begin()->first) == 0);
    }

    bool is_monomial() const { return t_.size() == 1; }

    FE constant_term() const {
        auto it = t_.find(std::vector<int>(vars_.size(), 0));
        return it == t_.end() ? FE::zero(F_) : it->second;
    }

    int total_degree() const {
        if (t_.empty()) return -1;
        return total_of(t_.begin()->first);  // first term is grlex-largest
    }

    int degree_in(std::size_t vi) const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e[vi]);
        return t_.empty() ? -1 : d;
    }

    // the grlex-leading coefficient; used for monic normalization
    const FE& leading_coeff() const {
        require(!t_.empty(), errc::zero_polynomial, "leading coefficient of zero");
        return t_.begin()->second;
    }

    const std::vector<int>& leading_exps() const {
        require(!t_.empty(), errc::zero_polynomial, "leading term of zero");
        return t_.begin()->first;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, -c);
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly r(a.F_, a.vars_);
        for (const auto& [ea, ca] : a.t_) {
            for (const auto& [eb, cb] : b.t_) {
                std::vector<int> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }

    friend MultiPoly operator*(const FE& s, const MultiPoly& a) {
        MultiPoly r(a.F_, a.vars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.t_) r.t_.emplace(e, s * c);
        return r;
    }

    MultiPoly pow(long n) const {
        require(n >= 0, errc::internal_error, "negative polynomial power");
        MultiPoly r = one(F_, vars_), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (!a.F_->same(*b.F_) || a.vars_ != b.vars_ || a.t_.size() != b.t_.size()) return false;
        auto ia = a.t_.begin();
        auto ib = b.t_.begin();
        for (; ia != a.t_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }

    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // m-adic order at the origin: least total degree in the support
    int order_at_origin() const {
        require(!t_.empty(), errc::zero_polynomial, "order of the zero polynomial");
        int m = total_of(t_.begin()->first);
        for (const auto& [e, c] : t_) m = std::min(m, total_of(e));
        return m;
    }

    // homogeneous part of degree m, which must be the order
    MultiPoly initial_form(int m) const {
        require(!t_.empty(), errc::zero_polynomial, "initial form of the zero polynomial");
        require(m == order_at_origin(), errc::wrong_order,
                "requested degree " + std::to_string(m) + " but order is " +
                    std::to_string(order_at_origin()));
        MultiPoly r(F_, vars_);
        for (const auto& [e, c] : t_)
            if (total_of(e) == m) r.t_.emplace(e, c);
        return r;
    }

    MultiPoly derivative(std::size_t vi) const {
        MultiPoly r(F_, vars_);
        for (const auto& [e, c] : t_) {
            if (e[vi] == 0) continue;
            FE nc = FE::from_int(F_, e[vi]) * c;
            if (nc.is_zero()) continue;
            std::vector<int> ne = e;
            ne[vi] -= 1;
            r.t_.emplace(std::move(ne), nc);
        }
        return r;
    }

    // simultaneous substitution: vars_[i] -> images[i]; images share one var list
    MultiPoly substitute(const std::vector<MultiPoly>& images) const {
        require(images.size() == vars_.size(), errc::internal_error,
                "substitute: image count mismatch");
        const std::vector<std::string>& tv = images.empty() ? vars_ : images[0].vars_;
        const FieldPtr& tf = images.empty() ? F_ : images[0].F_;
        MultiPoly r = zero(tf, tv);
        std::vector<std::vector<MultiPoly>> powers(images.size());
        auto power_of = [&](std::size_t vi, int e) -> const MultiPoly& {
            auto& cache = powers[vi];
            if (cache.empty()) cache.push_back(one(tf, tv));
            while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[vi]);
            return cache[static_cast<std::size_t>(e)];
        };
        for (const auto& [e, c] : t_) {
            MultiPoly term = constant(convert_scalar(c, tf), tv);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term = term * power_of(i, e[i]);
            r = r + term;
        }
        return r;
    }

    FE eval(const std::vector<FE>& point) const {
        require(point.size() == vars_.size(), errc::internal_error, "eval: point size mismatch");
        FE acc = FE::zero(F_);
        for (const auto& [e, c] : t_) {
            FE term = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) term = term * point[i].pow(e[i]);
            acc = acc + term;
        }
        return acc;
    }

    // substitute one variable by a scalar, keeping the variable list
    MultiPoly eval_var(std::size_t vi, const FE& a) const {
        MultiPoly r(F_, vars_);
        for (const auto& [e, c] : t_) {
            FE nc = e[vi] > 0 ? c * a.pow(e[vi]) : c;
            if (nc.is_zero()) continue;
            std::vector<int> ne = e;
            ne[vi] = 0;
            r.add_term(std::move(ne), nc);
        }
        return r;
    }

    MultiPoly drop_var(std::size_t vi) const {
        require(degree_in(vi) <= 0, errc::internal_error, "drop_var: variable still present");
        std::vector<std::string> nv;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != vi) nv.push_back(vars_[i]);
        MultiPoly r(F_, nv);
        for (const auto& [e, c] : t_) {
            std::vector<int> ne;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != vi) ne.push_back(e[i]);
            r.t_.emplace(std::move(ne), c);
        }
        return r;
    }

    MultiPoly insert_var(std::size_t pos, const std::string& name) const {
        std::vector<std::string> nv = vars_;
        nv.insert(nv.begin() + static_cast<long>(pos), name);
        MultiPoly r(F_, nv);
        for (const auto& [e, c] : t_) {
            std::vector<int> ne = e;
            ne.insert(ne.begin() + static_cast<long>(pos), 0);
            r.t_.emplace(std::move(ne), c);
        }
        return r;
    }

    MultiPoly rename_vars(std::vector<std::string> nv) const {
        require(nv.size() == vars_.size(), errc::internal_error, "rename: arity mismatch");
        MultiPoly r(F_, std::move(nv));
        r.t_ = t_;
        return r;
    }

    // coefficients as a polynomial in vars_[vi]; index = power of that variable,
    // entries keep the full variable list with vi-degree zero
    std::vector<MultiPoly> coeffs_in(std::size_t vi) const {
        int d = degree_in(vi);
        std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, -1) + 1),
                                   MultiPoly(F_, vars_));
        for (const auto& [e, c] : t_) {
            std::vector<int> ne = e;
            int k = ne[vi];
            ne[vi] = 0;
            out[static_cast<std::size_t>(k)].add_term(std::move(ne), c);
        }
        return out;
    }

    UniPoly to_univariate(std::size_t vi) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            require(i == vi || degree_in(i) <= 0, errc::internal_error,
                    "to_univariate: extra active variable " + vars_[i]);
        std::vector<FE> cs(static_cast<std::size_t>(std::max(degree_in(vi), -1) + 1),
                           FE::zero(F_));
        for (const auto& [e, c] : t_) cs[static_cast<std::size_t>(e[vi])] = c;
        return UniPoly(F_, std::move(cs), vars_[vi]);
    }

    static MultiPoly from_univariate(const UniPoly& u, const std::vector<std::string>& vars,
                                     std::size_t vi) {
        MultiPoly r(u.field(), vars);
        for (int i = 0; i <= u.deg(); ++i) {
            if (u.coeff(i).is_zero()) continue;
            std::vector<int> e(vars.size(), 0);
            e[vi] = i;
            r.t_.emplace(std::move(e), u.coeff(i));
        }
        return r;
    }

    bool try_divide(const MultiPoly& d, MultiPoly* quotient = nullptr) const {
        check_compatible(d);
        require(!d.is_zero(), errc::division_by_zero, "polynomial division by zero");
        MultiPoly q(F_, vars_), r = *this;
        const auto& de = d.leading_exps();
        FE dinv = d.leading_coeff().inverse();
        while (!r.is_zero()) {
            const auto& re = r.leading_exps();
            std::vector<int> qe(re.size());
            for (std::size_t i = 0; i < re.size(); ++i) {
                qe[i] = re[i] - de[i];
                if (qe[i] < 0) return false;
            }
            MultiPoly term = monomial(r.leading_coeff() * dinv, vars_, std::move(qe));
            q = q + term;
            r = r - term * d;
        }
        if (quotient) *quotient = q;
        return true;
    }

    MultiPoly divide_exact(const MultiPoly& d) const {
        MultiPoly q;
        require(try_divide(d, &q), errc::internal_error, "exact division failed");
        return q;
    }

    // least exponent of each variable over the support (the monomial content)
    std::vector<int> min_exponents() const {
        require(!t_.empty(), errc::zero_polynomial, "monomial content of zero");
        std::vector<int> m = t_.begin()->first;
        for (const auto& [e, c] : t_)
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        return m;
    }

    MultiPoly divide_by_monomial(const std::vector<int>& exps) const {
        MultiPoly r(F_, vars_);
        for (const auto& [e, c] : t_) {
            std::vector<int> ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                ne[i] = e[i] - exps[i];
                require(ne[i] >= 0, errc::internal_error, "monomial division failed");
            }
            r.t_.emplace(std::move(ne), c);
        }
        return r;
    }

    MultiPoly monic() const {
        if (is_zero() || leading_coeff().is_one()) return *this;
        return leading_coeff().inverse() * *this;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : t_) {
            std::string cs = c.str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? "-" : "+";
            }
            std::string vp;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!vp.empty()) vp += "*";
                vp += vars_[i];
                if (e[i] > 1) vp += "^" + std::to_string(e[i]);
            }
            if (vp.empty()) {
                out += cs;
            } else if (cs == "1") {
                out += vp;
            } else {
                out += (c.needs_parens() ? "(" + cs + ")" : cs) + "*" + vp;
            }
        }
        return out;
    }

    void add_term(std::vector<int> exps, const FE& c) {
        require(exps.size() == vars_.size(), errc::internal_error, "term arity mismatch");
        if (c.is_zero()) return;
        auto it = t_.find(exps);
        if (it == t_.end()) {
            t_.emplace(std::move(exps), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

  private:
    static int total_of(const std::vector<int>& e) {
        return std::accumulate(e.begin(), e.end(), 0);
    }

    static FE convert_scalar(const FE& c, const FieldPtr& tf) {
        if (c.field()->same(*tf)) return c;
        raise(errc::field_mismatch, "substitution images over a different field");
    }

    void check_compatible(const MultiPoly& o) const {
        require_same_field(F_, o.F_);
        require(vars_ == o.vars_, errc::internal_error, "variable list mismatch");
    }

    FieldPtr F_;
    std::vector<std::string> vars_;
    TermMap t_;
};

/* ---------- gcd ---------- */

namespace detail {

// fraction-free pseudo-remainder of a by b in variable vi
inline MultiPoly prem(const MultiPoly& a, const MultiPoly& b, std::size_t vi) {
    int db = b.degree_in(vi);
    MultiPoly lcb = b.coeffs_in(vi)[static_cast<std::size_t>(db)];
    MultiPoly r = a;
    while (!r.is_zero() && r.degree_in(vi) >= db) {
        int dr = r.degree_in(vi);
        MultiPoly lcr = r.coeffs_in(vi)[static_cast<std::size_t>(dr)];
        std::vector<int> shift(a.vars().size(), 0);
        shift[vi] = dr - db;
        MultiPoly t = lcr * MultiPoly::monomial(FE::one(a.field()), a.vars(), shift) * b;
        r = lcb * r - t;
    }
    return r;
}

inline MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g);

inline MultiPoly content_in(const MultiPoly& f, std::size_t vi) {
    MultiPoly c = MultiPoly::zero(f.field(), f.vars());
    for (const MultiPoly& coeff : f.coeffs_in(vi)) {
        if (coeff.is_zero()) continue;
        c = c.is_zero() ? coeff : gcd_rec(c, coeff);
        if (c.is_constant()) break;
    }
    return c;
}

inline MultiPoly gcd_rec(const MultiPoly& f, const MultiPoly& g) {
    if (f.is_constant() || g.is_constant())
        return MultiPoly::one(f.field(), f.vars());
    // main variable: the last one active in either operand
    std::size_t vi = 0;
    for (std::size_t i = f.vars().size(); i-- > 0;) {
        if (f.degree_in(i) > 0 || g.degree_in(i) > 0) { vi = i; break; }
    }
    if (f.degree_in(vi) == 0) return gcd_rec(f, content_in(g, vi));
    if (g.degree_in(vi) == 0) return gcd_rec(content_in(f, vi), g);
    MultiPoly cf = content_in(f, vi), cg = content_in(g, vi);
    MultiPoly c = gcd_rec(cf, cg);
    MultiPoly a = f.divide_exact(cf), b = g.divide_exact(cg);
    if (a.degree_in(vi) < b.degree_in(vi)) std::swap(a, b);
    for (;;) {
        MultiPoly r = prem(a, b, vi);
        if (r.is_zero()) break;
        a = std::move(b);
        b = r.divide_exact(content_in(r, vi));
    }
    return c * b;
}

}  // namespace detail

// gcd normalized to monic leading coefficient in the canonical term order
inline MultiPoly gcd_poly(const MultiPoly& f, const MultiPoly& g) {
    require(!f.is_zero() && !g.is_zero(), errc::zero_polynomial, "gcd with zero polynomial");
    return detail::gcd_rec(f, g).monic();
}

// product of distinct irreducible factors (works in characteristic 0 and p)
inline MultiPoly radical_poly(const MultiPoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "radical of zero");
    const FieldPtr& F = f.field();
    // split off the monomial part first
    std::vector<int> mono = f.min_exponents();
    MultiPoly rad_mono = MultiPoly::one(F, f.vars());
    bool have_mono = false;
    for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] > 0) {
            rad_mono = rad_mono * MultiPoly::variable(F, f.vars(), i);
            have_mono = true;
        }
    }
    MultiPoly h = have_mono ? f.divide_by_monomial(mono) : f;
    if (h.is_constant()) return rad_mono.monic();
    std::uint64_t p = F->characteristic();
    MultiPoly d = MultiPoly::zero(F, f.vars());
    bool all_zero = true;
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        MultiPoly di = h.derivative(i);
        if (di.is_zero()) continue;
        d = all_zero ? di : gcd_poly(d, di);
        all_zero = false;
        if (d.is_constant()) break;
    }
    if (all_zero) {
        // char p with every partial zero: h is a p-th power
        require(p > 0, errc::internal_error, "vanishing differential in characteristic 0");
        MultiPoly u(F, f.vars());
        for (const auto& [e, c] : h.terms()) {
            std::vector<int> ne(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                require(e[i] % static_cast<int>(p) == 0, errc::internal_error,
                        "inconsistent p-th power");
                ne[i] = e[i] / static_cast<int>(p);
            }
            u.add_term(std::move(ne), c.pth_root());
        }
        return (rad_mono * radical_poly(u)).monic();
    }
    MultiPoly g = gcd_poly(h, d);
    MultiPoly w = h.divide_exact(g);
    for (;;) {
        MultiPoly s = gcd_poly(g, w);
        if (s.is_constant()) break;
        g = g.divide_exact(s);
    }
    if (g.is_constant()) return (rad_mono * w).monic();
    // remaining g collects factors with multiplicity divisible by p
    return (rad_mono * w * radical_poly(g)).monic();
}

/* ---------- resultant ---------- */

// Sylvester resultant eliminating `var`, computed by fraction-free elimination;
// when exactly one operand is free of `var` the power convention res(f, c) = c^deg f
// applies, and two var-free operands are rejected
inline UniPoly resultant(const MultiPoly& f, const MultiPoly& g, const std::string& var) {
    require(!f.is_zero() && !g.is_zero(), errc::zero_polynomial, "resultant of zero");
    std::size_t vi = f.var_index(var);
    int n = f.degree_in(vi), m = g.degree_in(vi);
    require(n > 0 || m > 0, errc::degenerate_input,
            "resultant: both operands have degree 0 in " + var);
    auto finish = [&](const MultiPoly& r) -> UniPoly {
        MultiPoly red = r;
        // pick the remaining active variable (or default to the first other one)
        std::size_t active = vi == 0 ? 1 : 0;
        bool found = false;
        for (std::size_t i = 0; i < red.vars().size(); ++i) {
            if (i == vi) continue;
            if (red.degree_in(i) > 0) {
                require(!found, errc::internal_error, "resultant is multivariate");
                active = i;
                found = true;
            }
        }
        return red.to_univariate(active);
    };
    if (n == 0) return finish(f.pow(m));
    if (m == 0) return finish(g.pow(n));
    std::vector<MultiPoly> fc = f.coeffs_in(vi), gc = g.coeffs_in(vi);
    int dim = n + m;
    MultiPoly z = MultiPoly::zero(f.field(), f.vars());
    std::vector<std::vector<MultiPoly>> M(static_cast<std::size_t>(dim),
                                          std::vector<MultiPoly>(static_cast<std::size_t>(dim), z));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[r][r + n - k] = fc[static_cast<std::size_t>(k)];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[m + r][r + m - k] = gc[static_cast<std::size_t>(k)];
    // Bareiss fraction-free elimination over the coefficient ring
    bool negate = false;
    MultiPoly prev = MultiPoly::one(f.field(), f.vars());
    for (int k = 0; k + 1 < dim; ++k) {
        std::size_t ku = static_cast<std::size_t>(k);
        if (M[ku][ku].is_zero()) {
            std::size_t swap_row = ku;
            for (std::size_t r = ku + 1; r < static_cast<std::size_t>(dim); ++r)
                if (!M[r][ku].is_zero()) { swap_row = r; break; }
            if (swap_row == ku) return finish(z);  // singular: resultant vanishes
            std::swap(M[ku], M[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = ku + 1; i < static_cast<std::size_t>(dim); ++i) {
            for (std::size_t j = ku + 1; j < static_cast<std::size_t>(dim); ++j)
                M[i][j] = (M[ku][ku] * M[i][j] - M[i][ku] * M[ku][j]).divide_exact(prev);
            M[i][ku] = z;
        }
        prev = M[ku][ku];
    }
    MultiPoly det = M[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(dim - 1)];
    if (negate) det = -det;
    return finish(det);
}

/* ---------- parsing ---------- */

namespace detail {

struct PolyParser {
    const std::string& text;
    const FieldPtr& F;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) {
        throw parse_error(errc::syntax_error, msg, at);
    }

    // integer or rational literal
    mpq_class number() {
        skip_ws();
        std::size_t start = pos;
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            digits += text[pos++];
        if (digits.empty()) fail("expected a number", start);
        mpz_class num(digits);
        if (pos < text.size() && text[pos] == '/' && pos + 1 < text.size() &&
            std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
            ++pos;
            std::string den;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                den += text[pos++];
            mpz_class d(den);
            if (d == 0) fail("zero denominator in literal", start);
            mpq_class q(num, d);
            q.canonicalize();
            return q;
        }
        return mpq_class(num);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        std::string name;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            name += text[pos++];
        if (name.empty()) fail("expected an identifier", start);
        return name;
    }

    MultiPoly primary() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size()) fail("unexpected end of input", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            MultiPoly e = expression();
            if (!eat(')')) fail("expected ')'", pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class q = number();
            return MultiPoly::constant(FE::from_mpq(F, q), vars);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = ident();
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return MultiPoly::variable(F, vars, i);
            if (name == "w" && F->kind() == field_kind::ext_field)
                return MultiPoly::constant(FE::generator(F), vars);
            throw parse_error(errc::unknown_variable, "unknown variable '" + name + "'", start);
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    MultiPoly factor() {
        MultiPoly base = primary();
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip_ws();
            std::size_t at = pos;
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                throw parse_error(errc::non_integer_exponent,
                                  "expected an integer exponent after '^'", pos);
            mpq_class e = number();
            if (e.get_den() != 1)
                throw parse_error(errc::non_integer_exponent, "exponent must be an integer", at);
            if (e < 0 || e > 100000) fail("exponent out of range", at);
            return base.pow(e.get_num().get_si());
        }
        return base;
    }

    MultiPoly term() {
        MultiPoly r = factor();
        while (peek() == '*') {
            ++pos;
            r = r * factor();
        }
        return r;
    }

    MultiPoly expression() {
        bool neg = false;
        skip_ws();
        if (peek() == '-') {
            ++pos;
            neg = true;
        } else if (peek() == '+') {
            ++pos;
        }
        MultiPoly r = term();
        if (neg) r = -r;
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                r = r + term();
            } else if (c == '-') {
                ++pos;
                r = r - term();
            } else {
                break;
            }
        }
        return r;
    }
};

}  // namespace detail

inline MultiPoly parse_poly(const std::string& text, const FieldPtr& field,
                            const std::vector<std::string>& vars) {
    detail::PolyParser p{text, field, vars};
    MultiPoly r = p.expression();
    p.skip_ws();
    if (p.pos != text.size())
        throw parse_error(errc::syntax_error, "unexpected trailing input", p.pos);
    return r;
}

/* ---------- homogenization ---------- */

// f in (x, y) lifted to degree d in (X, Y, Z), Z the homogenizing variable
inline MultiPoly homogenize(const MultiPoly& f, int d) {
    require(f.vars().size() == 2, errc::internal_error, "homogenize wants a bivariate input");
    require(!f.is_zero(), errc::zero_polynomial, "homogenize of zero");
    require(d >= f.total_degree(), errc::degree_too_small,
            "target degree " + std::to_string(d) + " below deg f = " +
                std::to_string(f.total_degree()));
    std::vector<std::string> V{"X", "Y", "Z"};
    MultiPoly r(f.field(), V);
    for (const auto& [e, c] : f.terms())
        r.add_term({e[0], e[1], d - e[0] - e[1]}, c);
    return r;
}

// restriction of a form in (X, Y, Z) to the affine chart where one coordinate is 1;
// the remaining two coordinates are renamed (x, y) in order
inline MultiPoly dehomogenize(const MultiPoly& Fh, std::size_t chart) {
    require(Fh.vars().size() == 3, errc::internal_error, "dehomogenize wants a trivariate form");
    MultiPoly r = Fh.eval_var(chart, FE::one(Fh.field())).drop_var(chart);
    return r.rename_vars({"x", "y"});
}

}  // namespace dicritique
