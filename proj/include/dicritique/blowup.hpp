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

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mpoly.hpp"

namespace dicritique {

// thrown over finite fields when a point lives in a proper extension; the
// driver enlarges the field by this degree factor and restarts
struct extension_request {
    unsigned degree_factor;
};

struct Chart {
    enum class Kind { root, blow_a, blow_b, shift };
    Kind kind = Kind::root;
    int parent = -1;
    FE sx, sy;  // shift amounts (Kind::shift only)

    // how this chart's (x, y) express the parent's coordinates
    std::string subst_str() const {
        switch (kind) {
            case Kind::root:   return "x = x, y = y";
            case Kind::blow_a: return "x = x, y = x*y";
            case Kind::blow_b: return "x = x*y, y = y";
            case Kind::shift:  return "x = x + " + sx.str() + ", y = y + " + sy.str();
        }
        return "";
    }
};

// local data at one center, always normalized to the chart origin
struct PairState {
    MultiPoly f, g;                 // weak transforms of the pencil pair: both
                                    // pullbacks divided by the same e^min(m_f, m_g)
    MultiPoly strict_f, strict_g;   // strict transforms of the generator curves
    MultiPoly sx, sy;               // strict transforms of the root coordinate axes
    std::map<int, MultiPoly> exc;   // local equations of exceptional divisors
                                    // visible in this chart
    std::map<int, long> mult;       // divided exceptional exponents, common to f and g
                                    // (the monomial M with f_total = M * f_weak)
};

struct ResidualMap {
    UniPoly num, den;  // reduced fraction, den monic
    int degree = 0;    // max(deg num, deg den) >= 1
    std::vector<FE> poles;          // distinct in-field roots of den
    bool pole_at_infinity = false;  // deg num > deg den
    bool nonrational_poles = false; // den keeps a rootless nonconstant factor

    int distinct_pole_count() const {
        return static_cast<int>(poles.size()) + (pole_at_infinity ? 1 : 0);
    }

    std::string str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }
};

struct ExceptionalDivisor {
    int id = -1;    // creation order across the tree
    int node = -1;  // node whose blowup created it
    long vx = 0, vy = 0, vf = 0, vg = 0;
    bool dicritical = false;
};

// position of a center on the parent node's exceptional divisor
struct NodeCenter {
    bool at_infinity = false;  // the chart-B origin
    FE t;                      // chart-A coordinate otherwise
};

struct ResolutionNode {
    int id = 0;
    int parent = -1;
    int divisor = -1;  // divisor created by blowing up this center
    NodeCenter center; // meaningless for the root
    bool probe = false;
    long m_f = 0, m_g = 0;  // weak orders at the center
    long s_f = 0, s_g = 0;  // strict orders (Noether bookkeeping)
    std::vector<int> incident;             // divisors through the center
    std::optional<ResidualMap> residual;   // present iff the divisor is dicritical
    std::vector<int> children;
    PairState state;  // local state at the center before blowing up
    int chart = 0;
    int chart_a = -1, chart_b = -1;
};

class ResolutionTree {
  public:
    FieldPtr F;
    MultiPoly f0, g0;  // root-local generators (origin is the base point)
    std::vector<Chart> charts;
    std::vector<ResolutionNode> nodes;  // depth-first creation order
    std::vector<ExceptionalDivisor> divisors;
    std::vector<std::pair<int, int>> exc_edges;  // ids sorted within each pair

    const ResolutionNode& node_of_divisor(int div) const {
        return nodes[static_cast<std::size_t>(divisors.at(static_cast<std::size_t>(div)).node)];
    }

    std::vector<int> center_path(int div) const {
        std::vector<int> path;
        for (int n = divisors.at(static_cast<std::size_t>(div)).node; n >= 0;
             n = nodes[static_cast<std::size_t>(n)].parent)
            path.push_back(n);
        std::reverse(path.begin(), path.end());
        return path;
    }
};

namespace detail {

inline const std::vector<std::string>& xy_vars() {
    static const std::vector<std::string> v{"x", "y"};
    return v;
}

// substitution images for the two blowup charts in the parent's coordinates
inline std::vector<MultiPoly> chart_images(const FieldPtr& F, Chart::Kind kind,
                                           const FE& sx = FE(), const FE& sy = FE()) {
    MultiPoly X = MultiPoly::variable(F, xy_vars(), 0);
    MultiPoly Y = MultiPoly::variable(F, xy_vars(), 1);
    switch (kind) {
        case Chart::Kind::blow_a: return {X, X * Y};
        case Chart::Kind::blow_b: return {X * Y, Y};
        case Chart::Kind::shift:
            return {X + MultiPoly::constant(sx, xy_vars()),
                    Y + MultiPoly::constant(sy, xy_vars())};
        case Chart::Kind::root: return {X, Y};
    }
    return {X, Y};
}

inline MultiPoly strip_var(MultiPoly h, std::size_t vi, long* count = nullptr) {
    long n = 0;
    if (!h.is_zero()) {
        std::vector<int> e(h.vars().size(), 0);
        e[vi] = 1;
        MultiPoly v = MultiPoly::monomial(FE::one(h.field()), h.vars(), e);
        MultiPoly q;
        while (h.try_divide(v, &q)) {
            h = q;
            ++n;
        }
    }
    if (count) *count = n;
    return h;
}

inline MultiPoly divide_var_power(const MultiPoly& h, std::size_t vi, long e) {
    if (e == 0) return h;
    std::vector<int> exps(h.vars().size(), 0);
    exps[vi] = static_cast<int>(e);
    MultiPoly q;
    require(h.try_divide(MultiPoly::monomial(FE::one(h.field()), h.vars(), exps), &q),
            errc::internal_error, "transform not divisible by expected power");
    return q;
}

inline bool vanishes_at_origin(const MultiPoly& h) {
    return h.is_zero() || h.constant_term().is_zero();
}

}  // namespace detail

// true when b is a scalar multiple of a (both nonzero)
inline bool proportional(const MultiPoly& a, const MultiPoly& b) {
    FE lambda = FE::zero(a.field());
    auto it = b.terms().find(a.leading_exps());
    if (it != b.terms().end()) lambda = it->second / a.leading_coeff();
    return b == lambda * a;
}

// shift the state so that (a, b) becomes the chart origin
inline PairState translate_to_origin(const PairState& s, const FE& a, const FE& b) {
    const FieldPtr& F = s.f.field();
    std::vector<MultiPoly> images = detail::chart_images(F, Chart::Kind::shift, a, b);
    PairState r;
    r.f = s.f.substitute(images);
    r.g = s.g.substitute(images);
    r.strict_f = s.strict_f.substitute(images);
    r.strict_g = s.strict_g.substitute(images);
    r.sx = s.sx.substitute(images);
    r.sy = s.sy.substitute(images);
    for (const auto& [id, eq] : s.exc) r.exc.emplace(id, eq.substitute(images));
    r.mult = s.mult;
    return r;
}

// the divisors of the state passing through the chart origin
inline std::vector<int> incident_divisors(const PairState& s) {
    std::vector<int> out;
    for (const auto& [id, eq] : s.exc)
        if (detail::vanishes_at_origin(eq)) out.push_back(id);
    return out;
}

// residual map of a dicritical divisor from the initial forms: phi(t) = in_f(1,t)/in_g(1,t)
inline ResidualMap make_residual(const MultiPoly& in_f, const MultiPoly& in_g) {
    const FieldPtr& F = in_f.field();
    FE one = FE::one(F);
    UniPoly num = in_f.eval_var(0, one).to_univariate(1);
    UniPoly den = in_g.eval_var(0, one).to_univariate(1);
    num.set_var("t");
    den.set_var("t");
    UniPoly common = UniPoly::gcd(num, den);
    if (common.deg() > 0) {
        num = num / common;
        den = den / common;
    }
    FE scale = den.lc().inverse();
    num = scale * num;
    den = scale * den;
    ResidualMap r;
    r.num = num;
    r.den = den;
    r.degree = std::max(num.deg(), den.deg());
    if (den.deg() > 0) {
        Roots poles = univariate_roots(den);
        for (const auto& [root, mult] : poles.roots) r.poles.push_back(root);
        r.nonrational_poles = !poles.complete;
    }
    r.pole_at_infinity = num.deg() > den.deg();
    return r;
}

// dicritical test at a center: equal weak orders and non-proportional initial forms
inline std::optional<ResidualMap> detect_dicritical(const PairState& s) {
    int mf = s.f.order_at_origin();
    int mg = s.g.order_at_origin();
    if (mf != mg) return std::nullopt;
    MultiPoly in_f = s.f.initial_form(mf);
    MultiPoly in_g = s.g.initial_form(mg);
    if (proportional(in_f, in_g)) return std::nullopt;
    return make_residual(in_f, in_g);
}

// closed points of the fresh exceptional divisor where both weak transforms
// vanish; finite points are owned by chart A, chart B contributes its origin
inline std::vector<NodeCenter> next_base_points(const PairState& a, const PairState& b) {
    const FieldPtr& F = a.f.field();
    UniPoly rf = a.f.eval_var(0, FE::zero(F)).to_univariate(1);
    UniPoly rg = a.g.eval_var(0, FE::zero(F)).to_univariate(1);
    UniPoly r = rf.is_zero() ? rg : (rg.is_zero() ? rf : UniPoly::gcd(rf, rg));
    require(!r.is_zero(), errc::internal_error, "weak pair vanishes on the divisor");
    std::vector<NodeCenter> out;
    if (r.deg() > 0) {
        Roots roots = univariate_roots(r);
        if (!roots.complete) {
            if (F->kind() == field_kind::rationals)
                raise(errc::non_rational_point,
                      "a base point on the exceptional divisor is irrational; "
                      "rerun over a finite field Fp");
            unsigned d = 0;
            for (const auto& [q, m] : factor_fq(r))
                if (q.deg() > 1 && (d == 0 || static_cast<unsigned>(q.deg()) < d))
                    d = static_cast<unsigned>(q.deg());
            throw extension_request{d};
        }
        for (const auto& [root, mult] : roots.roots) out.push_back({false, root});
    }
    if (detail::vanishes_at_origin(b.f) && detail::vanishes_at_origin(b.g))
        out.push_back({true, FE::zero(F)});
    return out;
}

// optional hook: returns extra (non-base) chart-A parameters to blow up on the
// fresh divisor, for the resolution-invariance probe
using ProbeHook = std::function<std::vector<FE>(const ResolutionTree&, int node_id,
                                                const std::vector<NodeCenter>&)>;

namespace detail {

// state in one blowup chart of a center, given the divided order c and the
// strict orders of the two generator curves
inline PairState child_pair_state(const PairState& s, Chart::Kind kind, long c, long sf_ord,
                                  long sg_ord, int new_div) {
    const FieldPtr& F = s.f.field();
    std::size_t e_var = kind == Chart::Kind::blow_a ? 0 : 1;  // exceptional coordinate
    std::vector<MultiPoly> im = detail::chart_images(F, kind);
    PairState r;
    r.f = detail::divide_var_power(s.f.substitute(im), e_var, c);
    r.g = detail::divide_var_power(s.g.substitute(im), e_var, c);
    r.strict_f = detail::divide_var_power(s.strict_f.substitute(im), e_var, sf_ord);
    r.strict_g = detail::divide_var_power(s.strict_g.substitute(im), e_var, sg_ord);
    r.sx = detail::strip_var(s.sx.substitute(im), e_var);
    r.sy = detail::strip_var(s.sy.substitute(im), e_var);
    for (const auto& [id, eq] : s.exc) {
        MultiPoly strict = detail::strip_var(eq.substitute(im), e_var);
        if (!strict.is_constant()) r.exc.emplace(id, strict);
    }
    r.exc.emplace(new_div, MultiPoly::variable(F, detail::xy_vars(), e_var));
    r.mult = s.mult;
    long inherited = 0;
    for (int e : incident_divisors(s)) inherited += s.mult.at(e);
    r.mult[new_div] = c + inherited;
    return r;
}

class TreeBuilder {
  public:
    TreeBuilder(ResolutionTree& t, int cap, ProbeHook probe)
        : tree(t), cap_(cap), probe_(std::move(probe)) {}

    void run() {
        process(0);
        bool any_dicritical = false;
        for (const auto& d : tree.divisors) any_dicritical |= d.dicritical;
        require(any_dicritical, errc::internal_error,
                "resolution finished with no dicritical divisor");
    }

  private:
    ResolutionTree& tree;
    int cap_;
    ProbeHook probe_;

    void process(int ni) {
        require(static_cast<int>(tree.nodes.size()) <= cap_, errc::cap_exceeded,
                "blowup cap exceeded; this indicates an engine bug");
        ResolutionNode& n0 = tree.nodes[static_cast<std::size_t>(ni)];
        const FieldPtr& F = tree.F;
        PairState& s = n0.state;
        require(!s.f.is_zero() && !s.g.is_zero(), errc::zero_polynomial,
                "weak transform vanished");
        long mf = s.f.order_at_origin();
        long mg = s.g.order_at_origin();
        require(n0.probe || (mf >= 1 && mg >= 1), errc::not_a_base_point,
                "blowup center is not a common zero of the weak transforms");
        n0.m_f = mf;
        n0.m_g = mg;
        n0.s_f = s.strict_f.order_at_origin();
        n0.s_g = s.strict_g.order_at_origin();
        n0.incident = incident_divisors(s);
        if (mf >= 1 && mg >= 1) n0.residual = detect_dicritical(s);

        // divisor valuations from the recursion: weak order plus the divided
        // exponents of incident divisors (same sum for f and g); coordinate
        // valuations use strict orders plus the incident coordinate valuations
        long inherited = 0, ivx = 0, ivy = 0;
        for (int e : n0.incident) {
            inherited += s.mult.at(e);
            ivx += tree.divisors[static_cast<std::size_t>(e)].vx;
            ivy += tree.divisors[static_cast<std::size_t>(e)].vy;
        }
        long sx_ord = s.sx.order_at_origin();
        long sy_ord = s.sy.order_at_origin();
        ExceptionalDivisor div;
        div.id = static_cast<int>(tree.divisors.size());
        div.node = ni;
        div.vx = sx_ord + ivx;
        div.vy = sy_ord + ivy;
        div.vf = mf + inherited;
        div.vg = mg + inherited;
        div.dicritical = n0.residual.has_value();
        tree.divisors.push_back(div);
        n0.divisor = div.id;

        // dual-graph bookkeeping: the new divisor meets the strict transform of
        // every divisor through the center; blowing up a crossing separates it
        if (n0.incident.size() == 2) {
            int a = std::min(n0.incident[0], n0.incident[1]);
            int b = std::max(n0.incident[0], n0.incident[1]);
            auto it = std::find(tree.exc_edges.begin(), tree.exc_edges.end(),
                                std::make_pair(a, b));
            require(it != tree.exc_edges.end(), errc::internal_error,
                    "incident divisors were not adjacent");
            tree.exc_edges.erase(it);
        }
        for (int e : n0.incident)
            tree.exc_edges.emplace_back(std::min(e, div.id), std::max(e, div.id));

        long c = std::min(mf, mg);
        PairState sa = child_pair_state(s, Chart::Kind::blow_a, c, n0.s_f, n0.s_g, div.id);
        PairState sb = child_pair_state(s, Chart::Kind::blow_b, c, n0.s_f, n0.s_g, div.id);
        int chart_a = static_cast<int>(tree.charts.size());
        tree.charts.push_back({Chart::Kind::blow_a, n0.chart, FE::zero(F), FE::zero(F)});
        int chart_b = static_cast<int>(tree.charts.size());
        tree.charts.push_back({Chart::Kind::blow_b, n0.chart, FE::zero(F), FE::zero(F)});
        n0.chart_a = chart_a;
        n0.chart_b = chart_b;

        std::vector<NodeCenter> pts =
            n0.probe ? std::vector<NodeCenter>{} : next_base_points(sa, sb);
        std::vector<std::pair<NodeCenter, bool>> centers;  // (point, is_probe)
        for (const auto& p : pts) centers.emplace_back(p, false);
        if (probe_) {
            for (const FE& t : probe_(tree, ni, pts))
                centers.emplace_back(NodeCenter{false, t}, true);
        }

        for (const auto& [pt, is_probe] : centers) {
            int child_id = static_cast<int>(tree.nodes.size());
            ResolutionNode child;
            child.id = child_id;
            child.parent = ni;
            child.center = pt;
            child.probe = is_probe;
            if (pt.at_infinity) {
                child.chart = chart_b;
                child.state = sb;
            } else if (pt.t.is_zero()) {
                child.chart = chart_a;
                child.state = sa;
            } else {
                child.chart = static_cast<int>(tree.charts.size());
                tree.charts.push_back({Chart::Kind::shift, chart_a, FE::zero(F), pt.t});
                child.state = translate_to_origin(sa, FE::zero(F), pt.t);
            }
            tree.nodes.push_back(std::move(child));
            tree.nodes[static_cast<std::size_t>(ni)].children.push_back(child_id);
            process(child_id);
        }
    }

};

}  // namespace detail

// full principalization of the pair (f, g) at the origin
inline ResolutionTree resolve_local(const MultiPoly& f, const MultiPoly& g,
                                    const FieldPtr& field, int cap = 64,
                                    const ProbeHook& probe = nullptr) {
    require(!f.is_zero() && !g.is_zero(), errc::zero_polynomial,
            "resolve_local requires nonzero generators");
    require(f.field()->same(*field) && g.field()->same(*field), errc::field_mismatch,
            "generators do not live over the stated field");
    require(detail::vanishes_at_origin(f) && detail::vanishes_at_origin(g),
            errc::not_a_base_point, "the origin is not a common zero of (f, g)");
    require(gcd_poly(f, g).is_constant(), errc::not_coprime,
            "generators share a nonconstant factor");
    ResolutionTree tree;
    tree.F = field;
    tree.f0 = f;
    tree.g0 = g;
    tree.charts.push_back({Chart::Kind::root, -1, FE::zero(field), FE::zero(field)});
    ResolutionNode root;
    root.id = 0;
    root.chart = 0;
    root.state.f = f;
    root.state.g = g;
    root.state.strict_f = f;
    root.state.strict_g = g;
    root.state.sx = MultiPoly::variable(field, detail::xy_vars(), 0);
    root.state.sy = MultiPoly::variable(field, detail::xy_vars(), 1);
    tree.nodes.push_back(std::move(root));
    detail::TreeBuilder(tree, cap, probe).run();
    return tree;
}

// v_E(h) by pulling h back through the composed chart substitutions to the
// divisor's birth chart and reading off the exceptional order; the independent
// oracle for the recursion bookkeeping
inline long valuation_of(const ResolutionTree& tree, int divisor_id, const MultiPoly& h) {
    require(!h.is_zero(), errc::zero_polynomial, "valuation of the zero polynomial");
    const ExceptionalDivisor& d = tree.divisors.at(static_cast<std::size_t>(divisor_id));
    const ResolutionNode& birth = tree.nodes[static_cast<std::size_t>(d.node)];
    std::vector<int> chain;
    for (int c = birth.chart_a; c >= 0; c = tree.charts[static_cast<std::size_t>(c)].parent)
        chain.push_back(c);
    std::reverse(chain.begin(), chain.end());
    MultiPoly X = MultiPoly::variable(tree.F, detail::xy_vars(), 0);
    MultiPoly Y = MultiPoly::variable(tree.F, detail::xy_vars(), 1);
    std::vector<MultiPoly> expr{X, Y};  // root coordinates in current-chart terms
    for (int ci : chain) {
        const Chart& ch = tree.charts[static_cast<std::size_t>(ci)];
        if (ch.kind == Chart::Kind::root) continue;
        std::vector<MultiPoly> im = detail::chart_images(tree.F, ch.kind, ch.sx, ch.sy);
        expr[0] = expr[0].substitute(im);
        expr[1] = expr[1].substitute(im);
    }
    MultiPoly pulled = h.substitute(expr);
    long v = 0;
    detail::strip_var(std::move(pulled), 0, &v);
    return v;
}

}  // namespace dicritique
