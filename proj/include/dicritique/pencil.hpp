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

#include <set>

#include "blowup.hpp"
#include "ufactor.hpp"

namespace dicritique {

struct Pencil {
    FieldPtr F;
    MultiPoly f, g;    // affine generators in (x, y)
    MultiPoly Fh, Gh;  // homogenizations in (X, Y, Z) to a common degree
    int degree = 0;
};

namespace detail {

inline MultiPoly embed_poly(const MultiPoly& h, const Embedding& em) {
    MultiPoly r = MultiPoly::zero(em.to, h.vars());
    for (const auto& [e, c] : h.terms()) r = r + MultiPoly::monomial(em.map(c), h.vars(), e);
    return r;
}

inline MultiPoly top_form(const MultiPoly& h) {
    int d = h.total_degree();
    MultiPoly r = MultiPoly::zero(h.field(), h.vars());
    for (const auto& [e, c] : h.terms()) {
        int td = 0;
        for (int x : e) td += x;
        if (td == d) r = r + MultiPoly::monomial(c, h.vars(), e);
    }
    return r;
}

// roots must have been found in-field: otherwise report NonRationalPoint over
// the rationals or request a field enlargement over F_q
inline void demand_complete(const Roots& roots, const UniPoly& poly, const FieldPtr& F,
                            const std::string& what) {
    if (roots.complete) return;
    if (F->kind() == field_kind::rationals)
        raise(errc::non_rational_point,
              what + " is irrational over Q; rerun over a finite field Fp");
    unsigned d = 0;
    for (const auto& [q, m] : factor_fq(poly))
        if (q.deg() > 1 && (d == 0 || static_cast<unsigned>(q.deg()) < d))
            d = static_cast<unsigned>(q.deg());
    throw extension_request{d};
}

}  // namespace detail

inline Pencil make_pencil(const MultiPoly& f, const MultiPoly& g) {
    require(!f.is_zero() && !g.is_zero(), errc::zero_polynomial,
            "pencil generators must be nonzero");
    require(!(f.is_constant() && g.is_constant()), errc::both_constant,
            "pencil generators must not both be constant");
    require(gcd_poly(f, g).is_constant(), errc::not_coprime,
            "pencil generators share a nonconstant factor");
    Pencil P;
    P.F = f.field();
    P.f = f;
    P.g = g;
    P.degree = std::max(f.total_degree(), g.total_degree());
    P.Fh = homogenize(f, P.degree);
    P.Gh = homogenize(g, P.degree);
    return P;
}

struct BasePoint {
    std::vector<FE> coords;  // (X : Y : Z), first nonzero coordinate scaled to 1
    int chart = 2;           // index of that coordinate: 0 = X, 1 = Y, 2 = Z
    MultiPoly local_f, local_g;  // localized pair in (x, y), base point at the origin
};

namespace detail {

inline BasePoint localize(const Pencil& P, std::vector<FE> coords) {
    int chart = 0;
    while (coords[static_cast<std::size_t>(chart)].is_zero()) ++chart;
    FE inv = coords[static_cast<std::size_t>(chart)].inverse();
    for (auto& c : coords) c = c * inv;
    BasePoint bp;
    bp.coords = coords;
    bp.chart = chart;
    std::vector<FE> local;
    for (int i = 0; i < 3; ++i)
        if (i != chart) local.push_back(coords[static_cast<std::size_t>(i)]);
    MultiPoly lf = dehomogenize(P.Fh, static_cast<std::size_t>(chart));
    MultiPoly lg = dehomogenize(P.Gh, static_cast<std::size_t>(chart));
    std::vector<MultiPoly> shift = detail::chart_images(P.F, Chart::Kind::shift,
                                                        local[0], local[1]);
    bp.local_f = lf.substitute(shift);
    bp.local_g = lg.substitute(shift);
    return bp;
}

}  // namespace detail

// all common zeros of (Fh, Gh) in P^2, via a sheared resultant in the affine
// chart plus the binary-form gcd on the line at infinity
inline std::vector<BasePoint> base_points(const Pencil& P) {
    const FieldPtr& F = P.F;
    std::vector<std::vector<FE>> found;

    // affine chart Z != 0: shear x -> x + lambda*y until both top forms stay
    // regular, then match resultant roots with fiber gcd roots
    MultiPoly fd = detail::top_form(P.f);
    MultiPoly gd = detail::top_form(P.g);
    bool sheared = false;
    for (long lam = 0; lam <= 16 && !sheared; ++lam) {
        FE l = FE::from_int(F, lam);
        FE one = FE::one(F);
        if (fd.eval({l, one}).is_zero() || gd.eval({l, one}).is_zero()) continue;
        sheared = true;
        MultiPoly X = MultiPoly::variable(F, detail::xy_vars(), 0);
        MultiPoly Y = MultiPoly::variable(F, detail::xy_vars(), 1);
        std::vector<MultiPoly> shear{X + MultiPoly::constant(l, detail::xy_vars()) * Y, Y};
        MultiPoly fs = P.f.substitute(shear);
        MultiPoly gs = P.g.substitute(shear);
        UniPoly res = resultant(fs, gs, "y");
        res.set_var("x");
        if (res.deg() > 0) {
            Roots xr = univariate_roots(res);
            detail::demand_complete(xr, res, F, "a base point coordinate");
            for (const auto& [x0, xm] : xr.roots) {
                UniPoly u1 = fs.eval_var(0, x0).to_univariate(1);
                UniPoly u2 = gs.eval_var(0, x0).to_univariate(1);
                UniPoly h = u1.is_zero() ? u2 : (u2.is_zero() ? u1 : UniPoly::gcd(u1, u2));
                if (h.deg() == 0) continue;  // roots split between the generators
                Roots yr = univariate_roots(h);
                detail::demand_complete(yr, h, F, "a base point coordinate");
                for (const auto& [y0, ym] : yr.roots)
                    found.push_back({x0 + l * y0, y0, FE::one(F)});
            }
        }
    }
    require(sheared, errc::shear_exhausted,
            "no shear in 0..16 kept both top forms regular");

    // line at infinity Z = 0: common zeros of two binary forms
    FE zero = FE::zero(F);
    MultiPoly a = P.Fh.eval_var(2, zero).drop_var(2);
    MultiPoly b = P.Gh.eval_var(2, zero).drop_var(2);
    MultiPoly h = a.is_zero() ? b : (b.is_zero() ? a : gcd_poly(a, b));
    if (!h.is_constant()) {
        long ydiv = 0;
        MultiPoly core = detail::strip_var(h, 1, &ydiv);
        if (ydiv > 0) found.push_back({FE::one(F), zero, zero});
        if (!core.is_constant()) {
            UniPoly u = core.eval_var(1, FE::one(F)).to_univariate(0);
            Roots r = univariate_roots(u);
            detail::demand_complete(r, u, F, "a base point at infinity");
            for (const auto& [x0, m] : r.roots) found.push_back({x0, FE::one(F), zero});
        }
    }

    std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) {
        for (std::size_t i = 0; i < 3; ++i) {
            int c = u[i].cmp(v[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    found.erase(std::unique(found.begin(), found.end(), [](const auto& u, const auto& v) {
                    return u[0] == v[0] && u[1] == v[1] && u[2] == v[2];
                }),
                found.end());
    std::vector<BasePoint> out;
    for (auto& c : found) out.push_back(detail::localize(P, std::move(c)));
    return out;
}

// irreducible (over the coefficient field) component of a projective curve
struct CurveComponent {
    MultiPoly form;       // reduced irreducible form, monic leading coefficient
    int degree = 0;
    bool certified = true;  // false when irreducibility could not be certified
};

namespace detail {

// certificate: irreducible over Q if some good-reduction image mod p is
// irreducible of the same degree
inline bool irreducible_over_q(const UniPoly& u) {
    if (u.deg() <= 1) return true;
    Roots r = univariate_roots(u);
    if (!r.roots.empty()) return false;
    if (u.deg() <= 3) return true;  // no linear factor forces irreducibility
    mpz_class den = 1;
    for (const FE& c : u.coeffs()) den = lcm(den, c.rational().get_den());
    std::vector<mpz_class> zc;
    for (const FE& c : u.coeffs()) zc.push_back(mpz_class(c.rational() * den));
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (mpz_class(zc.back() % p) == 0) continue;
        FieldPtr Fp = Field::prime(p);
        std::vector<FE> red;
        for (const auto& z : zc) red.push_back(FE::from_mpz(Fp, z));
        UniPoly up(Fp, std::move(red), "t");
        auto fac = factor_fq(up);
        if (fac.size() == 1 && fac[0].second == 1) return true;
    }
    return false;
}

inline bool irreducible_univariate(const UniPoly& u) {
    if (u.field()->kind() == field_kind::rationals) return irreducible_over_q(u);
    auto fac = factor_fq(u);
    return fac.size() == 1 && fac[0].second == 1;
}

// certificate for a form in >= 3 effective variables: a line restriction of
// full degree that is irreducible forces the form to be irreducible
inline bool irreducible_by_lines(const MultiPoly& R) {
    rng64 rng(0xd1c7000fULL + static_cast<std::uint64_t>(R.total_degree()));
    const FieldPtr& F = R.field();
    std::vector<std::string> tv{"t"};
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<MultiPoly> line;
        for (std::size_t i = 0; i < R.vars().size(); ++i) {
            FE a0, a1;
            if (F->kind() == field_kind::rationals) {
                a0 = FE::from_int(F, static_cast<long>(rng.below(19)) - 9);
                a1 = FE::from_int(F, static_cast<long>(rng.below(19)) - 9);
            } else {
                std::uint64_t q = 50;
                if (F->cardinality() < 50) q = F->cardinality().get_ui();
                a0 = fe_from_index(F, rng.below(q));
                a1 = fe_from_index(F, rng.below(q));
            }
            line.push_back(MultiPoly::constant(a0, tv) +
                           MultiPoly::constant(a1, tv) * MultiPoly::variable(F, tv, 0));
        }
        MultiPoly restricted = R.substitute(line);
        if (restricted.is_zero() || restricted.total_degree() != R.total_degree()) continue;
        if (irreducible_univariate(restricted.to_univariate(0))) return true;
    }
    return false;
}

inline MultiPoly binary_from_univariate(const UniPoly& u, const MultiPoly& A,
                                        const MultiPoly& B, int deg) {
    // u(t) -> homogeneous A,B-form of the given degree
    MultiPoly r = MultiPoly::zero(A.field(), A.vars());
    for (int i = 0; i <= u.deg(); ++i) {
        if (u.coeff(i).is_zero()) continue;
        MultiPoly term = MultiPoly::constant(u.coeff(i), A.vars());
        for (int k = 0; k < i; ++k) term = term * A;
        for (int k = 0; k < deg - i; ++k) term = term * B;
        r = r + term;
    }
    return r;
}

inline std::vector<CurveComponent> split_form(const MultiPoly& H) {
    std::vector<CurveComponent> out;
    MultiPoly R = radical_poly(H);
    for (std::size_t vi = 0; vi < R.vars().size(); ++vi) {
        long n = 0;
        R = strip_var(R, vi, &n);
        if (n > 0)
            out.push_back({MultiPoly::variable(R.field(), R.vars(), vi), 1, true});
    }
    if (R.is_constant()) return out;
    std::vector<std::size_t> eff;
    for (std::size_t vi = 0; vi < R.vars().size(); ++vi)
        if (R.degree_in(vi) > 0) eff.push_back(vi);
    if (eff.size() == 2) {
        MultiPoly A = MultiPoly::variable(R.field(), R.vars(), eff[0]);
        MultiPoly B = MultiPoly::variable(R.field(), R.vars(), eff[1]);
        UniPoly u = R.eval_var(eff[1], FE::one(R.field())).to_univariate(eff[0]);
        if (R.field()->kind() != field_kind::rationals) {
            for (const auto& [q, m] : factor_fq(u))
                out.push_back({binary_from_univariate(q, A, B, q.deg()).monic(),
                               q.deg(), true});
        } else {
            Roots roots = univariate_roots(u);
            UniPoly rest = u;
            for (const auto& [r, m] : roots.roots)
                for (int k = 0; k < m; ++k) rest = rest.deflate(r);
            for (const auto& [r, m] : roots.roots) {
                UniPoly lin = UniPoly::variable(R.field(), "t") - UniPoly::constant(r, "t");
                out.push_back({binary_from_univariate(lin, A, B, 1).monic(), 1, true});
            }
            if (rest.deg() > 0)
                out.push_back({binary_from_univariate(rest, A, B, rest.deg()).monic(),
                               rest.deg(), irreducible_over_q(rest.monic())});
        }
    } else {
        out.push_back({R.monic(), R.total_degree(), irreducible_by_lines(R)});
    }
    std::sort(out.begin(), out.end(), [](const CurveComponent& a, const CurveComponent& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.form.str() < b.form.str();
    });
    return out;
}

}  // namespace detail

struct DicriticalRecord {
    int base_point = -1;  // index into the base point list
    int tree = -1;        // same index (one tree per base point)
    int divisor = -1;     // divisor id within the tree
    int global_id = -1;   // id in the cross-tree divisor enumeration
    long vx = 0, vy = 0, vf = 0, vg = 0;
    ResidualMap residual;
    std::vector<int> center_path;  // node ids from the tree root to the birth node
};

struct GraphNode {
    bool is_curve = false;
    std::string name;       // "E<k>" or "Cf<k>" / "Cg<k>"
    int tree = -1, divisor = -1;  // exceptional nodes
    bool dicritical = false;
    MultiPoly form;  // curve nodes
    int degree = 0;
    bool certified = true;
    long vf = 0, vg = 0;
};

struct Graph {
    std::vector<GraphNode> nodes;
    std::vector<std::pair<int, int>> edges;  // indices into nodes, a < b

    void add_edge(int a, int b) {
        if (a == b) return;
        auto e = std::make_pair(std::min(a, b), std::max(a, b));
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }

    bool connected() const {
        if (nodes.empty()) return true;
        std::vector<char> seen(nodes.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [a, b] : edges) {
                int w = a == v ? b : (b == v ? a : -1);
                if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (char s : seen)
            if (!s) return false;
        return true;
    }
};

namespace detail {

// ---- incidence of a strict-transform curve with the exceptional divisors ----
//
// Walk the already-built tree carrying the strict transform of h. On each new
// divisor, points where the strict transform meets it are either further
// centers (handled one level down) or permanent intersections on the resolved
// surface. Crossing points inherited by old divisors are checked alongside.

struct CurveWalk {
    const ResolutionTree& tree;
    std::set<int> meets;  // divisor ids

    void run(const MultiPoly& h0) {
        if (!vanishes_at_origin(h0)) return;
        rec(0, h0);
    }

    void rec(int ni, const MultiPoly& h) {
        const ResolutionNode& n = tree.nodes[static_cast<std::size_t>(ni)];
        const FieldPtr& F = tree.F;
        auto imA = chart_images(F, Chart::Kind::blow_a);
        auto imB = chart_images(F, Chart::Kind::blow_b);
        MultiPoly hA = strip_var(h.substitute(imA), 0);
        MultiPoly hB = strip_var(h.substitute(imB), 1);
        std::map<int, MultiPoly> excA, excB;
        for (const auto& [e, eq] : n.state.exc) {
            MultiPoly sA = strip_var(eq.substitute(imA), 0);
            MultiPoly sB = strip_var(eq.substitute(imB), 1);
            if (!sA.is_constant()) excA.emplace(e, sA);
            if (!sB.is_constant()) excB.emplace(e, sB);
        }

        // chart A: finite points of the new divisor on the strict transform
        UniPoly rA = hA.eval_var(0, FE::zero(F)).to_univariate(1);
        if (rA.deg() > 0) {
            Roots roots = univariate_roots(rA);
            if (!roots.complete) meets.insert(n.divisor);  // irrational, never a center
            for (const auto& [t0, m] : roots.roots) {
                int child = find_child(n, false, t0);
                if (child >= 0) {
                    MultiPoly hc = translate_curve(hA, t0);
                    rec(child, hc);
                } else {
                    meets.insert(n.divisor);
                    for (const auto& [e, eq] : excA)
                        if (eq.eval({FE::zero(F), t0}).is_zero()) meets.insert(e);
                }
            }
        }
        // chart B: the point of the new divisor at infinity
        if (vanishes_at_origin(hB)) {
            int child = find_child(n, true, FE::zero(F));
            if (child >= 0) {
                rec(child, hB);
            } else {
                meets.insert(n.divisor);
                for (const auto& [e, eq] : excB)
                    if (vanishes_at_origin(eq)) meets.insert(e);
            }
        }
    }

    int find_child(const ResolutionNode& n, bool at_inf, const FE& t) const {
        for (int c : n.children) {
            const ResolutionNode& ch = tree.nodes[static_cast<std::size_t>(c)];
            if (ch.probe) continue;
            if (ch.center.at_infinity == at_inf && (at_inf || ch.center.t == t)) return c;
        }
        return -1;
    }

    MultiPoly translate_curve(const MultiPoly& hA, const FE& t0) const {
        auto sh = chart_images(tree.F, Chart::Kind::shift, FE::zero(tree.F), t0);
        return hA.substitute(sh);
    }
};

// do the strict transforms of two curves through the base point still share a
// point on the resolved surface?
struct PairWalk {
    const ResolutionTree& tree;

    bool run(const MultiPoly& a0, const MultiPoly& b0) {
        if (!vanishes_at_origin(a0) || !vanishes_at_origin(b0)) return false;
        return rec(0, a0, b0);
    }

    bool rec(int ni, const MultiPoly& a, const MultiPoly& b) {
        const ResolutionNode& n = tree.nodes[static_cast<std::size_t>(ni)];
        const FieldPtr& F = tree.F;
        auto imA = chart_images(F, Chart::Kind::blow_a);
        auto imB = chart_images(F, Chart::Kind::blow_b);
        MultiPoly aA = strip_var(a.substitute(imA), 0);
        MultiPoly bA = strip_var(b.substitute(imA), 0);
        MultiPoly aB = strip_var(a.substitute(imB), 1);
        MultiPoly bB = strip_var(b.substitute(imB), 1);

        UniPoly ra = aA.eval_var(0, FE::zero(F)).to_univariate(1);
        UniPoly rb = bA.eval_var(0, FE::zero(F)).to_univariate(1);
        if (ra.deg() > 0 || rb.deg() > 0) {
            UniPoly h = ra.is_zero() ? rb : (rb.is_zero() ? ra : UniPoly::gcd(ra, rb));
            if (h.deg() > 0) {
                Roots roots = univariate_roots(h);
                if (!roots.complete) return true;  // irrational common point persists
                for (const auto& [t0, m] : roots.roots) {
                    CurveWalk cw{tree, {}};
                    int child = cw.find_child(n, false, t0);
                    if (child < 0) return true;
                    auto sh = chart_images(F, Chart::Kind::shift, FE::zero(F), t0);
                    if (rec(child, aA.substitute(sh), bA.substitute(sh))) return true;
                }
            }
        }
        if (vanishes_at_origin(aB) && vanishes_at_origin(bB)) {
            CurveWalk cw{tree, {}};
            int child = cw.find_child(n, true, FE::zero(F));
            if (child < 0) return true;
            if (rec(child, aB, bB)) return true;
        }
        return false;
    }
};

}  // namespace detail

// Noether sum over the nodes of an already-built tree: the local intersection
// number of the generator pair at the tree's base point
inline long noether_sum(const ResolutionTree& tree) {
    long total = 0;
    for (const auto& n : tree.nodes)
        if (!n.probe) total += n.s_f * n.s_g;
    return total;
}

struct ALDicriticalCheck {
    int record = -1;        // index into the dicritical list
    int distinct_poles = 0;
    bool skipped = false;   // pole set not rational over the ground field
    bool single_pole = false;
    std::string witness;    // phi after the coordinate change sending the pole to infinity
};

struct ALReport {
    bool applicable = false;  // C_red smooth at every base point
    std::vector<std::pair<int, bool>> smooth_at;  // base point index -> smooth?
    std::vector<ALDicriticalCheck> checks;
    bool fiber_connected = false;
    bool pass = false;  // applicable implies all checks succeed and fiber connected
};

struct Analysis {
    Pencil pencil;
    std::vector<BasePoint> bps;
    std::vector<ResolutionTree> trees;
    std::vector<DicriticalRecord> dicriticals;
    std::vector<CurveComponent> f_components, g_components;
    Graph dual, fiber;
    bool fiber_connected = false;
    ALReport al;
    int cap = 64;
    unsigned extension_steps = 0;  // times the ground field had to be enlarged
};

namespace detail {

inline MultiPoly localize_form(const Pencil& P, const BasePoint& bp, const MultiPoly& form) {
    MultiPoly lf = dehomogenize(form, static_cast<std::size_t>(bp.chart));
    std::vector<FE> local;
    for (int i = 0; i < 3; ++i)
        if (i != bp.chart) local.push_back(bp.coords[static_cast<std::size_t>(i)]);
    return lf.substitute(chart_images(P.F, Chart::Kind::shift, local[0], local[1]));
}

// local intersection number of two coprime curves at a common point, via a
// dedicated local resolution
inline long intersection_at(const Pencil& P, const BasePoint& bp, const MultiPoly& h1,
                            const MultiPoly& h2, int cap) {
    MultiPoly a = localize_form(P, bp, h1);
    MultiPoly b = localize_form(P, bp, h2);
    if (!vanishes_at_origin(a) || !vanishes_at_origin(b)) return 0;
    return noether_sum(resolve_local(a, b, P.F, cap));
}

inline Analysis analyze_once(const Pencil& P, int cap) {
    Analysis A;
    A.pencil = P;
    A.cap = cap;
    A.bps = base_points(P);
    for (const auto& bp : A.bps)
        A.trees.push_back(resolve_local(bp.local_f, bp.local_g, P.F, cap));

    // global divisor enumeration and dicritical records
    std::vector<int> offset(A.trees.size(), 0);
    int total_divs = 0;
    for (std::size_t t = 0; t < A.trees.size(); ++t) {
        offset[t] = total_divs;
        total_divs += static_cast<int>(A.trees[t].divisors.size());
    }
    for (std::size_t t = 0; t < A.trees.size(); ++t) {
        for (const auto& d : A.trees[t].divisors) {
            if (!d.dicritical) continue;
            DicriticalRecord r;
            r.base_point = static_cast<int>(t);
            r.tree = static_cast<int>(t);
            r.divisor = d.id;
            r.global_id = offset[t] + d.id;
            r.vx = d.vx;
            r.vy = d.vy;
            r.vf = d.vf;
            r.vg = d.vg;
            r.residual = *A.trees[t].nodes[static_cast<std::size_t>(d.node)].residual;
            r.center_path = A.trees[t].center_path(d.id);
            A.dicriticals.push_back(r);
        }
    }

    A.f_components = split_form(P.Fh);
    A.g_components = split_form(P.Gh);

    // ---- dual graph ----
    Graph& G = A.dual;
    std::map<std::pair<int, int>, int> exc_index;  // (tree, divisor) -> node
    for (std::size_t t = 0; t < A.trees.size(); ++t) {
        for (const auto& d : A.trees[t].divisors) {
            GraphNode n;
            n.is_curve = false;
            n.name = "E" + std::to_string(offset[t] + d.id);
            n.tree = static_cast<int>(t);
            n.divisor = d.id;
            n.dicritical = d.dicritical;
            n.vf = d.vf;
            n.vg = d.vg;
            exc_index[{static_cast<int>(t), d.id}] = static_cast<int>(G.nodes.size());
            G.nodes.push_back(n);
        }
    }
    std::vector<int> curve_index;  // component order: f-components then g-components
    std::vector<const CurveComponent*> comps;
    for (std::size_t i = 0; i < A.f_components.size(); ++i) {
        GraphNode n;
        n.is_curve = true;
        n.name = "Cf" + std::to_string(i);
        n.form = A.f_components[i].form;
        n.degree = A.f_components[i].degree;
        n.certified = A.f_components[i].certified;
        curve_index.push_back(static_cast<int>(G.nodes.size()));
        comps.push_back(&A.f_components[i]);
        G.nodes.push_back(n);
    }
    for (std::size_t i = 0; i < A.g_components.size(); ++i) {
        GraphNode n;
        n.is_curve = true;
        n.name = "Cg" + std::to_string(i);
        n.form = A.g_components[i].form;
        n.degree = A.g_components[i].degree;
        n.certified = A.g_components[i].certified;
        curve_index.push_back(static_cast<int>(G.nodes.size()));
        comps.push_back(&A.g_components[i]);
        G.nodes.push_back(n);
    }
    for (std::size_t t = 0; t < A.trees.size(); ++t)
        for (auto [a, b] : A.trees[t].exc_edges)
            G.add_edge(exc_index[{static_cast<int>(t), a}], exc_index[{static_cast<int>(t), b}]);
    // curve to exceptional: strict-transform incidence per tree
    for (std::size_t t = 0; t < A.trees.size(); ++t) {
        for (std::size_t c = 0; c < comps.size(); ++c) {
            MultiPoly local = localize_form(P, A.bps[t], comps[c]->form);
            CurveWalk cw{A.trees[t], {}};
            cw.run(local);
            for (int d : cw.meets)
                G.add_edge(curve_index[c], exc_index[{static_cast<int>(t), d}]);
        }
    }
    // curve to curve: a Bezout deficit means a meeting away from the base
    // locus; otherwise the strict transforms must still share a point above one
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
            const MultiPoly& H1 = comps[i]->form;
            const MultiPoly& H2 = comps[j]->form;
            if (H1 == H2) continue;
            long at_base = 0;
            bool meet = false;
            for (std::size_t t = 0; t < A.bps.size() && !meet; ++t)
                at_base += intersection_at(P, A.bps[t], H1, H2, cap);
            if (static_cast<long>(comps[i]->degree) * comps[j]->degree > at_base) meet = true;
            for (std::size_t t = 0; t < A.bps.size() && !meet; ++t) {
                PairWalk pw{A.trees[t]};
                meet = pw.run(localize_form(P, A.bps[t], H1), localize_form(P, A.bps[t], H2));
            }
            if (meet) G.add_edge(curve_index[i], curve_index[j]);
        }
    }

    // ---- fiber graph over O = (1:0): the divisor {G = 0} ----
    Graph& FG = A.fiber;
    std::map<int, int> fiber_of_dual;  // dual node index -> fiber node index
    for (std::size_t n = 0; n < G.nodes.size(); ++n) {
        const GraphNode& nd = G.nodes[n];
        bool in_fiber = nd.is_curve ? (nd.name[1] == 'g') : (nd.vf < nd.vg);
        if (!in_fiber) continue;
        fiber_of_dual[static_cast<int>(n)] = static_cast<int>(FG.nodes.size());
        FG.nodes.push_back(nd);
    }
    for (auto [a, b] : G.edges) {
        auto ia = fiber_of_dual.find(a);
        auto ib = fiber_of_dual.find(b);
        if (ia != fiber_of_dual.end() && ib != fiber_of_dual.end())
            FG.add_edge(ia->second, ib->second);
    }
    // components of C_red meet somewhere in P^2 whenever their resultant is
    // nonzero, which coprimality guarantees; recorded coordinate-free
    std::vector<int> gnodes;
    for (std::size_t n = 0; n < FG.nodes.size(); ++n)
        if (FG.nodes[n].is_curve) gnodes.push_back(static_cast<int>(n));
    for (std::size_t i = 0; i < gnodes.size(); ++i)
        for (std::size_t j = i + 1; j < gnodes.size(); ++j)
            FG.add_edge(gnodes[i], gnodes[j]);
    A.fiber_connected = FG.connected();

    // ---- Abhyankar-Luengo diagnostics ----
    ALReport& al = A.al;
    MultiPoly gred = radical_poly(P.Gh);
    al.applicable = true;
    for (std::size_t t = 0; t < A.bps.size(); ++t) {
        bool smooth = false;
        std::vector<FE> pt = A.bps[t].coords;
        for (std::size_t vi = 0; vi < 3 && !smooth; ++vi)
            smooth = !gred.derivative(vi).eval(pt).is_zero();
        al.smooth_at.emplace_back(static_cast<int>(t), smooth);
        al.applicable = al.applicable && smooth;
    }
    bool all_single = true;
    for (std::size_t r = 0; r < A.dicriticals.size(); ++r) {
        const ResidualMap& phi = A.dicriticals[r].residual;
        ALDicriticalCheck chk;
        chk.record = static_cast<int>(r);
        chk.distinct_poles = phi.distinct_pole_count();
        if (phi.nonrational_poles) {
            chk.skipped = true;
        } else {
            chk.single_pole = chk.distinct_poles == 1;
            if (chk.single_pole) {
                // move the unique pole to infinity: u = 1/(t - a), or identity
                // when the pole is already at infinity
                UniPoly w = phi.num;
                if (!phi.poles.empty()) {
                    FE a = phi.poles.front();
                    UniPoly ns = phi.num.shifted(a);
                    int m = phi.den.deg();
                    std::vector<FE> wc(static_cast<std::size_t>(m) + 1, FE::zero(P.F));
                    for (int i = 0; i <= ns.deg(); ++i)
                        wc[static_cast<std::size_t>(m - i)] = ns.coeff(i);
                    w = UniPoly(P.F, std::move(wc), "u");
                }
                chk.witness = w.str();
            }
            all_single = all_single && chk.single_pole;
        }
        al.checks.push_back(chk);
    }
    al.fiber_connected = A.fiber_connected;
    al.pass = !al.applicable || (all_single && al.fiber_connected);
    return A;
}

}  // namespace detail

// full pencil analysis; over F_p the ground field is enlarged on demand when a
// base point or an infinitely near point lives in a proper extension
inline Analysis analyze(const Pencil& P0, int cap = 64) {
    Pencil P = P0;
    unsigned steps = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            Analysis A = detail::analyze_once(P, cap);
            A.extension_steps = steps;
            return A;
        } catch (const extension_request& ex) {
            require(P.F->kind() != field_kind::rationals, errc::internal_error,
                    "extension request over the rationals");
            std::uint64_t p = P.F->characteristic();
            unsigned k = P.F->ext_degree() * std::max(2u, ex.degree_factor);
            FieldPtr nf = Field::extension(p, find_irreducible_modulus(p, k));
            Embedding em = make_embedding(P.F, nf);
            P = make_pencil(detail::embed_poly(P.f, em), detail::embed_poly(P.g, em));
            ++steps;
        }
    }
    raise(errc::internal_error, "field extension ladder did not stabilize");
}

inline const Graph& fiber_over_O(const Analysis& A) { return A.fiber; }

inline const ALReport& check_abhyankar_luengo(const Analysis& A) { return A.al; }

}  // namespace dicritique
