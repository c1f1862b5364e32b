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

#include <sstream>

#include <json.hpp>

#include "pencil.hpp"

namespace dicritique {

using ordered_json = nlohmann::ordered_json;

inline const char* report_version() { return "dicritique-report/1"; }

namespace detail {

inline ordered_json residual_json(const ResidualMap& r) {
    ordered_json j;
    j["num"] = r.num.str();
    j["den"] = r.den.str();
    j["degree"] = r.degree;
    ordered_json poles = ordered_json::array();
    for (const FE& p : r.poles) poles.push_back(p.str());
    j["poles"] = poles;
    j["pole_at_infinity"] = r.pole_at_infinity;
    j["nonrational_poles"] = r.nonrational_poles;
    j["distinct_pole_count"] = r.distinct_pole_count();
    return j;
}

inline ordered_json tree_json(const ResolutionTree& t) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : t.nodes) {
        ordered_json j;
        j["id"] = n.id;
        j["parent"] = n.parent;
        if (n.parent >= 0) {
            ordered_json c;
            c["at_infinity"] = n.center.at_infinity;
            c["t"] = n.center.at_infinity ? "inf" : n.center.t.str();
            j["center"] = c;
        } else {
            j["center"] = nullptr;
        }
        j["probe"] = n.probe;
        j["chart"] = t.charts[static_cast<std::size_t>(n.chart)].subst_str();
        j["m_f"] = n.m_f;
        j["m_g"] = n.m_g;
        j["s_f"] = n.s_f;
        j["s_g"] = n.s_g;
        j["incident"] = n.incident;
        const ExceptionalDivisor& d = t.divisors[static_cast<std::size_t>(n.divisor)];
        ordered_json dj;
        dj["id"] = d.id;
        dj["v_x"] = d.vx;
        dj["v_y"] = d.vy;
        dj["v_f"] = d.vf;
        dj["v_g"] = d.vg;
        dj["dicritical"] = d.dicritical;
        j["divisor"] = dj;
        if (n.residual)
            j["residual"] = residual_json(*n.residual);
        else
            j["residual"] = nullptr;
        j["children"] = n.children;
        nodes.push_back(j);
    }
    ordered_json j;
    j["f"] = t.f0.str();
    j["g"] = t.g0.str();
    j["nodes"] = nodes;
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : t.exc_edges) edges.push_back(ordered_json::array({a, b}));
    j["exceptional_edges"] = edges;
    return j;
}

inline ordered_json graph_json(const Graph& g) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : g.nodes) {
        ordered_json j;
        j["name"] = n.name;
        j["kind"] = n.is_curve ? "curve" : "exceptional";
        if (n.is_curve) {
            j["form"] = n.form.str();
            j["degree"] = n.degree;
            j["certified"] = n.certified;
        } else {
            j["tree"] = n.tree;
            j["divisor"] = n.divisor;
            j["dicritical"] = n.dicritical;
            j["v_f"] = n.vf;
            j["v_g"] = n.vg;
        }
        nodes.push_back(j);
    }
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : g.edges)
        edges.push_back(ordered_json::array({g.nodes[static_cast<std::size_t>(a)].name,
                                             g.nodes[static_cast<std::size_t>(b)].name}));
    ordered_json j;
    j["nodes"] = nodes;
    j["edges"] = edges;
    return j;
}

}  // namespace detail

inline ordered_json analysis_json(const Analysis& A) {
    ordered_json j;
    j["version"] = report_version();
    j["field"] = A.pencil.F->name();
    ordered_json pj;
    pj["f"] = A.pencil.f.str();
    pj["g"] = A.pencil.g.str();
    pj["F"] = A.pencil.Fh.str();
    pj["G"] = A.pencil.Gh.str();
    pj["degree"] = A.pencil.degree;
    j["pencil"] = pj;
    j["extension_steps"] = A.extension_steps;
    j["cap"] = A.cap;

    static const char* chart_names[3] = {"X", "Y", "Z"};
    ordered_json bps = ordered_json::array();
    for (const auto& bp : A.bps) {
        ordered_json b;
        ordered_json coords = ordered_json::array();
        for (const FE& c : bp.coords) coords.push_back(c.str());
        b["coords"] = coords;
        b["chart"] = chart_names[bp.chart];
        b["local_f"] = bp.local_f.str();
        b["local_g"] = bp.local_g.str();
        bps.push_back(b);
    }
    j["base_points"] = bps;

    ordered_json trees = ordered_json::array();
    for (std::size_t t = 0; t < A.trees.size(); ++t) {
        ordered_json tj = detail::tree_json(A.trees[t]);
        tj["base_point"] = static_cast<int>(t);
        trees.push_back(tj);
    }
    j["trees"] = trees;

    ordered_json dic = ordered_json::array();
    for (const auto& r : A.dicriticals) {
        ordered_json d;
        d["base_point"] = r.base_point;
        d["divisor"] = "E" + std::to_string(r.global_id);
        d["tree_divisor"] = r.divisor;
        d["v_x"] = r.vx;
        d["v_y"] = r.vy;
        d["v_f"] = r.vf;
        d["v_g"] = r.vg;
        d["residual"] = detail::residual_json(r.residual);
        d["center_path"] = r.center_path;
        dic.push_back(d);
    }
    j["dicriticals"] = dic;

    j["dual_graph"] = detail::graph_json(A.dual);
    ordered_json fg = detail::graph_json(A.fiber);
    fg["connected"] = A.fiber_connected;
    j["fiber_graph"] = fg;

    ordered_json al;
    al["applicable"] = A.al.applicable;
    ordered_json sm = ordered_json::array();
    for (auto [bp, smooth] : A.al.smooth_at) {
        ordered_json s;
        s["base_point"] = bp;
        s["smooth"] = smooth;
        sm.push_back(s);
    }
    al["smooth_at_base_points"] = sm;
    ordered_json checks = ordered_json::array();
    for (const auto& c : A.al.checks) {
        ordered_json cj;
        cj["dicritical"] = c.record;
        cj["distinct_poles"] = c.distinct_poles;
        cj["skipped"] = c.skipped;
        cj["single_pole"] = c.single_pole;
        cj["polynomial_witness"] = c.witness;
        checks.push_back(cj);
    }
    al["checks"] = checks;
    al["fiber_connected"] = A.al.fiber_connected;
    al["pass"] = A.al.pass;
    j["abhyankar_luengo"] = al;
    return j;
}

// Graphviz rendering: exceptional divisors circled, dicritical ones
// double-circled, strict-transform curve components boxed
inline std::string graph_dot(const Graph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (const auto& n : g.nodes) {
        os << "  \"" << n.name << "\" [shape=";
        if (n.is_curve)
            os << "box, label=\"" << n.name << "\\n" << n.form.str() << "\"";
        else if (n.dicritical)
            os << "doublecircle, label=\"" << n.name << "\\nvf=" << n.vf << " vg=" << n.vg
               << "\"";
        else
            os << "circle, label=\"" << n.name << "\\nvf=" << n.vf << " vg=" << n.vg << "\"";
        os << "];\n";
    }
    for (auto [a, b] : g.edges)
        os << "  \"" << g.nodes[static_cast<std::size_t>(a)].name << "\" -- \""
           << g.nodes[static_cast<std::size_t>(b)].name << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace dicritique
