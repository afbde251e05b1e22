#pragma once

#include "boundary.hpp"
#include "constants.hpp"
#include "geodesy.hpp"
#include "horoball_bounds.hpp"
#include "horoproduct.hpp"
#include "space.hpp"

#include <json.hpp>

#include <string>

namespace horobowtie {

using Json = nlohmann::json;

inline Json ledger_to_json(const ConstantsLedger& l) {
    return Json{{"delta", l.delta.to_fraction_string()},
                {"c_norm", l.c_norm.to_fraction_string()},
                {"c0_log2", l.c0.log2_approx()}};
}

template <class S>
Json lem0_to_json(const S& s, const Lem0Witnesses<S>& w) {
    return Json{{"z", s.serialize(w.z)},
                {"x1", s.serialize(w.x1)},
                {"y1", s.serialize(w.y1)},
                {"hplus_lower", w.hplus_lower}};
}

inline Json ball_to_json(const TreeBall& ball) {
    Json vertices = Json::array();
    for (const auto& v : ball.vertices) vertices.push_back(tree_serialize(v));
    Json edges = Json::array();
    for (int i = 0; i < static_cast<int>(ball.adj.size()); ++i)
        for (int j : ball.adj[i])
            if (i < j) edges.push_back(Json::array({i, j}));
    return Json{{"p", ball.p}, {"radius", ball.radius}, {"vertices", vertices}, {"edges", edges}};
}

inline Json dl_to_json(const DLGraph& g) {
    Json vertices = Json::array();
    for (const auto& v : g.vertices) vertices.push_back(serialize_horo_point(g.space, v));
    Json edges = Json::array();
    for (int i = 0; i < static_cast<int>(g.adj.size()); ++i)
        for (int j : g.adj[i])
            if (i < j) edges.push_back(Json::array({i, j}));
    return Json{{"p", g.p},      {"q", g.q},           {"radius", g.radius},
                {"origin", g.origin}, {"vertices", vertices}, {"edges", edges}};
}

inline Json certificate_to_json(const BoundCertificate& c) {
    return Json{{"kind", bound_kind_name(c.kind)},
                {"lhs", c.lhs.to_fraction_string()},
                {"rhs_log2", (c.rhs.is_negative() || c.rhs.is_zero()) ? 0.0 : c.rhs.log2_approx()},
                {"holds", c.holds},
                {"hypothesis_report", c.hypothesis_report}};
}

}  // namespace horobowtie
