#pragma once

#include "horoproduct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace horobowtie {

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PathStats {
    double length = 0.0;
    double h_plus = 0.0, h_minus = 0.0;
    std::size_t argmax = 0, argmin = 0;  // smallest index on ties
};

template <class P, class Q>
PathStats path_stats(const HoroSpace<P, Q>& s, const std::vector<HoroPoint<P, Q>>& path) {
    if (path.empty()) throw std::invalid_argument("path_stats: empty path");
    PathStats st;
    st.length = path_nlength(s, path);
    st.h_plus = st.h_minus = s.height(path[0]);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double h = s.height(path[i]);
        if (h > st.h_plus) {
            st.h_plus = h;
            st.argmax = i;
        }
        if (h < st.h_minus) {
            st.h_minus = h;
            st.argmin = i;
        }
    }
    return st;
}

enum class Trend { inc, dec };

struct MonotoneSegment {
    std::size_t begin = 0, end = 0;  // inclusive indices
    Trend label = Trend::inc;
};

/// Greedy left-to-right partition into maximal C-coarsely monotone segments.
/// A range is C-coarsely increasing when the height never drops by more than
/// C along it (decreasing: never rises by more than C); a zigzag of
/// amplitude <= C therefore stays one segment. Dropping below the running
/// extreme by more than C is the only way to violate this, so each extension
/// needs one comparison; the comparison against C is exact, so ledger-scale
/// C never overflows.
inline std::vector<MonotoneSegment> monotone_decomposition(const std::vector<double>& heights,
                                                           const BigScalar& C) {
    if (C.is_negative()) throw std::invalid_argument("monotone_decomposition: C must be >= 0");
    const bool zero = C.is_zero();
    auto exceeds = [&](double move) {
        if (move <= 0.0) return false;
        if (zero) return true;
        return BigScalar::from_double(move) > C;
    };
    std::vector<MonotoneSegment> segs;
    if (heights.empty()) return segs;
    std::size_t b = 0;
    while (b + 1 < heights.size()) {
        std::size_t best_end = b;
        Trend best_label = Trend::inc;
        for (Trend label : {Trend::inc, Trend::dec}) {
            std::size_t e = b;
            double extreme = heights[b];  // running max for inc, min for dec
            while (e + 1 < heights.size()) {
                const double next = heights[e + 1];
                if (exceeds(label == Trend::inc ? extreme - next : next - extreme)) break;
                extreme = label == Trend::inc ? std::max(extreme, next) : std::min(extreme, next);
                ++e;
            }
            if (e > best_end || (e == best_end && segs.empty() && label == Trend::inc)) {
                best_end = e;
                best_label = label;
            }
        }
        if (best_end == b) best_end = b + 1;  // never stall
        segs.push_back(MonotoneSegment{b, best_end, best_label});
        b = best_end;
    }
    if (segs.empty()) segs.push_back(MonotoneSegment{0, 0, Trend::inc});
    return segs;
}

inline std::string pattern_string(const std::vector<MonotoneSegment>& segs) {
    std::string s;
    for (const auto& seg : segs) {
        if (!s.empty()) s += ",";
        s += seg.label == Trend::inc ? "inc" : "dec";
    }
    return s;
}

/// Distance from a product point to the height-parametrized line
/// (V_{p_anchor}(t), V_{q_anchor}(-t)); exact on integer heights for trees,
/// 1e-3 height grid for continuous components.
template <class P, class Q>
double product_vertical_distance(const HoroSpace<P, Q>& s, const HoroPoint<P, Q>& pt,
                                 const typename P::Point& p_anchor, const typename Q::Point& q_anchor) {
    auto at = [&](double t) {
        return s.norm(s.left.distance(pt.p_part, s.left.vertical_point(p_anchor, t)),
                      s.right.distance(pt.q_part, s.right.vertical_point(q_anchor, -t)));
    };
    const double h0 = s.left.height(pt.p_part);
    double best = at(s.left.discrete() && s.right.discrete() ? std::llround(h0) : h0);
    // N(a,b) >= (a+b)/2 >= |t - h(pt)|, so the minimizer lies within best of h0.
    if (s.left.discrete() && s.right.discrete()) {
        const long long c = std::llround(h0);
        const long long w = static_cast<long long>(std::ceil(best)) + 1;
        for (long long t = c - w; t <= c + w; ++t) best = std::min(best, at(static_cast<double>(t)));
        return best;
    }
    const double w = best + 1e-3;
    for (double t = h0 - w; t <= h0 + w; t += 1e-3) best = std::min(best, at(t));
    return best;
}

struct HeightBoundReport {
    double dev_minus = 0.0, dev_plus = 0.0;
    bool certified_minus = false, certified_plus = false;  // vs 4*C0 via the ledger
};

/// Measures |h- - (h(x) - dr(x_q,y_q)/2)| and |h+ - (h(y) + dr(x_p,y_p)/2)|
/// with orientation h(x) <= h(y). For a DL geodesic both deviations are 0.
template <class P, class Q>
HeightBoundReport verify_height_bounds(const HoroSpace<P, Q>& s,
                                       const std::vector<HoroPoint<P, Q>>& path, HoroPoint<P, Q> x,
                                       HoroPoint<P, Q> y) {
    if (path.empty()) throw std::invalid_argument("verify_height_bounds: empty path");
    if (s.height(x) > s.height(y)) std::swap(x, y);
    const auto st = path_stats(s, path);
    HeightBoundReport r;
    r.dev_minus = std::fabs(st.h_minus - (s.height(x) - relative_distance(s.right, x.q_part, y.q_part) / 2.0));
    r.dev_plus = std::fabs(st.h_plus - (s.height(y) + relative_distance(s.left, x.p_part, y.p_part) / 2.0));
    const BigScalar cap = threshold(s.ledger, ThresholdId::C0_x4);
    r.certified_minus = BigScalar::upper_bound_of(r.dev_minus) <= cap;
    r.certified_plus = BigScalar::upper_bound_of(r.dev_plus) <= cap;
    return r;
}

enum class ShapeCase { type1, type2, either };

/// Three-vertical fit: V1 through the start, V2 through the end, and the
/// corner line joining the extreme heights.
template <class P, class Q>
struct ShapeReport {
    ShapeCase tag = ShapeCase::either;
    bool fitted_type1 = true;  // which corner layout the fit used
    typename P::Point v1_p, v2_p, corner_p;
    typename Q::Point v1_q, v2_q, corner_q;
    double kappa_eff = 0.0;
    bool certified = false;  // kappa_eff <= 196*C0*C_N via the ledger
};

template <class P, class Q>
ShapeReport<P, Q> classify_shape(const HoroSpace<P, Q>& s, const std::vector<HoroPoint<P, Q>>& path,
                                 HoroPoint<P, Q> x, HoroPoint<P, Q> y) {
    if (path.empty()) throw std::invalid_argument("classify_shape: empty path");
    if (s.height(x) > s.height(y)) std::swap(x, y);
    const auto st = path_stats(s, path);
    ShapeReport<P, Q> r;

    const BigScalar gap = BigScalar::from_double(s.height(y) - s.height(x));
    const BigScalar c7 = threshold(s.ledger, ThresholdId::C0_x7);
    if (gap > c7)
        r.tag = ShapeCase::type1;
    else if (BigScalar(0) - gap > c7)
        r.tag = ShapeCase::type2;
    else
        r.tag = ShapeCase::either;

    // Below the 7*C0 scale the fit layout follows the observed profile:
    // valley first (argmin before argmax) is the down-up-down layout.
    r.fitted_type1 = r.tag == ShapeCase::type1 ||
                     (r.tag == ShapeCase::either && st.argmin <= st.argmax);
    const auto& m = path[st.argmin];
    const auto& n = path[st.argmax];
    if (r.fitted_type1) {
        r.v1_p = m.p_part;
        r.v1_q = path.front().q_part;
        r.v2_p = path.back().p_part;
        r.v2_q = n.q_part;
    } else {
        r.v1_p = path.front().p_part;
        r.v1_q = n.q_part;
        r.v2_p = m.p_part;
        r.v2_q = path.back().q_part;
    }
    r.corner_p = m.p_part;
    r.corner_q = n.q_part;

    double kappa = 0.0;
    for (const auto& pt : path) {
        const double d = std::min({product_vertical_distance(s, pt, r.v1_p, r.v1_q),
                                   product_vertical_distance(s, pt, r.v2_p, r.v2_q),
                                   product_vertical_distance(s, pt, r.corner_p, r.corner_q)});
        kappa = std::max(kappa, d);
    }
    r.kappa_eff = kappa;
    r.certified = BigScalar::upper_bound_of(kappa) <= threshold(s.ledger, ThresholdId::C0_x196_CN);
    return r;
}

struct TypeReport {
    bool is_hp_type = false, is_hq_type = false;
    double kappa_hp = 0.0, kappa_hq = 0.0;  // measured best-fit deviations
    std::string pattern;
};

namespace detail {

template <class S>
double dist_to_component_geodesic(const S& sp, const typename S::Point& v, const typename S::Point& a,
                                  const typename S::Point& b) {
    if constexpr (std::is_same_v<S, TreeSpace>) {
        return static_cast<double>(tree_distance_to_geodesic(v, a, b));
    } else {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& g : sp.geodesic(a, b, 1025)) best = std::min(best, sp.distance(v, g));
        return best;
    }
}

template <class S>
double dist_to_component_vertical(const S& sp, const typename S::Point& v, const typename S::Point& anchor) {
    if constexpr (std::is_same_v<S, TreeSpace>) {
        return static_cast<double>(tree_distance_to_vertical(v, anchor));
    } else {
        return plane_distance_to_vertical(v, anchor.x);
    }
}

}  // namespace detail

/// Labels a geodesic by its coarse monotone pattern: a single run is a
/// vertical segment (both types); a profile ending downward is the
/// mountain-side layout (p tracks a component geodesic), ending upward the
/// valley-side one. Measured kappas report the best fit for each layout.
template <class P, class Q>
TypeReport classify_type(const HoroSpace<P, Q>& s, const std::vector<HoroPoint<P, Q>>& path,
                         std::size_t min_steps = 20) {
    if (path.size() < 2 || path.size() - 1 < min_steps)
        throw std::invalid_argument("classify_type: path shorter than the configured minimum");
    std::vector<double> heights;
    heights.reserve(path.size());
    for (const auto& pt : path) heights.push_back(s.height(pt));
    const auto segs = monotone_decomposition(heights, BigScalar(0));
    const auto st = path_stats(s, path);

    TypeReport r;
    r.pattern = pattern_string(segs);

    const auto& m = path[st.argmin];
    const auto& n = path[st.argmax];
    auto fit_hp = [&]() {
        // p within kappa of a p-geodesic, q within kappa of a q-vertical.
        double pd = 0.0, qd = 0.0;
        std::vector<std::pair<typename P::Point, typename P::Point>> geods = {
            {m.p_part, path.back().p_part}, {path.front().p_part, path.back().p_part}};
        std::vector<typename Q::Point> verts = {n.q_part, path.front().q_part, path.back().q_part};
        for (const auto& pt : path) {
            double b = std::numeric_limits<double>::infinity();
            for (const auto& [a, c] : geods)
                b = std::min(b, detail::dist_to_component_geodesic(s.left, pt.p_part, a, c));
            pd = std::max(pd, b);
            double bv = std::numeric_limits<double>::infinity();
            for (const auto& anchor : verts)
                bv = std::min(bv, detail::dist_to_component_vertical(s.right, pt.q_part, anchor));
            qd = std::max(qd, bv);
        }
        return std::max(pd, qd);
    };
    auto fit_hq = [&]() {
        double pd = 0.0, qd = 0.0;
        std::vector<std::pair<typename Q::Point, typename Q::Point>> geods = {
            {n.q_part, path.back().q_part}, {path.front().q_part, path.back().q_part}};
        std::vector<typename P::Point> verts = {m.p_part, path.front().p_part, path.back().p_part};
        for (const auto& pt : path) {
            double b = std::numeric_limits<double>::infinity();
            for (const auto& [a, c] : geods)
                b = std::min(b, detail::dist_to_component_geodesic(s.right, pt.q_part, a, c));
            qd = std::max(qd, b);
            double bv = std::numeric_limits<double>::infinity();
            for (const auto& anchor : verts)
                bv = std::min(bv, detail::dist_to_component_vertical(s.left, pt.p_part, anchor));
            pd = std::max(pd, bv);
        }
        return std::max(pd, qd);
    };
    r.kappa_hp = fit_hp();
    r.kappa_hq = fit_hq();

    if (segs.size() == 1) {
        r.is_hp_type = r.is_hq_type = true;
    } else {
        const Trend last = segs.back().label;
        r.is_hp_type = last == Trend::dec;
        r.is_hq_type = last == Trend::inc;
    }
    return r;
}

struct DeadEndWitness {
    int vertex = -1;
    std::vector<int> geodesic_from_origin;
};

/// Vertices v with d(o, v) <= radius - 1 none of whose neighbors is farther
/// from the origin; the bound on d keeps the neighbor check conclusive.
inline std::vector<DeadEndWitness> dead_end_census(const DLGraph& g) {
    if (g.radius < 3) throw std::invalid_argument("dead_end_census: radius must be >= 3");
    const auto dist = dl_bfs_from(g, g.origin);
    std::vector<DeadEndWitness> out;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        if (dist[v] < 1 || dist[v] > g.radius - 1) continue;
        bool extendable = false;
        for (int u : g.adj[v])
            if (dist[u] > dist[v]) {
                extendable = true;
                break;
            }
        if (extendable) continue;
        DeadEndWitness w;
        w.vertex = v;
        // Witness geodesic by smallest-index predecessor walk.
        int cur = v;
        w.geodesic_from_origin.push_back(cur);
        while (cur != g.origin) {
            for (int u : g.adj[cur])
                if (dist[u] == dist[cur] - 1) {
                    cur = u;
                    break;
                }
            w.geodesic_from_origin.push_back(cur);
        }
        std::reverse(w.geodesic_from_origin.begin(), w.geodesic_from_origin.end());
        out.push_back(std::move(w));
    }
    return out;
}

struct ProjectionSlack {
    double p_slack = 0.0, q_slack = 0.0;
    bool certified = false;  // vs 26*C0 + 8*K
};

/// For each 0-coarsely monotone run of a geodesic, how far each component
/// projection strays from being parameter-isometric.
template <class P, class Q>
ProjectionSlack projection_quasigeodesy(const HoroSpace<P, Q>& s,
                                        const std::vector<HoroPoint<P, Q>>& path,
                                        const BigScalar& K = BigScalar(0)) {
    std::vector<double> heights;
    for (const auto& pt : path) heights.push_back(s.height(pt));
    ProjectionSlack r;
    for (const auto& seg : monotone_decomposition(heights, BigScalar(0))) {
        for (std::size_t i = seg.begin; i <= seg.end; ++i)
            for (std::size_t j = i + 1; j <= seg.end; ++j) {
                const double t = static_cast<double>(j - i);
                r.p_slack = std::max(r.p_slack, std::fabs(s.left.distance(path[i].p_part, path[j].p_part) - t));
                r.q_slack = std::max(r.q_slack, std::fabs(s.right.distance(path[i].q_part, path[j].q_part) - t));
            }
    }
    const BigScalar cap = BigScalar(26) * s.ledger.c0 + BigScalar(8) * K;
    r.certified = BigScalar::upper_bound_of(std::max(r.p_slack, r.q_slack)) <= cap;
    return r;
}

}  // namespace horobowtie
