#pragma once

#include "constants.hpp"
#include "norms.hpp"
#include "space.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace horobowtie {

struct HeightSumError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class P, class Q>
struct HoroPoint {
    typename P::Point p_part;
    typename Q::Point q_part;

    friend bool operator==(const HoroPoint& a, const HoroPoint& b) {
        return a.p_part == b.p_part && a.q_part == b.q_part;
    }
    friend bool operator!=(const HoroPoint& a, const HoroPoint& b) { return !(a == b); }
};

/// The horospherical product of two pointed spaces: points (x_p, x_q) with
/// h_p(x_p) + h_q(x_q) = 0, product height h = h_p, path lengths measured
/// through an admissible norm on component step pairs.
template <class P, class Q>
struct HoroSpace {
    P left;
    Q right;
    AdmissibleNorm norm = AdmissibleNorm::lr(1);
    ConstantsLedger ledger = ConstantsLedger::create(BigScalar(1), BigScalar(1));

    using Point = HoroPoint<P, Q>;

    double height(const Point& x) const { return left.height(x.p_part); }
};

template <class P, class Q>
HoroSpace<P, Q> make_horo_space(P left, Q right, AdmissibleNorm norm = AdmissibleNorm::lr(1)) {
    BigScalar delta = left.delta > right.delta ? left.delta : right.delta;
    HoroSpace<P, Q> s{std::move(left), std::move(right), norm,
                      ConstantsLedger::create(delta, norm.c_norm_bound())};
    return s;
}

template <class P, class Q>
HoroPoint<P, Q> make_horo_point(const HoroSpace<P, Q>& s, typename P::Point p_part,
                                typename Q::Point q_part) {
    const double hp = s.left.height(p_part), hq = s.right.height(q_part);
    const double tol = (s.left.discrete() && s.right.discrete()) ? 0.0 : 1e-9;
    if (std::fabs(hp + hq) > tol)
        throw HeightSumError("horo point: height sum violated (h_p = " + std::to_string(hp) +
                             ", h_q = " + std::to_string(hq) + ")");
    return HoroPoint<P, Q>{std::move(p_part), std::move(q_part)};
}

template <class P, class Q>
double coarse_distance(const HoroSpace<P, Q>& s, const HoroPoint<P, Q>& x, const HoroPoint<P, Q>& y) {
    return std::fabs(s.height(x) - s.height(y)) + relative_distance(s.left, x.p_part, y.p_part) +
           relative_distance(s.right, x.q_part, y.q_part);
}

template <class P, class Q>
HoroPoint<P, Q> product_vertical_point(const HoroSpace<P, Q>& s, const HoroPoint<P, Q>& anchor, double t) {
    return HoroPoint<P, Q>{s.left.vertical_point(anchor.p_part, t),
                           s.right.vertical_point(anchor.q_part, -t)};
}

template <class P, class Q>
double step_length(const HoroSpace<P, Q>& s, const HoroPoint<P, Q>& a, const HoroPoint<P, Q>& b) {
    return s.norm(s.left.distance(a.p_part, b.p_part), s.right.distance(a.q_part, b.q_part));
}

template <class P, class Q>
double path_nlength(const HoroSpace<P, Q>& s, const std::vector<HoroPoint<P, Q>>& path) {
    double l = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) l += step_length(s, path[i - 1], path[i]);
    return l;
}

template <class P, class Q>
std::string serialize_horo_point(const HoroSpace<P, Q>& s, const HoroPoint<P, Q>& x) {
    return s.left.serialize(x.p_part) + "|" + s.right.serialize(x.q_part);
}

inline TreeVertex component_parse(const TreeSpace& s, std::string_view text, std::size_t off) {
    auto v = tree_parse(text, off);
    if (v.p != s.p) throw ParseError("tree arity does not match the space", off + 1);
    return v;
}

inline PlanePoint component_parse(const PlaneSpace&, std::string_view text, std::size_t off) {
    return plane_parse(text, off);
}

/// Inverse of serialize_horo_point; parse errors carry byte offsets into the
/// full string.
template <class P, class Q>
HoroPoint<P, Q> parse_horo_point(const HoroSpace<P, Q>& s, std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos)
        throw ParseError("expected '|' between the two components", text.size());
    auto left = component_parse(s.left, text.substr(0, bar), 0);
    auto right = component_parse(s.right, text.substr(bar + 1), bar + 1);
    return make_horo_point(s, left, right);
}

enum class SegmentRole { descend, bridge_low, ascend, bridge_high, descend_to_target };

/// Explicit connecting path through four corners: drop to the low merge
/// height, switch q-lines, ascend to the high merge height, switch p-lines,
/// then drop to the target.
template <class P, class Q>
struct PathPlan {
    std::vector<HoroPoint<P, Q>> points;
    HoroPoint<P, Q> a1, a2, a3, a4;
    double low_height = 0.0, high_height = 0.0;
    double total_length = 0.0;
    bool swapped = false;  // endpoints were reordered so h(x) <= h(y)
};

namespace detail {

/// Appends the height-parametrized line (V_{p_anchor}(t), V_{q_anchor}(-t))
/// from height `from` to `to`, exclusive of the starting point.
template <class P, class Q>
void append_vertical(const HoroSpace<P, Q>& s, std::vector<HoroPoint<P, Q>>& out,
                     const typename P::Point& p_anchor, const typename Q::Point& q_anchor,
                     double from, double to) {
    auto at = [&](double t) {
        return HoroPoint<P, Q>{s.left.vertical_point(p_anchor, t),
                               s.right.vertical_point(q_anchor, -t)};
    };
    const bool discrete = s.left.discrete() && s.right.discrete();
    if (discrete) {
        const long long a = std::llround(from), b = std::llround(to);
        const long long dir = b >= a ? 1 : -1;
        for (long long t = a + dir; dir > 0 ? t <= b : t >= b; t += dir)
            out.push_back(at(static_cast<double>(t)));
        return;
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(to - from) * 8.0)));
    for (int i = 1; i <= steps; ++i) out.push_back(at(from + (to - from) * i / steps));
}

/// Appends a bridge that follows a geodesic in one component while the other
/// component rides its vertical line at the opposite height.
template <class P, class Q>
void append_q_bridge(const HoroSpace<P, Q>& s, std::vector<HoroPoint<P, Q>>& out,
                     const typename P::Point& p_anchor, const typename Q::Point& q_from,
                     const typename Q::Point& q_to) {
    if (s.right.distance(q_from, q_to) <= 0.0) return;
    auto qpath = s.right.geodesic(q_from, q_to, 257);
    for (std::size_t i = 1; i < qpath.size(); ++i) {
        const double hq = s.right.height(qpath[i]);
        out.push_back(HoroPoint<P, Q>{s.left.vertical_point(p_anchor, -hq), qpath[i]});
    }
}

template <class P, class Q>
void append_p_bridge(const HoroSpace<P, Q>& s, std::vector<HoroPoint<P, Q>>& out,
                     const typename P::Point& p_from, const typename P::Point& p_to,
                     const typename Q::Point& q_anchor) {
    if (s.left.distance(p_from, p_to) <= 0.0) return;
    auto ppath = s.left.geodesic(p_from, p_to, 257);
    for (std::size_t i = 1; i < ppath.size(); ++i) {
        const double hp = s.left.height(ppath[i]);
        out.push_back(HoroPoint<P, Q>{ppath[i], s.right.vertical_point(q_anchor, -hp)});
    }
}

}  // namespace detail

template <class P, class Q>
PathPlan<P, Q> build_path(const HoroSpace<P, Q>& s, HoroPoint<P, Q> x, HoroPoint<P, Q> y) {
    PathPlan<P, Q> plan;
    if (s.height(x) > s.height(y)) {
        std::swap(x, y);
        plan.swapped = true;
    }
    const double dr_q = relative_distance(s.right, x.q_part, y.q_part);
    const double dr_p = relative_distance(s.left, x.p_part, y.p_part);
    plan.low_height = s.height(x) - dr_q / 2.0;
    plan.high_height = s.height(y) + dr_p / 2.0;

    plan.a1 = product_vertical_point(s, x, plan.low_height);
    plan.a2 = HoroPoint<P, Q>{plan.a1.p_part, s.right.vertical_point(y.q_part, -plan.low_height)};
    plan.a3 = HoroPoint<P, Q>{s.left.vertical_point(x.p_part, plan.high_height),
                              s.right.vertical_point(y.q_part, -plan.high_height)};
    plan.a4 = product_vertical_point(s, y, plan.high_height);

    auto& pts = plan.points;
    pts.push_back(x);
    detail::append_vertical(s, pts, x.p_part, x.q_part, s.height(x), plan.low_height);
    detail::append_q_bridge(s, pts, plan.a1.p_part, plan.a1.q_part, plan.a2.q_part);
    detail::append_vertical(s, pts, x.p_part, y.q_part, plan.low_height, plan.high_height);
    detail::append_p_bridge(s, pts, plan.a3.p_part, plan.a4.p_part, plan.a3.q_part);
    detail::append_vertical(s, pts, y.p_part, y.q_part, plan.high_height, s.height(y));
    if (!(pts.back() == y)) pts.push_back(y);

    // Drop consecutive duplicates left by degenerate segments.
    std::vector<HoroPoint<P, Q>> cleaned;
    for (auto& pt : pts)
        if (cleaned.empty() || step_length(s, cleaned.back(), pt) > 1e-15) cleaned.push_back(pt);
    if (cleaned.empty()) cleaned.push_back(x);
    pts = std::move(cleaned);
    plan.total_length = path_nlength(s, pts);
    return plan;
}

struct BuildCertificate {
    BigScalar measured_upper;  // exact upper round of the measured length
    BigScalar bound;           // coarse + 1152 * delta * c_norm
    bool holds = false;
};

template <class P, class Q>
BuildCertificate certify_build_path(const HoroSpace<P, Q>& s, const PathPlan<P, Q>& plan,
                                    const HoroPoint<P, Q>& x, const HoroPoint<P, Q>& y) {
    BuildCertificate cert{
        BigScalar::upper_bound_of(plan.total_length),
        BigScalar::from_double(coarse_distance(s, x, y)) + threshold(s.ledger, ThresholdId::DELTA_x1152_CN),
        false,
    };
    cert.holds = cert.measured_upper <= cert.bound;
    return cert;
}

// -------------------------------------------------------------------------
// Diestel-Leader finite-ball oracle (tree x tree only).

using DLSpace = HoroSpace<TreeSpace, TreeSpace>;
using DLPoint = HoroPoint<TreeSpace, TreeSpace>;

inline DLSpace make_dl_space(int p, int q, AdmissibleNorm norm = AdmissibleNorm::lr(1)) {
    return make_horo_space(TreeSpace{p}, TreeSpace{q}, std::move(norm));
}

struct DLGraph {
    int p = 2, q = 2;
    long long radius = 0;
    DLSpace space = make_dl_space(2, 2);
    std::vector<DLPoint> vertices;              // sorted by serialization
    std::vector<std::vector<int>> adj;
    std::unordered_map<std::string, int> index;
    int origin = -1;
};

inline DLPoint dl_origin_point(const DLSpace& s) {
    return make_horo_point(s, tree_origin(s.left.p), tree_origin(s.right.p));
}

/// DL neighbors: one component steps to a child while the other steps to its
/// parent, keeping the height sum at zero. Degree is p + q.
inline std::vector<DLPoint> dl_neighbors(const DLSpace& s, const DLPoint& v) {
    std::vector<DLPoint> out;
    out.reserve(static_cast<std::size_t>(s.left.p + s.right.p));
    const TreeVertex pp = tree_parent(v.p_part);
    for (int d = 0; d < s.right.p; ++d) out.push_back(DLPoint{pp, tree_child(v.q_part, d)});
    const TreeVertex qp = tree_parent(v.q_part);
    for (int d = 0; d < s.left.p; ++d) out.push_back(DLPoint{tree_child(v.p_part, d), qp});
    return out;
}

inline DLGraph dl_ball(int p, int q, long long radius, std::size_t budget = 5'000'000) {
    if (radius < 0) throw std::invalid_argument("dl_ball: negative radius");
    DLGraph g;
    g.p = p;
    g.q = q;
    g.radius = radius;
    g.space = make_dl_space(p, q);

    const DLPoint origin = dl_origin_point(g.space);
    std::unordered_map<std::string, DLPoint> seen;
    std::deque<std::pair<DLPoint, long long>> queue;
    seen.emplace(serialize_horo_point(g.space, origin), origin);
    queue.emplace_back(origin, 0);
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == radius) continue;
        for (auto& u : dl_neighbors(g.space, v)) {
            std::string key = serialize_horo_point(g.space, u);
            if (seen.count(key)) continue;
            if (seen.size() >= budget)
                throw BudgetError("dl_ball: vertex budget " + std::to_string(budget) + " exceeded");
            seen.emplace(std::move(key), u);
            queue.emplace_back(std::move(u), d + 1);
        }
    }

    std::vector<std::pair<std::string, DLPoint>> ordered(seen.begin(), seen.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    g.vertices.reserve(ordered.size());
    for (int i = 0; i < static_cast<int>(ordered.size()); ++i) {
        g.vertices.push_back(ordered[i].second);
        g.index.emplace(ordered[i].first, i);
    }
    g.adj.resize(g.vertices.size());
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
        for (auto& u : dl_neighbors(g.space, g.vertices[i])) {
            auto it = g.index.find(serialize_horo_point(g.space, u));
            if (it != g.index.end()) g.adj[i].push_back(it->second);
        }
        std::sort(g.adj[i].begin(), g.adj[i].end());
    }
    g.origin = g.index.at(serialize_horo_point(g.space, origin));
    return g;
}

struct OutsideBallError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline int dl_index(const DLGraph& g, const DLPoint& x) {
    auto it = g.index.find(serialize_horo_point(g.space, x));
    if (it == g.index.end()) throw OutsideBallError("dl_index: point outside the generated ball");
    return it->second;
}

inline std::vector<int> dl_bfs_from(const DLGraph& g, int start) {
    std::vector<int> dist(g.vertices.size(), -1);
    std::deque<int> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

inline long long dl_bfs_distance(const DLGraph& g, const DLPoint& x, const DLPoint& y) {
    auto dist = dl_bfs_from(g, dl_index(g, x));
    int iy = dl_index(g, y);
    if (dist[iy] < 0) throw OutsideBallError("dl_bfs_distance: endpoints disconnected inside the ball");
    return dist[iy];
}

/// A pair is oracle-valid when every geodesic between the endpoints provably
/// stays inside the ball: d(o,x) + d(o,y) + d(x,y) <= 2 * radius.
inline bool dl_pair_valid(const DLGraph& g, int ix, int iy, const std::vector<int>& dist_from_origin,
                          long long d_xy) {
    return dist_from_origin[ix] + dist_from_origin[iy] + d_xy <= 2 * g.radius;
}

/// Every geodesic from x to y as a vertex-index sequence; complete for valid
/// pairs. Paths are emitted in lexicographic vertex-index order.
inline std::vector<std::vector<int>> dl_all_geodesics(const DLGraph& g, const DLPoint& x,
                                                      const DLPoint& y, std::size_t budget = 1'000'000) {
    const int ix = dl_index(g, x), iy = dl_index(g, y);
    auto dist_to_y = dl_bfs_from(g, iy);
    if (dist_to_y[ix] < 0) throw OutsideBallError("dl_all_geodesics: endpoints disconnected");
    std::vector<std::vector<int>> out;
    std::vector<int> cur{ix};
    std::size_t nodes = 0;
    // DFS along distance-decreasing edges enumerates exactly the geodesics.
    auto rec = [&](auto&& self, int v) -> void {
        if (++nodes > budget)
            throw BudgetError("dl_all_geodesics: enumeration budget " + std::to_string(budget) + " exceeded");
        if (v == iy) {
            out.push_back(cur);
            return;
        }
        for (int u : g.adj[v])
            if (dist_to_y[u] == dist_to_y[v] - 1) {
                cur.push_back(u);
                self(self, u);
                cur.pop_back();
            }
    };
    rec(rec, ix);
    return out;
}

}  // namespace horobowtie
