#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace horobowtie {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

/// Vertex of the p-ary end-pointed tree: height n plus a finitely supported
/// digit map on levels >= n. Zero digits are never stored, so the
/// representation is canonical and string serialization is unique.
struct TreeVertex {
    int p = 2;
    long long n = 0;
    std::map<long long, int> digits;  // level -> digit in [1, p-1]

    friend bool operator==(const TreeVertex& a, const TreeVertex& b) {
        return a.p == b.p && a.n == b.n && a.digits == b.digits;
    }
    friend bool operator!=(const TreeVertex& a, const TreeVertex& b) { return !(a == b); }
};

inline TreeVertex make_tree_vertex(int p, long long n, std::map<long long, int> digits) {
    if (p < 2) throw std::invalid_argument("tree vertex: p must be >= 2");
    for (auto it = digits.begin(); it != digits.end();) {
        if (it->first < n) throw std::invalid_argument("tree vertex: digit level below height");
        if (it->second < 0 || it->second >= p) throw std::invalid_argument("tree vertex: digit out of range");
        if (it->second == 0)
            it = digits.erase(it);
        else
            ++it;
    }
    return TreeVertex{p, n, std::move(digits)};
}

inline TreeVertex tree_origin(int p) { return make_tree_vertex(p, 0, {}); }

inline long long tree_height(const TreeVertex& v) { return v.n; }

inline int tree_digit_at(const TreeVertex& v, long long level) {
    auto it = v.digits.find(level);
    return it == v.digits.end() ? 0 : it->second;
}

inline TreeVertex tree_parent(const TreeVertex& v) {
    TreeVertex r = v;
    r.digits.erase(r.n);
    r.n += 1;
    return r;
}

inline TreeVertex tree_child(const TreeVertex& v, int d) {
    if (d < 0 || d >= v.p) throw std::invalid_argument("tree child: digit out of range");
    TreeVertex r = v;
    r.n -= 1;
    if (d != 0) r.digits[r.n] = d;
    return r;
}

/// Smallest H >= max(n_u, n_v) such that u and v carry identical digits on
/// every level >= H. The upward rays from u and v merge exactly at height H.
inline long long confluence_level(const TreeVertex& u, const TreeVertex& v) {
    if (u.p != v.p) throw std::invalid_argument("confluence_level: mismatched arity");
    long long H = std::max(u.n, v.n);
    for (auto it = u.digits.rbegin(); it != u.digits.rend(); ++it) {
        if (it->first < H) break;
        if (tree_digit_at(v, it->first) != it->second) H = it->first + 1;
    }
    for (auto it = v.digits.rbegin(); it != v.digits.rend(); ++it) {
        if (it->first < H) break;
        if (tree_digit_at(u, it->first) != it->second) H = it->first + 1;
    }
    // One more sweep: raising H can expose no new mismatch above it, since the
    // loops above already scanned all levels >= max height of both vertices.
    return H;
}

inline long long tree_distance(const TreeVertex& u, const TreeVertex& v) {
    const long long H = confluence_level(u, v);
    return (H - u.n) + (H - v.n);
}

inline long long tree_delta_h(const TreeVertex& u, const TreeVertex& v) {
    return std::llabs(u.n - v.n);
}

inline long long tree_relative_distance(const TreeVertex& u, const TreeVertex& v) {
    return tree_distance(u, v) - tree_delta_h(u, v);
}

/// Ancestor of v at a given level (level >= height of v).
inline TreeVertex tree_ancestor(const TreeVertex& v, long long level) {
    if (level < v.n) throw std::invalid_argument("tree_ancestor: level below vertex");
    TreeVertex r;
    r.p = v.p;
    r.n = level;
    for (const auto& [lvl, d] : v.digits)
        if (lvl >= level) r.digits[lvl] = d;
    return r;
}

/// Point of the vertical geodesic through `anchor` at height t. Upward moves
/// to ancestors; downward takes the canonical all-zeros branch.
inline TreeVertex tree_vertical_point(const TreeVertex& anchor, long long t) {
    if (t >= anchor.n) return tree_ancestor(anchor, t);
    TreeVertex r = anchor;
    r.n = t;  // all added digits are zero, hence omitted
    return r;
}

/// Exact distance from v to the vertical line through `anchor`.
inline long long tree_distance_to_vertical(const TreeVertex& v, const TreeVertex& anchor) {
    // d(v, V(t)) is piecewise linear in t with a single minimum; the line's
    // low point that still helps is bounded by |d at anchor height|.
    long long best = tree_distance(v, tree_vertical_point(anchor, anchor.n));
    const long long lo = v.n - best - 1;
    const long long hi = confluence_level(v, anchor) + 1;
    for (long long t = lo; t <= hi; ++t)
        best = std::min(best, tree_distance(v, tree_vertical_point(anchor, t)));
    return best;
}

/// Exact distance from v to the geodesic segment [a, b] (Gromov product).
inline long long tree_distance_to_geodesic(const TreeVertex& v, const TreeVertex& a, const TreeVertex& b) {
    return (tree_distance(v, a) + tree_distance(v, b) - tree_distance(a, b)) / 2;
}

/// Exact vertex sequence of the geodesic from u to v (up to the confluence
/// level, then down).
inline std::vector<TreeVertex> tree_geodesic(const TreeVertex& u, const TreeVertex& v) {
    const long long H = confluence_level(u, v);
    std::vector<TreeVertex> path;
    for (long long t = u.n; t <= H; ++t) path.push_back(tree_ancestor(u, t));
    for (long long t = H - 1; t >= v.n; --t) path.push_back(tree_ancestor(v, t));
    return path;
}

inline std::string tree_serialize(const TreeVertex& v) {
    std::string s = "T" + std::to_string(v.p) + "(h=" + std::to_string(v.n) + ";";
    bool first = true;
    for (const auto& [lvl, d] : v.digits) {
        if (!first) s += ",";
        s += std::to_string(lvl) + ":" + std::to_string(d);
        first = false;
    }
    s += ")";
    return s;
}

namespace detail {

inline long long parse_ll(std::string_view s, std::size_t& i, std::size_t base_off) {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start || (i == start + 1 && !(s[start] >= '0' && s[start] <= '9')))
        throw ParseError("expected integer", base_off + start);
    return std::stoll(std::string(s.substr(start, i - start)));
}

inline void expect(std::string_view s, std::size_t& i, std::string_view tok, std::size_t base_off) {
    if (s.substr(i, tok.size()) != tok)
        throw ParseError("expected '" + std::string(tok) + "'", base_off + i);
    i += tok.size();
}

}  // namespace detail

/// Parses `T<p>(h=<n>;<level>:<digit>,...)`. base_off shifts reported byte
/// offsets when the vertex is embedded in a larger string.
inline TreeVertex tree_parse(std::string_view s, std::size_t base_off = 0) {
    std::size_t i = 0;
    detail::expect(s, i, "T", base_off);
    long long p = detail::parse_ll(s, i, base_off);
    if (p < 2 || p > 1000) throw ParseError("arity out of range", base_off);
    detail::expect(s, i, "(h=", base_off);
    long long n = detail::parse_ll(s, i, base_off);
    detail::expect(s, i, ";", base_off);
    std::map<long long, int> digits;
    long long prev_level = 0;
    bool have_prev = false;
    while (i < s.size() && s[i] != ')') {
        std::size_t entry_off = i;
        long long lvl = detail::parse_ll(s, i, base_off);
        detail::expect(s, i, ":", base_off);
        long long d = detail::parse_ll(s, i, base_off);
        if (lvl < n) throw ParseError("digit level below height", base_off + entry_off);
        if (d <= 0 || d >= p) throw ParseError("digit out of canonical range", base_off + entry_off);
        if (have_prev && lvl <= prev_level) throw ParseError("levels must strictly ascend", base_off + entry_off);
        prev_level = lvl;
        have_prev = true;
        digits[lvl] = static_cast<int>(d);
        if (i < s.size() && s[i] == ',') ++i;
    }
    detail::expect(s, i, ")", base_off);
    if (i != s.size()) throw ParseError("trailing characters after vertex", base_off + i);
    return make_tree_vertex(static_cast<int>(p), n, std::move(digits));
}

struct TreeBall {
    int p = 2;
    TreeVertex center;
    long long radius = 0;
    std::vector<TreeVertex> vertices;              // sorted by serialization
    std::vector<std::vector<int>> adj;
    std::unordered_map<std::string, int> index;    // serialization -> position
};

inline TreeBall generate_ball(int p, const TreeVertex& center, long long radius,
                              std::size_t budget = 5'000'000) {
    if (radius < 0) throw std::invalid_argument("generate_ball: negative radius");
    if (p < 2) throw std::invalid_argument("generate_ball: p must be >= 2");
    std::unordered_map<std::string, TreeVertex> seen;
    std::deque<std::pair<TreeVertex, long long>> queue;
    seen.emplace(tree_serialize(center), center);
    queue.emplace_back(center, 0);
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == radius) continue;
        std::vector<TreeVertex> nbrs;
        nbrs.push_back(tree_parent(v));
        for (int dig = 0; dig < p; ++dig) nbrs.push_back(tree_child(v, dig));
        for (auto& u : nbrs) {
            std::string key = tree_serialize(u);
            if (seen.count(key)) continue;
            if (seen.size() >= budget)
                throw BudgetError("generate_ball: vertex budget " + std::to_string(budget) + " exceeded");
            seen.emplace(std::move(key), u);
            queue.emplace_back(std::move(u), d + 1);
        }
    }

    TreeBall ball;
    ball.p = p;
    ball.center = center;
    ball.radius = radius;
    std::vector<std::pair<std::string, TreeVertex>> ordered(seen.begin(), seen.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ball.vertices.reserve(ordered.size());
    for (int i = 0; i < static_cast<int>(ordered.size()); ++i) {
        ball.vertices.push_back(ordered[i].second);
        ball.index.emplace(ordered[i].first, i);
    }
    ball.adj.resize(ball.vertices.size());
    for (int i = 0; i < static_cast<int>(ball.vertices.size()); ++i) {
        const TreeVertex& v = ball.vertices[i];
        auto link = [&](const TreeVertex& u) {
            auto it = ball.index.find(tree_serialize(u));
            if (it != ball.index.end() && it->second != i) ball.adj[i].push_back(it->second);
        };
        link(tree_parent(v));
        for (int dig = 0; dig < p; ++dig) link(tree_child(v, dig));
        std::sort(ball.adj[i].begin(), ball.adj[i].end());
    }
    return ball;
}

inline std::vector<long long> ball_bfs_from(const TreeBall& ball, int start) {
    std::vector<long long> dist(ball.vertices.size(), -1);
    std::deque<int> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : ball.adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

}  // namespace horobowtie
