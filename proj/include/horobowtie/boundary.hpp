#pragma once

#include "geodesy.hpp"
#include "horoproduct.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace horobowtie {

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RayKind { up, down };

/// Boundary cell of the product: an UP ray keeps its q-component converging
/// to the distinguished q-end (product height eventually descends along the
/// p-tree, reading off a p-cylinder); DOWN is the mirror image. The pair of
/// distinguished ends is excluded, so cylinders containing the all-zeros
/// branch are flagged rather than removed.
struct BoundaryPoint {
    RayKind kind = RayKind::up;
    std::vector<int> cylinder;  // digit choices, outermost first
    bool contains_distinguished = false;

    friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.kind == b.kind && a.cylinder == b.cylinder;
    }
};

inline std::string serialize_boundary(const BoundaryPoint& b) {
    std::string s = b.kind == RayKind::up ? "UP[p=" : "DOWN[q=";
    for (int d : b.cylinder) s += std::to_string(d);
    s += "]";
    if (b.contains_distinguished) s += "*";
    return s;
}

/// Vertical ray in a DL product: from `base`, heights move in the direction
/// given by `kind` (UP rays descend in product height so the q-part ascends
/// to a_q), with the descending tree component choosing `branch_digits`
/// cyclically (missing entries are zero).
struct DLRay {
    DLPoint base;
    RayKind kind = RayKind::up;
    std::vector<int> branch_digits;
};

inline DLPoint ray_point(const DLSpace& s, const DLRay& ray, std::size_t step) {
    DLPoint pt = ray.base;
    for (std::size_t i = 0; i < step; ++i) {
        const int d = i < ray.branch_digits.size() ? ray.branch_digits[i] : 0;
        if (ray.kind == RayKind::up)
            pt = DLPoint{tree_child(pt.p_part, d % s.left.p), tree_parent(pt.q_part)};
        else
            pt = DLPoint{tree_parent(pt.p_part), tree_child(pt.q_part, d % s.right.p)};
    }
    return pt;
}

inline std::vector<DLPoint> ray_path(const DLSpace& s, const DLRay& ray, std::size_t length) {
    std::vector<DLPoint> path;
    path.reserve(length + 1);
    for (std::size_t i = 0; i <= length; ++i) path.push_back(ray_point(s, ray, i));
    return path;
}

/// Reads the eventual direction of a finite product path. The final monotone
/// run must span at least `depth` height levels, otherwise the direction is
/// inconclusive and an error is raised rather than guessed.
inline BoundaryPoint ray_direction(const DLSpace& s, const std::vector<DLPoint>& path, int depth) {
    if (depth < 1) throw std::invalid_argument("ray_direction: depth must be >= 1");
    if (path.size() < 2) throw InconclusiveError("ray_direction: path too short");
    std::vector<double> heights;
    for (const auto& pt : path) heights.push_back(s.height(pt));
    const auto segs = monotone_decomposition(heights, BigScalar(0));
    const auto& last = segs.back();
    const long long span = std::llround(std::fabs(heights[last.end] - heights[last.begin]));
    if (span < depth)
        throw InconclusiveError("ray_direction: final monotone run spans fewer levels than depth");

    BoundaryPoint b;
    const DLPoint& start = path[last.begin];
    const DLPoint& end = path[last.end];
    if (last.label == Trend::dec) {
        // Product height falls: the p-part descends, fixing a p-cylinder.
        b.kind = RayKind::up;
        const long long top = std::llround(s.left.height(start.p_part));
        for (int i = 1; i <= depth; ++i) b.cylinder.push_back(tree_digit_at(end.p_part, top - i));
    } else {
        b.kind = RayKind::down;
        const long long top = std::llround(s.right.height(start.q_part));
        for (int i = 1; i <= depth; ++i) b.cylinder.push_back(tree_digit_at(end.q_part, top - i));
    }
    b.contains_distinguished =
        std::all_of(b.cylinder.begin(), b.cylinder.end(), [](int d) { return d == 0; });
    return b;
}

/// Finite-horizon asymptotic test: directions must agree and the distance
/// profile at matched parameters must have settled (non-increasing over the
/// trailing window). Exact for vertical rays in trees.
inline bool asymptotic(const DLSpace& s, const std::vector<DLPoint>& path1,
                       const std::vector<DLPoint>& path2, int horizon, int window = 10) {
    if (static_cast<int>(path1.size()) <= horizon || static_cast<int>(path2.size()) <= horizon)
        throw InconclusiveError("asymptotic: paths shorter than the horizon");
    BoundaryPoint d1 = ray_direction(s, path1, 1);
    BoundaryPoint d2 = ray_direction(s, path2, 1);
    if (d1.kind != d2.kind) return false;

    std::vector<double> profile;
    for (int i = 0; i <= horizon; ++i)
        profile.push_back(coarse_distance(s, path1[static_cast<std::size_t>(i)],
                                          path2[static_cast<std::size_t>(i)]));
    const int tail_start = std::max(0, horizon - window);
    for (int i = tail_start + 1; i <= horizon; ++i)
        if (profile[static_cast<std::size_t>(i)] > profile[static_cast<std::size_t>(i - 1)] + 1e-9)
            return false;
    return true;
}

/// All depth-k cells of the product boundary: p^k UP cylinders and q^k DOWN
/// cylinders; the two all-zeros cells carry the distinguished-end flag.
inline std::vector<BoundaryPoint> enumerate_cells(int p, int q, int depth) {
    if (depth < 1) throw std::invalid_argument("enumerate_cells: depth must be >= 1");
    if (p < 2 || q < 2) throw std::invalid_argument("enumerate_cells: arities must be >= 2");
    std::vector<BoundaryPoint> cells;
    auto emit = [&](RayKind kind, int base) {
        std::vector<int> digits(static_cast<std::size_t>(depth), 0);
        while (true) {
            BoundaryPoint b;
            b.kind = kind;
            b.cylinder = digits;
            b.contains_distinguished =
                std::all_of(digits.begin(), digits.end(), [](int d) { return d == 0; });
            cells.push_back(std::move(b));
            int i = depth - 1;
            while (i >= 0 && digits[static_cast<std::size_t>(i)] == base - 1) {
                digits[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++digits[static_cast<std::size_t>(i)];
        }
    };
    emit(RayKind::up, p);
    emit(RayKind::down, q);
    return cells;
}

}  // namespace horobowtie
