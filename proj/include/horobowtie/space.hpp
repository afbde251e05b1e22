#pragma once

#include "bigscalar.hpp"
#include "plane.hpp"
#include "tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace horobowtie {

struct OrientationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Uniform component interface over the p-ary tree. Heights are integers
/// reported as doubles; all tree queries below are exact.
struct TreeSpace {
    using Point = TreeVertex;

    int p = 2;
    BigScalar delta = BigScalar(1);  // certification delta; the tree itself is 0-hyperbolic

    Point base_point() const { return tree_origin(p); }
    double distance(const Point& x, const Point& y) const {
        return static_cast<double>(tree_distance(x, y));
    }
    double height(const Point& x) const { return static_cast<double>(x.n); }
    Point vertical_point(const Point& anchor, double t) const {
        const long long ti = static_cast<long long>(std::llround(t));
        if (static_cast<double>(ti) != t)
            throw std::invalid_argument("tree vertical: height must be an integer");
        return tree_vertical_point(anchor, ti);
    }
    std::vector<Point> geodesic(const Point& x, const Point& y, int /*samples*/) const {
        return tree_geodesic(x, y);
    }
    /// Point at graph distance s from x along the geodesic toward y.
    Point geodesic_point_at(const Point& x, const Point& y, double s) const {
        auto path = tree_geodesic(x, y);
        const long long si = static_cast<long long>(std::llround(s));
        if (si < 0 || si >= static_cast<long long>(path.size()))
            throw std::invalid_argument("tree geodesic point: parameter out of range");
        return path[static_cast<std::size_t>(si)];
    }
    std::string serialize(const Point& x) const { return tree_serialize(x); }
    bool discrete() const { return true; }
};

/// Uniform component interface over the log-model hyperbolic plane.
struct PlaneSpace {
    using Point = PlanePoint;

    BigScalar delta = BigScalar(1);

    Point base_point() const { return PlanePoint{0.0, 0.0}; }
    double distance(const Point& x, const Point& y) const { return plane_distance(x, y); }
    double height(const Point& x) const { return x.z; }
    Point vertical_point(const Point& anchor, double t) const { return plane_vertical_point(anchor, t); }
    std::vector<Point> geodesic(const Point& x, const Point& y, int samples) const {
        return plane_geodesic(x, y, samples);
    }
    Point geodesic_point_at(const Point& x, const Point& y, double s) const {
        return plane_geodesic_point_at(x, y, s);
    }
    std::string serialize(const Point& x) const { return plane_serialize(x); }
    bool discrete() const { return false; }
};

template <class S>
double delta_h(const S& s, const typename S::Point& x, const typename S::Point& y) {
    return std::fabs(s.height(x) - s.height(y));
}

template <class S>
double relative_distance(const S& s, const typename S::Point& x, const typename S::Point& y) {
    return std::max(0.0, s.distance(x, y) - delta_h(s, x, y));
}

template <class S>
double geodesic_max_height(const S& s, const typename S::Point& x, const typename S::Point& y);

template <>
inline double geodesic_max_height<TreeSpace>(const TreeSpace&, const TreeVertex& x, const TreeVertex& y) {
    return static_cast<double>(confluence_level(x, y));
}

template <>
inline double geodesic_max_height<PlaneSpace>(const PlaneSpace&, const PlanePoint& x, const PlanePoint& y) {
    return plane_geodesic_max_height(x, y);
}

/// Witness points for the low-level merge estimate: z is the geodesic point
/// at parameter delta_h + half the relative distance from x; x1, y1 are the
/// verticals through x and y at height h(y) + half the relative distance.
template <class S>
struct Lem0Witnesses {
    typename S::Point z, x1, y1;
    double hplus_lower = 0.0;  // h(y) + dr/2 - 96*delta
    double d_z_x1 = 0.0, d_z_y1 = 0.0, d_x1_y1 = 0.0;
};

template <class S>
Lem0Witnesses<S> lem0_witnesses(const S& s, const typename S::Point& x, const typename S::Point& y) {
    if (s.height(x) > s.height(y) + 1e-12)
        throw OrientationError("lem0_witnesses: requires h(x) <= h(y); swap the arguments");
    const double dr = relative_distance(s, x, y);
    const double target = s.height(y) + dr / 2.0;
    Lem0Witnesses<S> w{
        s.geodesic_point_at(x, y, std::min(s.distance(x, y), delta_h(s, x, y) + dr / 2.0)),
        s.vertical_point(x, target),
        s.vertical_point(y, target),
        target - 96.0 * s.delta.to_double(),
    };
    w.d_z_x1 = s.distance(w.z, w.x1);
    w.d_z_y1 = s.distance(w.z, w.y1);
    w.d_x1_y1 = s.distance(w.x1, w.y1);
    return w;
}

/// |d_r(x,y) - d(x', y)| where x' is the vertical through x at height h(y).
template <class S>
double same_height_projection_gap(const S& s, const typename S::Point& x, const typename S::Point& y) {
    if (s.height(x) > s.height(y) + 1e-12)
        throw OrientationError("same_height_projection_gap: requires h(x) <= h(y)");
    const auto xp = s.vertical_point(x, s.height(y));
    return std::fabs(relative_distance(s, x, y) - s.distance(xp, y));
}

}  // namespace horobowtie
