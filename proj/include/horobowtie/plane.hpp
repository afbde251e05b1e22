#pragma once

#include "tree.hpp"  // ParseError

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace horobowtie {

/// Point of the log-model hyperbolic plane ds^2 = dz^2 + e^{-2z} dx^2.
/// Height is z; the distinguished end is z -> +infinity.
struct PlanePoint {
    double x = 0.0;
    double z = 0.0;

    friend bool operator==(const PlanePoint& a, const PlanePoint& b) { return a.x == b.x && a.z == b.z; }
};

inline void plane_check(const PlanePoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.z))
        throw std::invalid_argument("plane point: coordinates must be finite");
    if (std::fabs(p.z) > 700.0)
        throw std::invalid_argument("plane point: |z| > 700 overflows e^z in double precision");
}

/// Closed form via the half-plane substitution y = e^z:
/// d = arccosh(1 + (dx^2 + (e^zu - e^zv)^2) / (2 e^{zu+zv})).
inline double plane_distance(const PlanePoint& u, const PlanePoint& v) {
    plane_check(u);
    plane_check(v);
    const double dx = u.x - v.x;
    const double dz = u.z - v.z;
    // (e^zu - e^zv)^2 / (2 e^{zu+zv}) = cosh(dz) - 1, computed stably.
    const double t = 1.0 + (std::cosh(dz) - 1.0) + dx * dx * 0.5 * std::exp(-u.z - v.z);
    return std::acosh(std::max(1.0, t));
}

inline double plane_height(const PlanePoint& p) { return p.z; }

inline double plane_delta_h(const PlanePoint& u, const PlanePoint& v) { return std::fabs(u.z - v.z); }

inline double plane_relative_distance(const PlanePoint& u, const PlanePoint& v) {
    return std::max(0.0, plane_distance(u, v) - plane_delta_h(u, v));
}

inline PlanePoint plane_vertical_point(const PlanePoint& anchor, double t) { return PlanePoint{anchor.x, t}; }

/// d(p, vertical line x = line_x): sinh(d) = |dx| e^{-z}.
inline double plane_distance_to_vertical(const PlanePoint& p, double line_x) {
    plane_check(p);
    return std::asinh(std::fabs(p.x - line_x) * std::exp(-p.z));
}

namespace detail {

/// Half-plane circle through the two lifted points; returns center c and
/// radius R, or radius 0 for a vertical pair.
struct HalfPlaneArc {
    double c = 0.0;
    double R = 0.0;
    bool vertical = false;
};

inline HalfPlaneArc half_plane_arc(const PlanePoint& u, const PlanePoint& v) {
    const double yu = std::exp(u.z), yv = std::exp(v.z);
    if (std::fabs(u.x - v.x) < 1e-300) return HalfPlaneArc{u.x, 0.0, true};
    const double c = (v.x * v.x - u.x * u.x + yv * yv - yu * yu) / (2.0 * (v.x - u.x));
    const double R = std::hypot(u.x - c, yu);
    return HalfPlaneArc{c, R, false};
}

inline double arc_angle(const HalfPlaneArc& a, const PlanePoint& p) {
    return std::atan2(std::exp(p.z), p.x - a.c);  // in (0, pi)
}

}  // namespace detail

/// h+ of the geodesic segment: ln R when the semicircle apex lies inside the
/// arc, otherwise the larger endpoint height.
inline double plane_geodesic_max_height(const PlanePoint& u, const PlanePoint& v) {
    plane_check(u);
    plane_check(v);
    auto arc = detail::half_plane_arc(u, v);
    if (arc.vertical) return std::max(u.z, v.z);
    const double a1 = detail::arc_angle(arc, u), a2 = detail::arc_angle(arc, v);
    const double lo = std::min(a1, a2), hi = std::max(a1, a2);
    const double half_pi = std::asin(1.0);
    if (lo <= half_pi && half_pi <= hi) return std::log(arc.R);
    return std::max(u.z, v.z);
}

/// Point at hyperbolic arc length s from u along the geodesic toward v.
inline PlanePoint plane_geodesic_point_at(const PlanePoint& u, const PlanePoint& v, double s) {
    auto arc = detail::half_plane_arc(u, v);
    if (arc.vertical) {
        const double dir = v.z >= u.z ? 1.0 : -1.0;
        return PlanePoint{u.x, u.z + dir * s};
    }
    // Arc length parameter along the semicircle is t = ln tan(theta/2).
    const double tu = std::log(std::tan(detail::arc_angle(arc, u) / 2.0));
    const double tv = std::log(std::tan(detail::arc_angle(arc, v) / 2.0));
    const double dir = tv >= tu ? 1.0 : -1.0;
    const double theta = 2.0 * std::atan(std::exp(tu + dir * s));
    return PlanePoint{arc.c + arc.R * std::cos(theta), std::log(arc.R * std::sin(theta))};
}

/// Polyline samples of the geodesic, uniform in hyperbolic arc length.
inline std::vector<PlanePoint> plane_geodesic(const PlanePoint& u, const PlanePoint& v, int samples) {
    if (samples < 2) throw std::invalid_argument("plane_geodesic: need at least 2 samples");
    const double d = plane_distance(u, v);
    std::vector<PlanePoint> path;
    path.reserve(static_cast<std::size_t>(samples));
    path.push_back(u);
    for (int i = 1; i + 1 < samples; ++i)
        path.push_back(plane_geodesic_point_at(u, v, d * i / (samples - 1)));
    path.push_back(v);
    return path;
}

inline double plane_polyline_length(const std::vector<PlanePoint>& path) {
    double l = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) l += plane_distance(path[i - 1], path[i]);
    return l;
}

/// Minimal length over the capped family: the geodesic when its apex stays at
/// or below `cap`, otherwise geodesic pieces up to a switch height t <= cap
/// joined by the horocycle segment at height t, minimized over t.
inline double plane_capped_min_length(const PlanePoint& u, const PlanePoint& v, double cap) {
    plane_check(u);
    plane_check(v);
    if (cap < std::max(u.z, v.z))
        throw std::invalid_argument("plane_capped_min_length: cap below an endpoint height");
    if (u == v) return 0.0;
    if (plane_geodesic_max_height(u, v) <= cap) return plane_distance(u, v);

    // At switch height t both ascending pieces are geodesics ending on the
    // horocycle z = t; the middle runs along the horocycle, length e^{-t} dx.
    auto family_length = [&](double t) {
        const double et = std::exp(t);
        // Each ascending piece is the arc of radius e^t tangent to the
        // horocycle at height t; its length is arccosh(e^{t-z}) and it
        // consumes Euclidean x-offset sqrt(e^{2t} - e^{2z}).
        const double lu = std::acosh(std::max(1.0, et * std::exp(-u.z)));
        const double lv = std::acosh(std::max(1.0, et * std::exp(-v.z)));
        const double xu = std::sqrt(std::max(0.0, et * et - std::exp(2.0 * u.z)));
        const double xv = std::sqrt(std::max(0.0, et * et - std::exp(2.0 * v.z)));
        const double leftover = std::fabs(u.x - v.x) - (xu + xv);
        if (leftover < 0.0) return std::numeric_limits<double>::infinity();
        return lu + lv + std::exp(-t) * leftover;
    };

    // Golden-section over t in [max(zu, zv), cap].
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(u.z, v.z), b = cap;
    double c = b - gr * (b - a), d2 = a + gr * (b - a);
    double fc = family_length(c), fd = family_length(d2);
    for (int it = 0; it < 200; ++it) {
        if (fc < fd) {
            b = d2;
            d2 = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = family_length(c);
        } else {
            a = c;
            c = d2;
            fc = fd;
            d2 = a + gr * (b - a);
            fd = family_length(d2);
        }
    }
    double best = std::min({family_length(a), family_length(b), fc, fd});
    // The boundary t = cap is usually the optimum when the cap binds.
    return best;
}

inline std::string plane_serialize(const PlanePoint& p) {
    char buf[64];
    auto fmt = [&](double v) {
        // Shortest representation that round-trips.
        for (int prec = 1; prec <= 17; ++prec) {
            std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
            if (std::strtod(buf, nullptr) == v) break;
        }
        return std::string(buf);
    };
    return "P(" + fmt(p.x) + "," + fmt(p.z) + ")";
}

inline PlanePoint plane_parse(std::string_view s, std::size_t base_off = 0) {
    std::size_t i = 0;
    detail::expect(s, i, "P(", base_off);
    auto parse_double = [&](char terminator) {
        std::size_t start = i;
        while (i < s.size() && s[i] != terminator) ++i;
        if (i >= s.size()) throw ParseError("unterminated plane coordinate", base_off + start);
        double val{};
        auto sub = s.substr(start, i - start);
        auto res = std::from_chars(sub.data(), sub.data() + sub.size(), val);
        if (res.ec != std::errc{} || res.ptr != sub.data() + sub.size())
            throw ParseError("malformed plane coordinate", base_off + start);
        ++i;  // consume terminator
        return val;
    };
    double x = parse_double(',');
    double z = parse_double(')');
    if (i != s.size()) throw ParseError("trailing characters after point", base_off + i);
    PlanePoint p{x, z};
    plane_check(p);
    return p;
}

}  // namespace horobowtie
