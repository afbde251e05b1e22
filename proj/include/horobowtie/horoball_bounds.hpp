#pragma once

#include "constants.hpp"
#include "space.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace horobowtie {

struct HypothesisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class BoundKind { amande, below_same_height, below_and_reach, backwards_control };

inline std::string bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::amande: return "amande";
        case BoundKind::below_same_height: return "below_same_height";
        case BoundKind::below_and_reach: return "below_and_reach";
        case BoundKind::backwards_control: return "backwards_control";
    }
    return "?";
}

/// l >= dh(x,x0) + dh(y,y0) + 2^-386 * 2^(d(x0,y0)/(2 delta)) - 24 delta,
/// for paths staying at or below the height of x0, y0. The exponential term
/// is replaced by a certified rational lower bound.
inline BigScalar amande_bound(const BigScalar& delta, const BigScalar& dh_x_x0,
                              const BigScalar& dh_y_y0, const BigScalar& d_x0_y0) {
    if (dh_x_x0.is_negative() || dh_y_y0.is_negative() || d_x0_y0.is_negative())
        throw std::invalid_argument("amande_bound: negative input");
    if (!(d_x0_y0 > BigScalar(768) * delta))
        throw HypothesisError("amande_bound: requires d(x0,y0) > 768*delta");
    const BigScalar expo = d_x0_y0 / (BigScalar(2) * delta);
    return dh_x_x0 + dh_y_y0 + BigScalar::pow2(-386) * pow2_lower(expo) - BigScalar(24) * delta;
}

/// l >= d(x,y) + 2^-530 * 2^(dH/delta) - 2 dH - 24 delta, for dH > 555 delta.
inline BigScalar below_same_height_bound(const BigScalar& delta, const BigScalar& d_xy,
                                         const BigScalar& delta_H) {
    if (d_xy.is_negative()) throw std::invalid_argument("below_same_height_bound: negative distance");
    if (!(delta_H > BigScalar(555) * delta))
        throw HypothesisError("below_same_height_bound: requires delta_H > 555*delta");
    return d_xy + BigScalar::pow2(-530) * pow2_lower(delta_H / delta) - BigScalar(2) * delta_H -
           BigScalar(24) * delta;
}

/// l >= 2 dh(x,m) + d(x,y) + 2^-850 * 2^(dH/delta) - 1 - max(0, 2 dH) - 1700 delta.
/// No sign hypothesis on dH; the value is often negative at desk scale.
inline BigScalar below_and_reach_bound(const BigScalar& delta, const BigScalar& dh_x_m,
                                       const BigScalar& d_xy, const BigScalar& delta_H) {
    if (dh_x_m.is_negative() || d_xy.is_negative())
        throw std::invalid_argument("below_and_reach_bound: negative input");
    const BigScalar two_dh = BigScalar(2) * delta_H;
    const BigScalar penalty = two_dh.is_negative() ? BigScalar(0) : two_dh;
    return BigScalar(2) * dh_x_m + d_xy + BigScalar::pow2(-850) * pow2_lower(delta_H / delta) -
           BigScalar(1) - penalty - BigScalar(1700) * delta;
}

/// |d_r(V1(T - dh - t), V2(T - t)) - 2t| where T = t2 + dr/2 and dh = |t1 - t2|,
/// measuring how relative distance rebuilds when walking back down two
/// verticals. Zero on trees, <= 288 delta in general.
template <class S>
double backwards_control_residual(const S& s, const typename S::Point& anchor1,
                                  const typename S::Point& anchor2, double t1, double t2, double t) {
    const auto v1 = s.vertical_point(anchor1, t1);
    const auto v2 = s.vertical_point(anchor2, t2);
    const double dr = relative_distance(s, v1, v2);
    if (t < -1e-12 || t > dr / 2.0 + 1e-12)
        throw std::invalid_argument("backwards_control_residual: t outside [0, dr/2]");
    const double T = std::max(t1, t2) + dr / 2.0;
    const double lo = std::min(t1, t2) + dr / 2.0;  // = T - |t1 - t2|
    auto p1 = s.vertical_point(anchor1, (t1 <= t2 ? lo : T) - t);
    auto p2 = s.vertical_point(anchor2, (t1 <= t2 ? T : lo) - t);
    return std::fabs(relative_distance(s, p1, p2) - 2.0 * t);
}

struct BoundCertificate {
    BoundKind kind = BoundKind::amande;
    BigScalar lhs;   // measured quantity, upper-rounded for lower bounds
    BigScalar rhs;   // the certified bound
    bool holds = false;
    double slack_log2 = 0.0;
    std::string hypothesis_report;
};

inline void finish_certificate(BoundCertificate& c) {
    c.holds = c.lhs >= c.rhs;
    const BigScalar gap = c.holds ? c.lhs - c.rhs : c.rhs - c.lhs;
    c.slack_log2 = gap.is_zero() ? 0.0 : (c.holds ? 1.0 : -1.0) * gap.log2_approx();
}

/// Context for certifying a measured capped path against one of the bounds.
template <class S>
struct BoundContext {
    typename S::Point x, y;                 // path endpoints
    std::optional<double> t0;               // amande: common height of x0, y0
    std::optional<typename S::Point> m;     // below_and_reach: the reached low point
};

/// Validates the lemma hypotheses on the measured path, then compares its
/// length (exact upper round) against the exact bound value.
template <class S>
BoundCertificate certify_capped_path(const S& s, const std::vector<typename S::Point>& path,
                                     const BoundContext<S>& ctx, BoundKind kind) {
    if (path.size() < 2) throw HypothesisError("certify_capped_path: path needs >= 2 points");
    const double tol = 1e-9;
    if (s.distance(path.front(), ctx.x) > tol || s.distance(path.back(), ctx.y) > tol)
        throw HypothesisError("certify_capped_path: path endpoints do not match the context");

    double length = 0.0, hplus = s.height(path[0]), hminus = s.height(path[0]);
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) length += s.distance(path[i - 1], path[i]);
        hplus = std::max(hplus, s.height(path[i]));
        hminus = std::min(hminus, s.height(path[i]));
    }

    BoundCertificate cert;
    cert.kind = kind;
    cert.lhs = BigScalar::upper_bound_of(length);
    const BigScalar delta = s.delta;

    switch (kind) {
        case BoundKind::amande: {
            if (!ctx.t0) throw HypothesisError("amande: context t0 missing");
            const double t0 = *ctx.t0;
            if (t0 < std::max(s.height(ctx.x), s.height(ctx.y)) - tol)
                throw HypothesisError("amande: t0 below an endpoint height");
            if (hplus > t0 + tol)
                throw HypothesisError("amande: path exceeds the height cap t0");
            const auto x0 = s.vertical_point(ctx.x, t0);
            const auto y0 = s.vertical_point(ctx.y, t0);
            cert.rhs = amande_bound(delta, BigScalar::from_double(t0 - s.height(ctx.x)),
                                    BigScalar::from_double(t0 - s.height(ctx.y)),
                                    BigScalar::from_double(s.distance(x0, y0)));
            cert.hypothesis_report = "cap t0 = " + std::to_string(t0) +
                                     ", d(x0,y0) = " + std::to_string(s.distance(x0, y0));
            break;
        }
        case BoundKind::below_same_height: {
            const double hy = std::max(s.height(ctx.x), s.height(ctx.y));
            const double dH = hy + relative_distance(s, ctx.x, ctx.y) / 2.0 - hplus;
            cert.rhs = below_same_height_bound(delta, BigScalar::from_double(s.distance(ctx.x, ctx.y)),
                                               BigScalar::from_double(dH));
            cert.hypothesis_report = "delta_H = " + std::to_string(dH);
            break;
        }
        case BoundKind::below_and_reach: {
            if (!ctx.m) throw HypothesisError("below_and_reach: context m missing");
            if (std::fabs(hminus - s.height(*ctx.m)) > tol)
                throw HypothesisError("below_and_reach: path h- does not reach h(m)");
            const double hy = std::max(s.height(ctx.x), s.height(ctx.y));
            const double dH = hy + relative_distance(s, ctx.x, ctx.y) / 2.0 - hplus;
            cert.rhs = below_and_reach_bound(
                delta, BigScalar::from_double(std::fabs(s.height(ctx.x) - s.height(*ctx.m))),
                BigScalar::from_double(s.distance(ctx.x, ctx.y)), BigScalar::from_double(dH));
            cert.hypothesis_report = "delta_H = " + std::to_string(dH) +
                                     ", h(m) = " + std::to_string(s.height(*ctx.m));
            break;
        }
        case BoundKind::backwards_control:
            throw HypothesisError(
                "backwards_control certifies verticals, not capped paths; use "
                "certify_backwards_control");
    }
    finish_certificate(cert);
    return cert;
}

/// Certificates for the amande and below-same-height bounds in their genuine
/// regime. Any configuration meeting the 768*delta / 555*delta hypotheses has
/// path lengths beyond double range, so the path is taken to be the height-0
/// horocycle segment joining (0,0) to (2^k, 0) in the log-model plane: its
/// length is exactly 2^k, its height cap is 0, and the endpoint distance
/// 2*asinh(2^(k-1)) is bracketed by exact rational bounds on ln 2. The rhs is
/// rounded up (ceiling exponent, lower delta-H in the negative term), so
/// holds = true is a sound conclusion.
inline BoundCertificate deep_horocycle_certificate(BoundKind kind, long k,
                                                   const BigScalar& delta = BigScalar(1)) {
    if (k < 4) throw std::invalid_argument("deep_horocycle_certificate: k too small");
    const BigScalar ln2_lo = BigScalar::from_double(0.6931471805);
    const BigScalar ln2_hi = BigScalar::from_double(0.6931471806);
    // 2k*ln2 <= d = 2*asinh(2^(k-1)) <= 2k*ln2 + 2^(-2k+2).
    const BigScalar d_lo = BigScalar(2 * k) * ln2_lo;
    const BigScalar d_up = BigScalar(2 * k) * ln2_hi + BigScalar::pow2(static_cast<long>(-2 * k + 2));
    auto exp_upper = [](const BigScalar& e) {
        return BigScalar::pow2(e.floor().convert_to<long>() + 1);
    };

    BoundCertificate cert;
    cert.kind = kind;
    cert.lhs = BigScalar::pow2(k);
    switch (kind) {
        case BoundKind::amande: {
            // Validates the hypothesis at the certified lower bound on d.
            amande_bound(delta, BigScalar(0), BigScalar(0), d_lo);
            cert.rhs = BigScalar::pow2(-386) * exp_upper(d_up / (BigScalar(2) * delta)) -
                       BigScalar(24) * delta;
            cert.hypothesis_report =
                "horocycle path, cap 0, d(x0,y0) >= " + std::to_string(2 * k * 0.6931471805);
            break;
        }
        case BoundKind::below_same_height: {
            const BigScalar dh_lo = d_lo / BigScalar(2);
            const BigScalar dh_up = d_up / BigScalar(2);
            below_same_height_bound(delta, d_lo, dh_lo);
            cert.rhs = d_up + BigScalar::pow2(-530) * exp_upper(dh_up / delta) -
                       BigScalar(2) * dh_lo - BigScalar(24) * delta;
            cert.hypothesis_report =
                "horocycle path, delta_H >= " + std::to_string(k * 0.6931471805);
            break;
        }
        default:
            throw std::invalid_argument(
                "deep_horocycle_certificate: amande or below_same_height only");
    }
    finish_certificate(cert);
    return cert;
}

/// Residual form: holds when the measured residual stays within 288 delta.
template <class S>
BoundCertificate certify_backwards_control(const S& s, const typename S::Point& anchor1,
                                           const typename S::Point& anchor2, double t1, double t2,
                                           double t) {
    BoundCertificate cert;
    cert.kind = BoundKind::backwards_control;
    const double residual = backwards_control_residual(s, anchor1, anchor2, t1, t2, t);
    // Stored as lhs = allowance, rhs = measured residual so that the shared
    // convention holds <=> lhs >= rhs still applies.
    cert.lhs = BigScalar(288) * s.delta;
    cert.rhs = BigScalar::upper_bound_of(residual);
    cert.hypothesis_report = "t = " + std::to_string(t) + ", residual = " + std::to_string(residual);
    finish_certificate(cert);
    return cert;
}

}  // namespace horobowtie
