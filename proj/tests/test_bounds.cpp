#include <horobowtie/horoball_bounds.hpp>
#include <horobowtie/serialize.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace horobowtie;

TEST_CASE("amande bound arithmetic") {
    // delta = 1, both height gaps 5, d = 800: 10 + 2^14 - 24.
    CHECK(amande_bound(BigScalar(1), BigScalar(5), BigScalar(5), BigScalar(800)) ==
          BigScalar(16370));
    // Just above the hypothesis threshold the exponential term is tiny.
    auto near = amande_bound(BigScalar(1), BigScalar(5), BigScalar(5), BigScalar(769));
    CHECK(near > BigScalar(-14));
    CHECK(near < BigScalar(-13));
    CHECK_THROWS_AS(amande_bound(BigScalar(1), BigScalar(0), BigScalar(0), BigScalar(768)),
                    HypothesisError);
    CHECK_THROWS_AS(amande_bound(BigScalar(1), BigScalar(-1), BigScalar(0), BigScalar(800)),
                    std::invalid_argument);
}

TEST_CASE("below same height bound arithmetic") {
    CHECK(below_same_height_bound(BigScalar(1), BigScalar(100), BigScalar(600)) ==
          BigScalar(100) + BigScalar::pow2(70) - BigScalar(1224));
    auto near = below_same_height_bound(BigScalar(1), BigScalar(0), BigScalar(556));
    CHECK(near > BigScalar::pow2(25));
    CHECK(near < BigScalar::pow2(27));
    CHECK_THROWS_AS(below_same_height_bound(BigScalar(1), BigScalar(0), BigScalar(555)),
                    HypothesisError);
}

TEST_CASE("below and reach bound arithmetic") {
    CHECK(below_and_reach_bound(BigScalar(1), BigScalar(0), BigScalar(10), BigScalar(0)) ==
          BigScalar(10) + BigScalar::pow2(-850) - BigScalar(1) - BigScalar(1700));
    // Deep regime: dominated by the exponential term.
    auto deep = below_and_reach_bound(BigScalar(1), BigScalar(3), BigScalar(10), BigScalar(900));
    CHECK(deep > BigScalar::pow2(49));
    // Negative delta-H exercises the max(0, .) branch exactly.
    CHECK(below_and_reach_bound(BigScalar(1), BigScalar(0), BigScalar(0), BigScalar(-10)) ==
          BigScalar::pow2(-860) - BigScalar(1701));
    CHECK_THROWS_AS(below_and_reach_bound(BigScalar(1), BigScalar(-1), BigScalar(0), BigScalar(0)),
                    std::invalid_argument);
}

TEST_CASE("backwards control residual is exactly zero on trees") {
    TreeSpace s{2};
    auto a1 = tree_origin(2);
    auto a2 = make_tree_vertex(2, 0, {{0, 1}});
    CHECK(backwards_control_residual(s, a1, a2, 0.0, 0.0, 0.0) == 0.0);
    CHECK(backwards_control_residual(s, a1, a2, 0.0, 0.0, 1.0) == 0.0);
    // Different anchor heights.
    CHECK(backwards_control_residual(s, a1, a2, 0.0, 1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(backwards_control_residual(s, a1, a2, 0.0, 0.0, 1.5), std::invalid_argument);

    // Exhaustive over ball anchors and admissible integer t.
    auto ball = generate_ball(2, tree_origin(2), 3);
    for (const auto& u : ball.vertices)
        for (const auto& v : ball.vertices) {
            const double dr = tree_relative_distance(u, v);
            for (double t = 0.0; t <= dr / 2.0; t += 1.0)
                CHECK(backwards_control_residual(s, u, v, double(u.n), double(v.n), t) == 0.0);
        }
}

TEST_CASE("backwards control residual on the plane stays within the allowance") {
    PlaneSpace s;
    // Verticals x = 0 and x = 2 from height 0, walked back by half the
    // admissible range (d_r here is acosh(3)).
    const double dr0 = relative_distance(s, PlanePoint{0, 0}, PlanePoint{2, 0});
    const double r =
        backwards_control_residual(s, PlanePoint{0, 0}, PlanePoint{2, 0}, 0.0, 0.0, dr0 / 4.0);
    CHECK(r > 0.0);
    CHECK(r < 288.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-20.0, 20.0), uz(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        PlanePoint a1{ux(rng), 0.0}, a2{ux(rng), 0.0};
        const double t1 = uz(rng), t2 = uz(rng);
        const double dr = relative_distance(s, s.vertical_point(a1, t1), s.vertical_point(a2, t2));
        std::uniform_real_distribution<double> ut(0.0, dr / 2.0);
        const double t = dr > 0 ? ut(rng) : 0.0;
        auto cert = certify_backwards_control(s, a1, a2, t1, t2, t);
        CHECK(cert.holds);
        CHECK(cert.lhs == BigScalar(288));
    }
}

TEST_CASE("capped path certification on the plane") {
    PlaneSpace s;
    BoundContext<PlaneSpace> ctx;
    ctx.x = PlanePoint{0, 0};
    ctx.y = PlanePoint{4, 0};
    auto path = plane_geodesic(ctx.x, ctx.y, 101);

    SECTION("below_and_reach holds on a measured geodesic") {
        ctx.m = ctx.x;  // h- of the geodesic is the endpoint height
        auto cert = certify_capped_path(s, path, ctx, BoundKind::below_and_reach);
        CHECK(cert.holds);
        CHECK(cert.kind == BoundKind::below_and_reach);
        auto j = certificate_to_json(cert);
        CHECK(j["kind"] == "below_and_reach");
        CHECK(j["holds"] == true);
    }
    SECTION("hypothesis validation") {
        auto truncated = path;
        truncated.pop_back();
        ctx.m = ctx.x;
        CHECK_THROWS_AS(certify_capped_path(s, truncated, ctx, BoundKind::below_and_reach),
                        HypothesisError);
        CHECK_THROWS_AS(certify_capped_path(s, path, ctx, BoundKind::amande), HypothesisError);
        ctx.t0 = 0.5;  // below the geodesic apex
        CHECK_THROWS_AS(certify_capped_path(s, path, ctx, BoundKind::amande), HypothesisError);
        ctx.m.reset();
        CHECK_THROWS_AS(certify_capped_path(s, path, ctx, BoundKind::below_and_reach),
                        HypothesisError);
        CHECK_THROWS_AS(certify_capped_path(s, path, ctx, BoundKind::backwards_control),
                        HypothesisError);
    }
}

TEST_CASE("tree degeneration: no tree path fits under a cap below confluence") {
    TreeSpace s{2};
    auto ball = generate_ball(2, tree_origin(2), 3);
    int rejected = 0;
    for (const auto& u : ball.vertices)
        for (const auto& v : ball.vertices) {
            const long long H = confluence_level(u, v);
            if (H - 1 < std::max(u.n, v.n)) continue;  // cap would sit below an endpoint
            BoundContext<TreeSpace> ctx;
            ctx.x = u;
            ctx.y = v;
            ctx.t0 = double(H - 1);
            // Any path joining u and v reaches the confluence level, so every
            // candidate (here: the geodesic) violates the height cap.
            CHECK_THROWS_AS(certify_capped_path(s, tree_geodesic(u, v), ctx, BoundKind::amande),
                            HypothesisError);
            ++rejected;
        }
    CHECK(rejected > 100);
}

TEST_CASE("deep horocycle certificates in the genuine hypothesis regime") {
    auto a = deep_horocycle_certificate(BoundKind::amande, 555);
    CHECK(a.holds);
    CHECK(a.lhs == BigScalar::pow2(555));
    CHECK(a.slack_log2 > 500.0);
    CHECK_THROWS_AS(deep_horocycle_certificate(BoundKind::amande, 400), HypothesisError);

    auto b = deep_horocycle_certificate(BoundKind::below_same_height, 803);
    CHECK(b.holds);
    CHECK(b.slack_log2 > 700.0);
    CHECK_THROWS_AS(deep_horocycle_certificate(BoundKind::below_same_height, 700),
                    HypothesisError);
    CHECK_THROWS_AS(deep_horocycle_certificate(BoundKind::backwards_control, 555),
                    std::invalid_argument);

    auto j = certificate_to_json(a);
    CHECK(j["kind"] == "amande");
    CHECK(j["holds"] == true);
    CHECK(j["rhs_log2"].get<double>() < 1.0);
}
