#include <horobowtie/serialize.hpp>
#include <horobowtie/space.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace horobowtie;

TEST_CASE("tree space contract") {
    TreeSpace s{2};
    auto o = s.base_point();
    CHECK(s.height(o) == 0.0);
    auto a = make_tree_vertex(2, 0, {{0, 1}});
    CHECK(s.distance(o, a) == 2.0);
    CHECK(relative_distance(s, o, a) == 2.0);
    CHECK(delta_h(s, o, a) == 0.0);
    CHECK(s.vertical_point(a, 2) == make_tree_vertex(2, 2, {}));
    CHECK_THROWS(s.vertical_point(a, 0.5));
    auto g = s.geodesic(o, a, 0);
    CHECK(g.size() == 3);
    CHECK(s.geodesic_point_at(o, a, 1) == make_tree_vertex(2, 1, {}));
}

TEST_CASE("plane space contract") {
    PlaneSpace s;
    CHECK(s.height({7.2, -1.5}) == -1.5);
    CHECK(s.distance({0, 0}, {0, 5}) == Catch::Approx(5.0));
    CHECK(relative_distance(s, {0, 0}, {2, 0}) == Catch::Approx(std::acosh(3.0)));
    CHECK(s.vertical_point({3, 1}, -2.0) == PlanePoint{3, -2});
}

TEST_CASE("vertical geodesics are height parametrized isometries") {
    PlaneSpace s;
    PlanePoint x{3, 1};
    for (double t1 = -4; t1 <= 4; t1 += 0.7)
        for (double t2 = -4; t2 <= 4; t2 += 0.7)
            CHECK(s.distance(s.vertical_point(x, t1), s.vertical_point(x, t2)) ==
                  Catch::Approx(std::fabs(t1 - t2)).margin(1e-9));
}

TEST_CASE("verticals contract toward the upward end") {
    // d(V1(t), V2(t)) is non-increasing in t, the convexity proxy used by the
    // horoball bounds.
    PlaneSpace s;
    PlanePoint a{0, 0}, b{5, 0};
    double prev = 1e300;
    for (double t = -3; t <= 12; t += 0.25) {
        double d = s.distance(s.vertical_point(a, t), s.vertical_point(b, t));
        CHECK(d <= prev + 1e-9);
        prev = d;
    }
    TreeSpace ts{2};
    auto u = make_tree_vertex(2, 0, {{0, 1}, {1, 1}});
    auto o = tree_origin(2);
    prev = 1e300;
    for (long long t = -3; t <= 6; ++t) {
        double d = ts.distance(ts.vertical_point(u, static_cast<double>(t)),
                               ts.vertical_point(o, static_cast<double>(t)));
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("height is 1-Lipschitz on random tree pairs") {
    auto ball = generate_ball(2, tree_origin(2), 5);
    TreeSpace s{2};
    for (const auto& u : ball.vertices)
        for (const auto& v : ball.vertices)
            CHECK(delta_h(s, u, v) <= s.distance(u, v));
}

TEST_CASE("merge witnesses on trees are exact") {
    TreeSpace s{2};
    auto o = tree_origin(2);
    auto a = make_tree_vertex(2, 0, {{0, 1}});
    auto w = lem0_witnesses(s, o, a);
    auto top = make_tree_vertex(2, 1, {});
    CHECK(w.z == top);
    CHECK(w.x1 == top);
    CHECK(w.y1 == top);
    CHECK(w.d_z_x1 == 0.0);
    CHECK(w.d_z_y1 == 0.0);
    CHECK(w.d_x1_y1 == 0.0);
    CHECK(w.hplus_lower == Catch::Approx(1.0 - 96.0));

    auto ball = generate_ball(2, tree_origin(2), 4);
    for (const auto& u : ball.vertices)
        for (const auto& v : ball.vertices) {
            if (u.n > v.n) continue;
            auto ws = lem0_witnesses(s, u, v);
            CHECK(ws.d_z_x1 == 0.0);
            CHECK(ws.d_z_y1 == 0.0);
            CHECK(ws.d_x1_y1 == 0.0);
            CHECK(static_cast<double>(confluence_level(u, v)) >= ws.hplus_lower);
        }
    CHECK_THROWS_AS(lem0_witnesses(s, make_tree_vertex(2, 1, {}), o), OrientationError);
}

TEST_CASE("merge witnesses on the plane satisfy the ledger bounds") {
    PlaneSpace s;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ux(-8, 8), uz(-4, 4);
    for (int i = 0; i < 200; ++i) {
        PlanePoint x{ux(rng), uz(rng)}, y{ux(rng), uz(rng)};
        if (x.z > y.z) std::swap(x, y);
        auto w = lem0_witnesses(s, x, y);
        CHECK(std::fabs(s.height(w.x1) - (y.z + relative_distance(s, x, y) / 2.0)) < 1e-9);
        CHECK(w.d_z_x1 <= 144.0);
        CHECK(w.d_z_y1 <= 144.0);
        CHECK(w.d_x1_y1 <= 288.0);
        CHECK(plane_geodesic_max_height(x, y) >= w.hplus_lower);
    }
    PlanePoint x{0, 0}, y{2, 0};
    auto w = lem0_witnesses(s, x, y);
    CHECK(w.hplus_lower == Catch::Approx(std::acosh(3.0) / 2.0 - 96.0).margin(1e-12));
    auto w2 = lem0_witnesses(s, x, x);
    CHECK(w2.z == x);
    CHECK(w2.x1 == x);
}

TEST_CASE("same height projection gap") {
    TreeSpace ts{2};
    auto ball = generate_ball(2, tree_origin(2), 4);
    for (const auto& u : ball.vertices)
        for (const auto& v : ball.vertices)
            if (u.n <= v.n) CHECK(same_height_projection_gap(ts, u, v) == 0.0);

    PlaneSpace ps;
    CHECK(same_height_projection_gap(ps, {0, 0}, {2, 0}) == Catch::Approx(0.0).margin(1e-12));
    const double gap = same_height_projection_gap(ps, {0, -3}, {2, 0});
    CHECK(gap <= 54.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-8, 8), uz(-4, 4);
    for (int i = 0; i < 200; ++i) {
        PlanePoint x{ux(rng), uz(rng)}, y{ux(rng), uz(rng)};
        if (x.z > y.z) std::swap(x, y);
        CHECK(same_height_projection_gap(ps, x, y) <= 54.0);
    }
}

TEST_CASE("witness JSON") {
    TreeSpace s{2};
    auto w = lem0_witnesses(s, tree_origin(2), make_tree_vertex(2, 0, {{0, 1}}));
    auto j = lem0_to_json(s, w);
    CHECK(j["z"] == "T2(h=1;)");
    CHECK(j["hplus_lower"].get<double>() == Catch::Approx(-95.0));
}
