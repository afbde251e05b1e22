#include <horobowtie/horoproduct.hpp>
#include <horobowtie/serialize.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace horobowtie;

TEST_CASE("point validation") {
    auto s = make_dl_space(2, 2);
    CHECK_NOTHROW(make_horo_point(s, tree_origin(2), tree_origin(2)));
    CHECK_THROWS_AS(make_horo_point(s, make_tree_vertex(2, 1, {}), tree_origin(2)), HeightSumError);

    auto tb = make_horo_space(PlaneSpace{}, TreeSpace{2});
    CHECK_NOTHROW(make_horo_point(tb, PlanePoint{0, 2.0}, make_tree_vertex(2, -2, {{-2, 1}})));
    CHECK_THROWS_AS(make_horo_point(tb, PlanePoint{0, 2.0}, tree_origin(2)), HeightSumError);
}

TEST_CASE("coarse distance") {
    auto s = make_dl_space(2, 2);
    auto o = dl_origin_point(s);
    auto y = make_horo_point(s, make_tree_vertex(2, 0, {{0, 1}}), tree_origin(2));
    CHECK(coarse_distance(s, o, y) == 2.0);
    auto y2 = make_horo_point(s, make_tree_vertex(2, 2, {}), make_tree_vertex(2, -2, {{-2, 1}}));
    CHECK(coarse_distance(s, o, y2) == 2.0);
    CHECK(coarse_distance(s, o, o) == 0.0);
    CHECK(coarse_distance(s, o, y2) == coarse_distance(s, y2, o));
}

TEST_CASE("product verticals") {
    auto s = make_dl_space(2, 2);
    auto o = dl_origin_point(s);
    auto v3 = product_vertical_point(s, o, 3.0);
    CHECK(v3.p_part == make_tree_vertex(2, 3, {}));
    CHECK(v3.q_part == make_tree_vertex(2, -3, {}));
    CHECK(step_length(s, product_vertical_point(s, o, 0.0), product_vertical_point(s, o, 5.0)) == 5.0);
    CHECK(product_vertical_point(s, o, s.height(o)) == o);
}

TEST_CASE("serialization") {
    auto s = make_dl_space(2, 2);
    auto o = dl_origin_point(s);
    CHECK(serialize_horo_point(s, o) == "T2(h=0;)|T2(h=0;)");
}

TEST_CASE("dl ball structure") {
    auto g = dl_ball(2, 2, 2);
    // Degree p+q everywhere in the interior.
    CHECK(g.adj[g.origin].size() == 4);
    CHECK(g.vertices.size() > 10);
    auto g23 = dl_ball(2, 3, 2);
    CHECK(g23.adj[g23.origin].size() == 5);
    CHECK_THROWS_AS(dl_ball(2, 2, 12, 500), BudgetError);

    auto j = dl_to_json(g);
    CHECK(j["p"] == 2);
    CHECK(j["q"] == 2);
    auto names = j["vertices"].get<std::vector<std::string>>();
    CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("bfs equals coarse distance on valid pairs") {
    for (auto [p, q] : {std::pair{2, 2}, std::pair{2, 3}}) {
        auto g = dl_ball(p, q, 4);
        auto from_origin = dl_bfs_from(g, g.origin);
        for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
            auto di = dl_bfs_from(g, i);
            for (int j = 0; j < static_cast<int>(g.vertices.size()); ++j) {
                const double coarse = coarse_distance(g.space, g.vertices[i], g.vertices[j]);
                if (!dl_pair_valid(g, i, j, from_origin, static_cast<long long>(coarse))) continue;
                CHECK(static_cast<double>(di[j]) == coarse);
                // Lower bound by height difference.
                CHECK(coarse >= std::fabs(g.space.height(g.vertices[i]) - g.space.height(g.vertices[j])));
            }
        }
    }
}

TEST_CASE("geodesic enumeration") {
    auto g = dl_ball(2, 2, 4);
    auto o = dl_origin_point(g.space);
    auto y = make_horo_point(g.space, make_tree_vertex(2, 0, {{0, 1}}), tree_origin(2));
    auto geods = dl_all_geodesics(g, o, y);
    // The p-side goes up and back down picking digit 1; the q-side dips and
    // returns through either child, giving two distinct geodesics.
    CHECK(geods.size() == 2);
    for (const auto& path : geods) CHECK(path.size() == 3);
    auto self = dl_all_geodesics(g, o, o);
    CHECK(self.size() == 1);
    CHECK(self[0].size() == 1);
    CHECK_THROWS_AS(dl_index(g, make_horo_point(g.space, make_tree_vertex(2, 9, {}),
                                                make_tree_vertex(2, -9, {}))),
                    OutsideBallError);
}

TEST_CASE("build_path reproduces bfs distance on DL") {
    auto g = dl_ball(2, 2, 4);
    auto from_origin = dl_bfs_from(g, g.origin);
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
        auto di = dl_bfs_from(g, i);
        for (int j = 0; j < static_cast<int>(g.vertices.size()); ++j) {
            if (!dl_pair_valid(g, i, j, from_origin, di[j])) continue;
            auto plan = build_path(g.space, g.vertices[i], g.vertices[j]);
            CHECK(plan.total_length == static_cast<double>(di[j]));
            // Consecutive points are DL edges.
            for (std::size_t k = 1; k < plan.points.size(); ++k)
                CHECK(step_length(g.space, plan.points[k - 1], plan.points[k]) == 1.0);
            // Bridges vanish on tree x tree.
            CHECK(plan.a1 == plan.a2);
            CHECK(plan.a3 == plan.a4);
            auto cert = certify_build_path(g.space, plan, g.vertices[i], g.vertices[j]);
            CHECK(cert.holds);
        }
    }
}

TEST_CASE("build_path on plane x plane") {
    auto s = make_horo_space(PlaneSpace{}, PlaneSpace{});
    auto x = make_horo_point(s, PlanePoint{0, 0}, PlanePoint{0, 0});
    auto y = make_horo_point(s, PlanePoint{4, 0}, PlanePoint{4, 0});
    auto plan = build_path(s, x, y);
    CHECK(plan.points.front() == x);
    CHECK(plan.points.back() == y);
    // Connected polyline with finite N-length within the certified bound.
    auto cert = certify_build_path(s, plan, x, y);
    CHECK(cert.holds);
    CHECK(plan.total_length >= coarse_distance(s, x, y) - 1e-9);

    auto self = build_path(s, x, x);
    CHECK(self.total_length == 0.0);
}

TEST_CASE("sandwich property of the product path length") {
    auto s = make_dl_space(2, 2);
    auto g = dl_ball(2, 2, 3);
    auto from_origin = dl_bfs_from(g, g.origin);
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
        auto di = dl_bfs_from(g, i);
        for (int j = 0; j < static_cast<int>(g.vertices.size()); ++j) {
            if (!dl_pair_valid(g, i, j, from_origin, di[j])) continue;
            auto plan = build_path(g.space, g.vertices[i], g.vertices[j]);
            double lp = 0, lq = 0;
            for (std::size_t k = 1; k < plan.points.size(); ++k) {
                lp += g.space.left.distance(plan.points[k - 1].p_part, plan.points[k].p_part);
                lq += g.space.right.distance(plan.points[k - 1].q_part, plan.points[k].q_part);
            }
            CHECK(plan.total_length >= (lp + lq) / 2.0 - 1e-9);
            CHECK(plan.total_length <=
                  g.space.norm.c_norm_bound().to_double() * (lp + lq) / 2.0 + 1e-9);
        }
    }
}

TEST_CASE("vertical product lines are bfs geodesics") {
    auto g = dl_ball(2, 2, 5);
    auto o = dl_origin_point(g.space);
    for (long long t1 = -2; t1 <= 2; ++t1)
        for (long long t2 = -2; t2 <= 2; ++t2) {
            auto a = product_vertical_point(g.space, o, static_cast<double>(t1));
            auto b = product_vertical_point(g.space, o, static_cast<double>(t2));
            CHECK(dl_bfs_distance(g, a, b) == std::llabs(t1 - t2));
        }
}
