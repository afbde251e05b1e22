#include <horobowtie/bigscalar.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace horobowtie;

TEST_CASE("exact arithmetic") {
    BigScalar a(1, 3), b(1, 6);
    CHECK(a + b == BigScalar(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == BigScalar(1, 18));
    CHECK(a / b == BigScalar(2));
    CHECK(BigScalar(2).pow(10) == BigScalar(1024));
    CHECK_THROWS(BigScalar(1) / BigScalar(0));
    CHECK_THROWS(BigScalar(1, 0));
}

TEST_CASE("pow2 handles negative exponents") {
    CHECK(BigScalar::pow2(0) == BigScalar(1));
    CHECK(BigScalar::pow2(10) == BigScalar(1024));
    CHECK(BigScalar::pow2(-3) == BigScalar(1, 8));
    CHECK(BigScalar::pow2(851) * BigScalar::pow2(-851) == BigScalar(1));
}

TEST_CASE("from_double is exact on dyadics") {
    CHECK(BigScalar::from_double(0.5) == BigScalar(1, 2));
    CHECK(BigScalar::from_double(3.0) == BigScalar(3));
    CHECK(BigScalar::from_double(-0.25) == BigScalar(-1, 4));
    CHECK_THROWS(BigScalar::from_double(std::nan("")));
}

TEST_CASE("upper_bound_of is a tight upper round") {
    double v = 1.7627471740390859;
    BigScalar u = BigScalar::upper_bound_of(v);
    CHECK(u >= BigScalar::from_double(v));
    CHECK(u - BigScalar::from_double(v) == BigScalar::pow2(-30));
    CHECK((u - BigScalar::from_double(v)).to_double() < 1e-6);
}

TEST_CASE("log2_approx on huge values") {
    CHECK(BigScalar::pow2(1702).log2_approx() == Catch::Approx(1702.0).margin(1e-9));
    CHECK(BigScalar(1024, 3).log2_approx() == Catch::Approx(10.0 - std::log2(3.0)).margin(1e-9));
    CHECK(BigScalar::pow2(-530).log2_approx() == Catch::Approx(-530.0).margin(1e-9));
    CHECK_THROWS(BigScalar(0).log2_approx());
}

TEST_CASE("floor") {
    CHECK(BigScalar(7, 2).floor() == 3);
    CHECK(BigScalar(-7, 2).floor() == -4);
    CHECK(BigScalar(4).floor() == 4);
}

TEST_CASE("pow2_lower is a sound lower bound") {
    CHECK(pow2_lower(BigScalar(400)) == BigScalar::pow2(400));
    BigScalar x(801, 2);  // 400.5
    BigScalar lo = pow2_lower(x);
    CHECK(lo > BigScalar::pow2(400));
    CHECK(lo < BigScalar::pow2(401));
    double expected = 400.5;
    CHECK(lo.log2_approx() == Catch::Approx(expected).margin(1e-8));
    // Soundness: the bound never exceeds the true power.
    CHECK(lo.log2_approx() <= expected + 1e-12);
}

TEST_CASE("fraction string round trip") {
    CHECK(BigScalar(22, 7).to_fraction_string() == "22/7");
    CHECK(BigScalar(4, 2).to_fraction_string() == "2/1");
}
