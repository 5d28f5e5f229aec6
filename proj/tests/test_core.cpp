#include "pedsim/errors.hpp"
#include "pedsim/geometry.hpp"
#include "pedsim/rng.hpp"
#include "pedsim/vec2.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>

using namespace pedsim;

TEST_CASE("vec2 arithmetic") {
    const Vec2 a{3.0, 4.0};
    const Vec2 b{-1.0, 2.0};
    CHECK(a + b == Vec2{2.0, 6.0});
    CHECK(a - b == Vec2{4.0, 2.0});
    CHECK(a * 2.0 == Vec2{6.0, 8.0});
    CHECK(2.0 * a == Vec2{6.0, 8.0});
    CHECK(a / 2.0 == Vec2{1.5, 2.0});
    CHECK(-a == Vec2{-3.0, -4.0});
    CHECK(dot(a, b) == 5.0);
    CHECK(cross(a, b) == 10.0);
    CHECK(norm_sq(a) == 25.0);
    CHECK(norm(a) == 5.0);
    CHECK(distance(a, b) == doctest::Approx(std::sqrt(16.0 + 4.0)));
    Vec2 c = a;
    c += b;
    CHECK(c == Vec2{2.0, 6.0});
    c -= b;
    CHECK(c == a);
}

TEST_CASE("vec2 unit and finiteness") {
    CHECK(unit(Vec2{0.0, 0.0}) == Vec2{0.0, 0.0});
    CHECK(unit(Vec2{3.0, 4.0}) == Vec2{0.6, 0.8});
    CHECK(is_finite(Vec2{1.0, 2.0}));
    CHECK_FALSE(is_finite(Vec2{1.0, std::numeric_limits<double>::infinity()}));
    CHECK_FALSE(is_finite(Vec2{std::nan(""), 0.0}));
}

TEST_CASE("nearest point on segment") {
    const Vec2 a{0.0, 0.0};
    const Vec2 b{10.0, 0.0};
    CHECK(nearest_point_on_segment({3.0, 5.0}, a, b) == Vec2{3.0, 0.0});
    CHECK(nearest_point_on_segment({-2.0, 1.0}, a, b) == a);
    CHECK(nearest_point_on_segment({12.0, -1.0}, a, b) == b);
    // Degenerate segment: the single point.
    CHECK(nearest_point_on_segment({5.0, 5.0}, {1.0, 1.0}, {1.0, 1.0}) == Vec2{1.0, 1.0});
}

TEST_CASE("half-open rectangle membership") {
    const Vec2 lo{0.0, 0.0};
    const Vec2 hi{2.0, 1.0};
    CHECK(in_half_open_rect({0.0, 0.0}, lo, hi));
    CHECK(in_half_open_rect({1.9, 0.9}, lo, hi));
    CHECK_FALSE(in_half_open_rect({2.0, 0.5}, lo, hi));
    CHECK_FALSE(in_half_open_rect({0.5, 1.0}, lo, hi));
    CHECK_FALSE(in_half_open_rect({-0.1, 0.5}, lo, hi));
}

TEST_CASE("segment against open rectangle") {
    const Vec2 lo{1.0, 1.0};
    const Vec2 hi{2.0, 2.0};
    SUBCASE("pass-through crosses") {
        CHECK(segment_crosses_open_rect({0.0, 1.5}, {3.0, 1.5}, lo, hi));
        CHECK(segment_crosses_open_rect({1.5, 0.0}, {1.5, 3.0}, lo, hi));
        CHECK(segment_crosses_open_rect({0.0, 0.0}, {3.0, 3.0}, lo, hi));
    }
    SUBCASE("endpoint inside crosses") {
        CHECK(segment_crosses_open_rect({1.5, 1.5}, {5.0, 5.0}, lo, hi));
    }
    SUBCASE("fully outside misses") {
        CHECK_FALSE(segment_crosses_open_rect({0.0, 0.0}, {0.5, 3.0}, lo, hi));
        CHECK_FALSE(segment_crosses_open_rect({3.0, 0.0}, {3.0, 3.0}, lo, hi));
    }
    SUBCASE("edge-aligned touch does not cross") {
        CHECK_FALSE(segment_crosses_open_rect({0.0, 1.0}, {3.0, 1.0}, lo, hi));
        CHECK_FALSE(segment_crosses_open_rect({2.0, 0.0}, {2.0, 3.0}, lo, hi));
        CHECK_FALSE(segment_crosses_open_rect({1.0, 0.0}, {1.0, 3.0}, lo, hi));
    }
    SUBCASE("corner graze does not cross") {
        // y = x + 1 touches only the corner (1, 2).
        CHECK_FALSE(segment_crosses_open_rect({0.0, 1.0}, {2.0, 3.0}, lo, hi));
        CHECK_FALSE(segment_crosses_open_rect({2.0, 2.0}, {5.0, 5.0}, lo, hi));
    }
    SUBCASE("interior diagonal crosses") {
        CHECK(segment_crosses_open_rect({0.0, 3.0}, {3.0, 0.0}, lo, hi));
    }
}

TEST_CASE("segment crossing sign") {
    const Vec2 a{0.0, -1.0};
    const Vec2 b{0.0, 1.0};  // gate along +y; positive side is x < 0
    SUBCASE("left-to-right is negative, reverse positive") {
        CHECK(segment_crossing_sign({-0.5, 0.0}, {0.5, 0.0}, a, b) == -1);
        CHECK(segment_crossing_sign({0.5, 0.0}, {-0.5, 0.0}, a, b) == 1);
    }
    SUBCASE("no side change") {
        CHECK(segment_crossing_sign({0.5, 0.0}, {0.5, 0.5}, a, b) == 0);
        CHECK(segment_crossing_sign({-0.5, 0.0}, {-0.4, 0.5}, a, b) == 0);
    }
    SUBCASE("misses the gate extent") {
        CHECK(segment_crossing_sign({-0.5, 2.0}, {0.5, 2.0}, a, b) == 0);
        CHECK(segment_crossing_sign({-0.5, -1.5}, {0.5, -1.5}, a, b) == 0);
    }
    SUBCASE("endpoint on the line counts as positive side") {
        // Start on the line, end on the negative side: treated as a
        // positive-to-negative crossing.
        CHECK(segment_crossing_sign({0.0, 0.0}, {0.5, 0.0}, a, b) == -1);
        // Both on the line: no crossing.
        CHECK(segment_crossing_sign({0.0, 0.2}, {0.0, 0.4}, a, b) == 0);
    }
    SUBCASE("parallel motion never crosses") {
        CHECK(segment_crossing_sign({1.0, -5.0}, {1.0, 5.0}, a, b) == 0);
    }
}

TEST_CASE("splitmix64 reference sequences") {
    // Frozen against the reference algorithm evaluated independently.
    Rng r0(0);
    CHECK(r0.next_u64() == 0xe220a8397b1dcdafull);
    CHECK(r0.next_u64() == 0x6e789e6aa1b965f4ull);
    CHECK(r0.next_u64() == 0x06c45d188009454full);
    CHECK(r0.next_u64() == 0xf88bb8a8724c81ecull);
    Rng r42(42);
    CHECK(r42.next_u64() == 0xbdd732262feb6e95ull);
    CHECK(r42.next_u64() == 0x28efe333b266f103ull);
    Rng rbeef(0xDEADBEEFull);
    CHECK(rbeef.next_u64() == 0x4adfb90f68c9eb9bull);
}

TEST_CASE("uniform01 scaling and range") {
    Rng r(0);
    CHECK(r.uniform01() == 0.8833108082136426);
    Rng r2(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = r2.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian draws") {
    SUBCASE("frozen value") {
        Rng r(42);
        CHECK(r.gaussian(1.0) == 0.4147197504315305);
    }
    SUBCASE("sigma scales linearly") {
        Rng r1(9), r2(9);
        const double g1 = r1.gaussian(1.0);
        const double g2 = r2.gaussian(2.0);
        CHECK(g2 == 2.0 * g1);
    }
    SUBCASE("sigma zero returns zero but consumes two draws") {
        Rng a(5), b(5);
        CHECK(a.gaussian(0.0) == 0.0);
        b.next_u64();
        b.next_u64();
        CHECK(a.next_u64() == b.next_u64());
    }
    SUBCASE("negative sigma rejected") {
        Rng r(1);
        CHECK_THROWS_AS(r.gaussian(-0.1), std::invalid_argument);
    }
    SUBCASE("moments are plausible") {
        Rng r(2024);
        double sum = 0.0, sum_sq = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double g = r.gaussian(1.0);
            sum += g;
            sum_sq += g * g;
        }
        const double mean = sum / n;
        const double var = sum_sq / n - mean * mean;
        CHECK(std::abs(mean) < 0.03);
        CHECK(std::abs(var - 1.0) < 0.05);
    }
    SUBCASE("free function matches the method") {
        Rng a(77), b(77);
        CHECK(draw_gaussian(a, 1.5) == b.gaussian(1.5));
    }
}

TEST_CASE("error types carry their context") {
    const ScenarioError se("agents[3].mass", "must be positive");
    CHECK(se.locus() == "agents[3].mass");
    CHECK(std::string(se.what()) == "agents[3].mass: must be positive");
    const SimulationError sim(7, "driving", "non-finite force term");
    CHECK(sim.agent_id() == 7);
    CHECK(sim.term() == "driving");
    CHECK(std::string(sim.what()).find("agent 7") != std::string::npos);
}
