#include "pedsim/engine.hpp"
#include "pedsim/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

using namespace pedsim;

namespace {

TrajectoryRecord rec(double t, std::int64_t id, Vec2 pos, Vec2 vel = {}) {
    return {t, id, pos, vel};
}

// Crossing test written out longhand: side signs, then the intersection's
// station along the gate by projection.
int reference_crossing(Vec2 p0, Vec2 p1, Vec2 a, Vec2 b) {
    const Vec2 g = b - a;
    const double s0 = g.x * (p0.y - a.y) - g.y * (p0.x - a.x);
    const double s1 = g.x * (p1.y - a.y) - g.y * (p1.x - a.x);
    const bool pos0 = s0 >= 0.0;
    const bool pos1 = s1 >= 0.0;
    if (pos0 == pos1) return 0;
    const double t = s0 / (s0 - s1);
    const Vec2 hit{p0.x + (p1.x - p0.x) * t, p0.y + (p1.y - p0.y) * t};
    const double u =
        (g.x * (hit.x - a.x) + g.y * (hit.y - a.y)) / (g.x * g.x + g.y * g.y);
    if (u < 0.0 || u > 1.0) return 0;
    return pos1 ? 1 : -1;
}

}  // namespace

TEST_CASE("measurement region construction") {
    SUBCASE("area needs positive extent") {
        CHECK_THROWS_AS(MeasureRegion::area({2.0, 0.0}, {2.0, 5.0}), std::invalid_argument);
        CHECK_THROWS_AS(MeasureRegion::area({0.0, 5.0}, {2.0, 5.0}), std::invalid_argument);
        CHECK_THROWS_AS(MeasureRegion::area({3.0, 0.0}, {2.0, 5.0}), std::invalid_argument);
    }
    SUBCASE("gate needs distinct endpoints") {
        CHECK_THROWS_AS(MeasureRegion::gate({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
    }
    SUBCASE("area size and membership") {
        const MeasureRegion r = MeasureRegion::area({1.0, 1.0}, {3.0, 4.0});
        CHECK(r.kind() == MeasureRegion::Kind::area);
        CHECK(r.area_size() == 6.0);
        CHECK(r.contains({1.0, 1.0}));
        CHECK(r.contains({2.9, 3.9}));
        CHECK_FALSE(r.contains({3.0, 2.0}));
        CHECK_FALSE(r.contains({2.0, 4.0}));
        CHECK_FALSE(r.contains({0.9, 2.0}));
    }
    SUBCASE("kind mismatches are rejected") {
        const MeasureRegion gate = MeasureRegion::gate({0.0, 0.0}, {0.0, 2.0});
        CHECK_THROWS_AS((void)gate.area_size(), std::invalid_argument);
        CHECK_THROWS_AS((void)gate.contains({0.0, 0.0}), std::invalid_argument);
        CHECK(gate.gate_a() == Vec2{0.0, 0.0});
        CHECK(gate.gate_b() == Vec2{0.0, 2.0});
    }
}

TEST_CASE("evacuation_time") {
    const MeasureRegion room = MeasureRegion::area({0.0, 0.0}, {5.0, 5.0});
    SUBCASE("earliest record after the last occupant leaves") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {1.0, 1.0}),
            rec(1.0, 0, {2.0, 2.0}),
            rec(3.0, 0, {4.9, 4.9}),
            rec(3.05, 0, {5.1, 4.9}),
            rec(4.0, 0, {6.0, 4.9}),
        };
        const auto result = evacuation_time(t, room);
        REQUIRE(result.has_value());
        CHECK(*result == 3.05);
    }
    SUBCASE("governed by the slowest agent") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {1.0, 1.0}), rec(0.0, 1, {2.0, 2.0}),
            rec(1.0, 0, {6.0, 1.0}), rec(1.0, 1, {2.5, 2.0}),
            rec(2.0, 0, {6.0, 1.0}), rec(2.0, 1, {6.0, 2.0}),
            rec(3.0, 0, {6.0, 1.0}), rec(3.0, 1, {6.0, 2.0}),
        };
        const auto result = evacuation_time(t, room);
        REQUIRE(result.has_value());
        CHECK(*result == 2.0);
    }
    SUBCASE("never occupied reads as already evacuated") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {9.0, 9.0}),
                                                 rec(1.0, 0, {9.5, 9.0})};
        const auto result = evacuation_time(t, room);
        REQUIRE(result.has_value());
        CHECK(*result == 0.0);
    }
    SUBCASE("empty trajectory reads as already evacuated") {
        const auto result = evacuation_time({}, room);
        REQUIRE(result.has_value());
        CHECK(*result == 0.0);
    }
    SUBCASE("still inside at the end gives no answer") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {1.0, 1.0}),
                                                 rec(1.0, 0, {2.0, 2.0})};
        CHECK_FALSE(evacuation_time(t, room).has_value());
    }
    SUBCASE("gates are the wrong region kind") {
        const MeasureRegion gate = MeasureRegion::gate({0.0, 0.0}, {0.0, 2.0});
        CHECK_THROWS_AS((void)evacuation_time({}, gate), std::invalid_argument);
    }
}

TEST_CASE("gate_flow counting") {
    // Gate points up; walking rightward crosses positive-to-negative.
    const MeasureRegion gate = MeasureRegion::gate({5.0, 0.0}, {5.0, 10.0});
    SUBCASE("one rightward crossing") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {4.0, 5.0}),
                                                 rec(1.0, 0, {6.0, 5.0})};
        const GateFlow flow = gate_flow(t, gate, 10.0);
        CHECK(flow.net_count == -1);
        CHECK(flow.gross_count == 1);
        CHECK(flow.net_per_second == -0.1);
        CHECK(flow.gross_per_second == 0.1);
    }
    SUBCASE("one leftward crossing") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {6.0, 5.0}),
                                                 rec(1.0, 0, {4.0, 5.0})};
        const GateFlow flow = gate_flow(t, gate, 10.0);
        CHECK(flow.net_count == 1);
        CHECK(flow.gross_count == 1);
    }
    SUBCASE("back and forth cancels net but not gross") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {4.0, 5.0}),
            rec(1.0, 0, {6.0, 5.0}),
            rec(2.0, 0, {4.5, 5.0}),
        };
        const GateFlow flow = gate_flow(t, gate, 10.0);
        CHECK(flow.net_count == 0);
        CHECK(flow.gross_count == 2);
    }
    SUBCASE("landing exactly on the gate counts once, not twice") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {4.0, 5.0}),
            rec(1.0, 0, {5.0, 5.0}),
            rec(2.0, 0, {6.0, 5.0}),
        };
        const GateFlow flow = gate_flow(t, gate, 10.0);
        CHECK(flow.net_count == -1);
        CHECK(flow.gross_count == 1);
    }
    SUBCASE("misses beyond the gate extent") {
        const MeasureRegion low_gate = MeasureRegion::gate({5.0, 0.0}, {5.0, 2.0});
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {4.0, 5.0}),
                                                 rec(1.0, 0, {6.0, 5.0})};
        const GateFlow flow = gate_flow(t, low_gate, 10.0);
        CHECK(flow.net_count == 0);
        CHECK(flow.gross_count == 0);
    }
    SUBCASE("window limits which movement pairs count") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {4.0, 5.0}),
            rec(1.0, 0, {6.0, 5.0}),
            rec(9.0, 0, {6.5, 5.0}),
            rec(10.0, 0, {6.6, 5.0}),
        };
        CHECK(gate_flow(t, gate, 20.0).gross_count == 1);
        // A 5 s window ends the lookback at t=5; the crossing at t=1 is out.
        CHECK(gate_flow(t, gate, 5.0).gross_count == 0);
    }
    SUBCASE("empty trajectory flows nothing") {
        const GateFlow flow = gate_flow({}, gate, 10.0);
        CHECK(flow.net_count == 0);
        CHECK(flow.gross_count == 0);
    }
    SUBCASE("argument checking") {
        const MeasureRegion room = MeasureRegion::area({0.0, 0.0}, {5.0, 5.0});
        CHECK_THROWS_AS((void)gate_flow({}, room, 10.0), std::invalid_argument);
        CHECK_THROWS_AS((void)gate_flow({}, gate, 0.0), std::invalid_argument);
        CHECK_THROWS_AS((void)gate_flow({}, gate, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(
            (void)gate_flow({}, gate, std::numeric_limits<double>::infinity()),
            std::invalid_argument);
    }
}

TEST_CASE("gate_flow matches a longhand recount on random walks") {
    std::mt19937_64 gen(505);
    std::uniform_real_distribution<double> start(0.0, 10.0);
    std::uniform_real_distribution<double> hop(-0.6, 0.6);
    const Vec2 ga{5.0, 2.0};
    const Vec2 gb{5.0, 8.0};
    const MeasureRegion gate = MeasureRegion::gate(ga, gb);

    for (int trial = 0; trial < 20; ++trial) {
        const int agents = 8;
        const int steps = 50;
        std::vector<Vec2> pos(agents);
        for (Vec2& p : pos) p = {start(gen), start(gen)};
        std::vector<TrajectoryRecord> t;
        for (int s = 0; s < steps; ++s) {
            const double time = s * 0.1;
            for (int id = 0; id < agents; ++id) {
                if (s > 0) pos[id] += Vec2{hop(gen), hop(gen)};
                t.push_back(rec(time, id, pos[id]));
            }
        }
        for (const double window : {10.0, 2.0, 0.35}) {
            const GateFlow flow = gate_flow(t, gate, window);
            const double t_start = t.back().time - window;
            long net = 0;
            long gross = 0;
            std::map<std::int64_t, std::vector<TrajectoryRecord>> by_agent;
            for (const TrajectoryRecord& r : t) by_agent[r.agent_id].push_back(r);
            for (const auto& [id, series] : by_agent) {
                for (std::size_t i = 1; i < series.size(); ++i) {
                    if (series[i].time <= t_start) continue;
                    const int sign = reference_crossing(series[i - 1].position,
                                                        series[i].position, ga, gb);
                    net += sign;
                    gross += std::abs(sign);
                }
            }
            CHECK(flow.net_count == net);
            CHECK(flow.gross_count == gross);
            CHECK(flow.net_per_second == static_cast<double>(net) / window);
        }
    }
}

TEST_CASE("density") {
    const MeasureRegion region = MeasureRegion::area({0.0, 0.0}, {2.0, 2.0});
    SUBCASE("agents inside over region area") {
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {1.0, 1.0}), rec(0.0, 1, {3.0, 1.0}),
            rec(2.0, 0, {1.0, 1.0}), rec(2.0, 1, {3.0, 1.0}),
        };
        CHECK(density(t, region, 1.0) == 0.25);
        const MeasureRegion wide = MeasureRegion::area({0.0, 0.0}, {4.0, 2.0});
        CHECK(density(t, wide, 1.0) == 0.25);
        const MeasureRegion wider = MeasureRegion::area({0.0, 0.0}, {4.0, 4.0});
        CHECK(density(t, wider, 1.0) == 2.0 / 16.0);
    }
    SUBCASE("positions interpolate between records") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {0.5, 1.0}),
                                                 rec(1.0, 0, {3.5, 1.0})};
        // x(t) = 0.5 + 3t: inside until x reaches 2 at t=0.5.
        CHECK(density(t, region, 0.4) == 0.25);
        CHECK(density(t, region, 0.6) == 0.0);
    }
    SUBCASE("exact record times are used verbatim") {
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {1.0, 1.0}),
                                                 rec(1.0, 0, {5.0, 5.0})};
        CHECK(density(t, region, 0.0) == 0.25);
        CHECK(density(t, region, 1.0) == 0.0);
    }
    SUBCASE("agents outside their own span are not counted") {
        // Agent 0 vanishes after t=1 (arrived); agent 1 keeps the span open.
        const std::vector<TrajectoryRecord> t = {
            rec(0.0, 0, {1.0, 1.0}), rec(0.0, 1, {1.5, 1.0}),
            rec(1.0, 0, {1.0, 1.0}), rec(1.0, 1, {1.5, 1.0}),
            rec(3.0, 1, {1.5, 1.0}),
        };
        CHECK(density(t, region, 2.0) == 0.25);
        CHECK(density(t, region, 1.0) == 0.5);
    }
    SUBCASE("query time must lie in the recorded span") {
        const std::vector<TrajectoryRecord> t = {rec(1.0, 0, {1.0, 1.0}),
                                                 rec(2.0, 0, {1.0, 1.0})};
        CHECK_THROWS_AS((void)density(t, region, 0.5), std::out_of_range);
        CHECK_THROWS_AS((void)density(t, region, 2.5), std::out_of_range);
        CHECK_THROWS_AS((void)density({}, region, 0.0), std::invalid_argument);
    }
    SUBCASE("gates are the wrong region kind") {
        const MeasureRegion gate = MeasureRegion::gate({0.0, 0.0}, {0.0, 2.0});
        const std::vector<TrajectoryRecord> t = {rec(0.0, 0, {1.0, 1.0})};
        CHECK_THROWS_AS((void)density(t, gate, 0.0), std::invalid_argument);
    }
}

TEST_CASE("queue_metric") {
    const std::map<std::int64_t, double> v_max = {{0, 2.0}, {1, 2.0}, {2, 2.0}};
    const std::vector<TrajectoryRecord> t = {
        rec(0.0, 0, {1.0, 1.0}, {0.1, 0.0}),
        rec(0.0, 1, {2.0, 1.0}, {0.0, 0.39}),
        rec(0.0, 2, {3.0, 1.0}, {0.5, 0.0}),
        rec(1.0, 0, {1.1, 1.0}, {0.1, 0.0}),
        rec(1.0, 1, {2.0, 1.4}, {0.0, 0.39}),
        rec(1.0, 2, {3.5, 1.0}, {0.5, 0.0}),
    };
    SUBCASE("counts speeds below the fraction of each v_max") {
        // Threshold 0.4: speeds 0.1 and 0.39 qualify, 0.5 does not.
        CHECK(queue_metric(t, 0.5, 0.2, v_max) == 2);
        CHECK(queue_metric(t, 0.5, 0.05, v_max) == 0);
    }
    SUBCASE("threshold is strict") {
        // fraction 0.25 puts the threshold exactly at 0.5; agent 2 is not
        // slower than that.
        CHECK(queue_metric(t, 0.0, 0.25, v_max) == 2);
    }
    SUBCASE("agents beyond their span are skipped before the v_max lookup") {
        std::vector<TrajectoryRecord> shorter = t;
        shorter.push_back(rec(2.0, 1, {2.0, 1.8}, {0.0, 0.39}));
        const std::map<std::int64_t, double> only_one = {{1, 2.0}};
        CHECK(queue_metric(shorter, 2.0, 0.2, only_one) == 1);
    }
    SUBCASE("a present agent without a v_max entry is an error") {
        const std::map<std::int64_t, double> missing = {{0, 2.0}, {1, 2.0}};
        CHECK_THROWS_AS((void)queue_metric(t, 0.5, 0.2, missing), std::invalid_argument);
    }
    SUBCASE("fraction bounds are strict") {
        CHECK_THROWS_AS((void)queue_metric(t, 0.5, 0.0, v_max), std::invalid_argument);
        CHECK_THROWS_AS((void)queue_metric(t, 0.5, 1.0, v_max), std::invalid_argument);
        CHECK_THROWS_AS((void)queue_metric(t, 0.5, -0.2, v_max), std::invalid_argument);
        CHECK_THROWS_AS((void)queue_metric(t, 0.5, 1.5, v_max), std::invalid_argument);
    }
    SUBCASE("query time must lie in the recorded span") {
        CHECK_THROWS_AS((void)queue_metric(t, 5.0, 0.2, v_max), std::out_of_range);
    }
}
