#pragma once

#include "pedsim/engine.hpp"
#include "pedsim/vec2.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>

namespace pedsim {

// A measurement probe: either an axis-aligned rectangle (half-open on both
// axes) or a directed gate segment from a to b.
class MeasureRegion {
  public:
    enum class Kind { area, gate };

    static MeasureRegion area(Vec2 rect_min, Vec2 rect_max);
    static MeasureRegion gate(Vec2 a, Vec2 b);

    Kind kind() const { return kind_; }
    Vec2 rect_min() const { return rect_min_; }
    Vec2 rect_max() const { return rect_max_; }
    Vec2 gate_a() const { return gate_a_; }
    Vec2 gate_b() const { return gate_b_; }
    double area_size() const;
    bool contains(Vec2 point) const;

  private:
    MeasureRegion() = default;
    Kind kind_ = Kind::area;
    Vec2 rect_min_{}, rect_max_{};
    Vec2 gate_a_{}, gate_b_{};
};

struct GateFlow {
    long net_count = 0;    // signed crossings, right-to-left across a->b positive
    long gross_count = 0;  // crossings regardless of direction
    double net_per_second = 0.0;
    double gross_per_second = 0.0;
};

// Earliest recorded time t such that no agent is inside the region at any
// recorded time >= t. Returns 0 when the region is never occupied, and
// nullopt when someone is still inside at the final record.
std::optional<double> evacuation_time(std::span<const TrajectoryRecord> trajectory,
                                      const MeasureRegion& region);

// Counts sign-changes of recorded positions across the gate segment over
// the window [t_end - window, t_end] where t_end is the final record time.
// A crossing counts +1 when the agent passes from the right side of a->b
// to the left side (counterclockwise positive).
GateFlow gate_flow(std::span<const TrajectoryRecord> trajectory, const MeasureRegion& gate,
                   double window);

// Agents inside the region at time t (positions linearly interpolated
// between records) divided by region area. t must lie within the recorded
// time span.
double density(std::span<const TrajectoryRecord> trajectory, const MeasureRegion& region,
               double t);

// Number of agents whose interpolated speed at time t is below
// speed_fraction * v_max. Agents without a record span covering t (already
// arrived and removed) are not counted.
int queue_metric(std::span<const TrajectoryRecord> trajectory, double t, double speed_fraction,
                 const std::map<std::int64_t, double>& v_max_by_id);

}  // namespace pedsim
