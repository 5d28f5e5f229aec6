#include "pedsim/metrics.hpp"

#include "pedsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pedsim {

namespace {

struct Sample {
    double time;
    Vec2 position;
    Vec2 velocity;
};

// Records grouped per agent, each series ordered by time. Input order
// (time, agent_id) guarantees per-agent time order.
std::map<std::int64_t, std::vector<Sample>> split_by_agent(
    std::span<const TrajectoryRecord> trajectory) {
    std::map<std::int64_t, std::vector<Sample>> series;
    for (const TrajectoryRecord& r : trajectory) {
        series[r.agent_id].push_back({r.time, r.position, r.velocity});
    }
    return series;
}

// Linear interpolation within the agent's own record span; nullopt outside
// it. Exact timestamp matches return the record untouched.
std::optional<Sample> sample_at(const std::vector<Sample>& series, double t) {
    if (series.empty() || t < series.front().time || t > series.back().time) {
        return std::nullopt;
    }
    auto it = std::lower_bound(series.begin(), series.end(), t,
                               [](const Sample& s, double value) { return s.time < value; });
    if (it != series.end() && it->time == t) return *it;
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    const double u = (t - lo.time) / (hi.time - lo.time);
    Sample out;
    out.time = t;
    out.position = lo.position + (hi.position - lo.position) * u;
    out.velocity = lo.velocity + (hi.velocity - lo.velocity) * u;
    return out;
}

std::pair<double, double> time_span(std::span<const TrajectoryRecord> trajectory) {
    if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
    return {trajectory.front().time, trajectory.back().time};
}

}  // namespace

MeasureRegion MeasureRegion::area(Vec2 rect_min, Vec2 rect_max) {
    if (!is_finite(rect_min) || !is_finite(rect_max)) {
        throw std::invalid_argument("measurement area corners must be finite");
    }
    if (rect_min.x >= rect_max.x || rect_min.y >= rect_max.y) {
        throw std::invalid_argument("measurement area must have positive extent on both axes");
    }
    MeasureRegion region;
    region.kind_ = Kind::area;
    region.rect_min_ = rect_min;
    region.rect_max_ = rect_max;
    return region;
}

MeasureRegion MeasureRegion::gate(Vec2 a, Vec2 b) {
    if (!is_finite(a) || !is_finite(b)) {
        throw std::invalid_argument("gate endpoints must be finite");
    }
    if (a == b) throw std::invalid_argument("gate endpoints must be distinct");
    MeasureRegion region;
    region.kind_ = Kind::gate;
    region.gate_a_ = a;
    region.gate_b_ = b;
    return region;
}

double MeasureRegion::area_size() const {
    if (kind_ != Kind::area) throw std::invalid_argument("region is not an area");
    return (rect_max_.x - rect_min_.x) * (rect_max_.y - rect_min_.y);
}

bool MeasureRegion::contains(Vec2 point) const {
    if (kind_ != Kind::area) throw std::invalid_argument("region is not an area");
    return in_half_open_rect(point, rect_min_, rect_max_);
}

std::optional<double> evacuation_time(std::span<const TrajectoryRecord> trajectory,
                                      const MeasureRegion& region) {
    if (region.kind() != MeasureRegion::Kind::area) {
        throw std::invalid_argument("evacuation_time needs an area region, got a gate");
    }
    if (trajectory.empty()) return 0.0;
    double last_inside = -std::numeric_limits<double>::infinity();
    for (const TrajectoryRecord& r : trajectory) {
        if (region.contains(r.position)) last_inside = std::max(last_inside, r.time);
    }
    if (last_inside == -std::numeric_limits<double>::infinity()) return 0.0;
    double earliest_after = std::numeric_limits<double>::infinity();
    for (const TrajectoryRecord& r : trajectory) {
        if (r.time > last_inside) earliest_after = std::min(earliest_after, r.time);
    }
    if (earliest_after == std::numeric_limits<double>::infinity()) return std::nullopt;
    return earliest_after;
}

GateFlow gate_flow(std::span<const TrajectoryRecord> trajectory, const MeasureRegion& gate,
                   double window) {
    if (gate.kind() != MeasureRegion::Kind::gate) {
        throw std::invalid_argument("gate_flow needs a gate region, got an area");
    }
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw std::invalid_argument("gate_flow window must be positive and finite");
    }
    GateFlow flow;
    if (trajectory.empty()) return flow;
    const auto [t_min, t_max] = time_span(trajectory);
    const double t_start = t_max - window;
    (void)t_min;
    for (const auto& [id, series] : split_by_agent(trajectory)) {
        for (std::size_t i = 1; i < series.size(); ++i) {
            if (series[i].time <= t_start) continue;
            const int sign = segment_crossing_sign(series[i - 1].position, series[i].position,
                                                   gate.gate_a(), gate.gate_b());
            flow.net_count += sign;
            flow.gross_count += std::abs(sign);
        }
    }
    flow.net_per_second = static_cast<double>(flow.net_count) / window;
    flow.gross_per_second = static_cast<double>(flow.gross_count) / window;
    return flow;
}

double density(std::span<const TrajectoryRecord> trajectory, const MeasureRegion& region,
               double t) {
    if (region.kind() != MeasureRegion::Kind::area) {
        throw std::invalid_argument("density needs an area region, got a gate");
    }
    const auto [t_min, t_max] = time_span(trajectory);
    if (t < t_min || t > t_max) {
        throw std::out_of_range("density time is outside the recorded span");
    }
    int inside = 0;
    for (const auto& [id, series] : split_by_agent(trajectory)) {
        const auto sample = sample_at(series, t);
        if (sample && region.contains(sample->position)) ++inside;
    }
    return static_cast<double>(inside) / region.area_size();
}

int queue_metric(std::span<const TrajectoryRecord> trajectory, double t, double speed_fraction,
                 const std::map<std::int64_t, double>& v_max_by_id) {
    if (!(speed_fraction > 0.0) || !(speed_fraction < 1.0)) {
        throw std::invalid_argument("speed_fraction must lie strictly between 0 and 1");
    }
    const auto [t_min, t_max] = time_span(trajectory);
    if (t < t_min || t > t_max) {
        throw std::out_of_range("queue_metric time is outside the recorded span");
    }
    int queued = 0;
    for (const auto& [id, series] : split_by_agent(trajectory)) {
        const auto sample = sample_at(series, t);
        if (!sample) continue;
        const auto it = v_max_by_id.find(id);
        if (it == v_max_by_id.end()) {
            throw std::invalid_argument("queue_metric: no v_max for agent " +
                                        std::to_string(id));
        }
        if (norm(sample->velocity) < speed_fraction * it->second) ++queued;
    }
    return queued;
}

}  // namespace pedsim
