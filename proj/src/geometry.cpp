#include "pedsim/geometry.hpp"

#include <algorithm>

namespace pedsim {

Vec2 nearest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len_sq = norm_sq(d);
    if (len_sq == 0.0) {
        return a;
    }
    const double t = std::clamp(dot(p - a, d) / len_sq, 0.0, 1.0);
    return a + d * t;
}

bool in_half_open_rect(Vec2 p, Vec2 rect_min, Vec2 rect_max) {
    return p.x >= rect_min.x && p.x < rect_max.x && p.y >= rect_min.y && p.y < rect_max.y;
}

bool segment_crosses_open_rect(Vec2 a, Vec2 b, Vec2 rect_min, Vec2 rect_max) {
    // Liang-Barsky clip against the closed box, then check that the middle
    // of the surviving span is strictly interior. A span that only runs
    // along an edge or touches a corner fails the interior test.
    double t0 = 0.0;
    double t1 = 1.0;
    const Vec2 d = b - a;
    const auto clip = [&](double p, double q) {
        if (p == 0.0) {
            return q >= 0.0;
        }
        const double r = q / p;
        if (p < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    if (!clip(-d.x, a.x - rect_min.x)) return false;
    if (!clip(d.x, rect_max.x - a.x)) return false;
    if (!clip(-d.y, a.y - rect_min.y)) return false;
    if (!clip(d.y, rect_max.y - a.y)) return false;
    if (t0 > t1) return false;
    const Vec2 mid = a + d * ((t0 + t1) * 0.5);
    return mid.x > rect_min.x && mid.x < rect_max.x && mid.y > rect_min.y &&
           mid.y < rect_max.y;
}

int segment_crossing_sign(Vec2 p0, Vec2 p1, Vec2 a, Vec2 b) {
    const Vec2 gate = b - a;
    const double side0 = cross(gate, p0 - a);
    const double side1 = cross(gate, p1 - a);
    const int sign0 = side0 >= 0.0 ? 1 : -1;
    const int sign1 = side1 >= 0.0 ? 1 : -1;
    if (sign0 == sign1) {
        return 0;
    }
    // Where along [a, b] does the movement segment pierce the gate line?
    const Vec2 move = p1 - p0;
    const double denom = cross(gate, move);
    const double u = cross(move, p0 - a) / -denom;
    if (u < 0.0 || u > 1.0) {
        return 0;
    }
    return sign1 > sign0 ? 1 : -1;
}

}  // namespace pedsim
