#pragma once

#include "pedsim/vec2.hpp"

namespace pedsim {

// Closest point to p on segment [a, b]; endpoints clamp.
Vec2 nearest_point_on_segment(Vec2 p, Vec2 a, Vec2 b);

// Half-open box membership: [min, max) on both axes.
bool in_half_open_rect(Vec2 p, Vec2 rect_min, Vec2 rect_max);

// True if segment [a, b] passes through the open interior of the axis-
// aligned rectangle. Touching an edge or corner does not count.
bool segment_crosses_open_rect(Vec2 a, Vec2 b, Vec2 rect_min, Vec2 rect_max);

// Proper crossing of segment [p0, p1] against segment [a, b]: p0 and p1 on
// strictly opposite sides of line(a, b) with the hit inside [a, b]. A point
// exactly on the line counts as the positive side. Returns +1 for a
// negative-to-positive crossing, -1 for the reverse, 0 for no crossing.
int segment_crossing_sign(Vec2 p0, Vec2 p1, Vec2 a, Vec2 b);

}  // namespace pedsim
