#include "pedsim/trajectory_io.hpp"

#include "pedsim/errors.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace pedsim {

namespace {

constexpr std::string_view kHeader = "time,agent_id,x,y,vx,vy";

bool record_order_less(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.agent_id < b.agent_id;
}

double parse_field_double(std::string_view field, const std::string& locus) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ScenarioError(locus, "expected a number, got '" + std::string(field) + "'");
    }
    return value;
}

std::int64_t parse_field_id(std::string_view field, const std::string& locus) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ScenarioError(locus, "expected an integer agent id, got '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 9);
    if (ec != std::errc{}) throw std::logic_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string write_trajectory(std::span<const TrajectoryRecord> records) {
    std::string out;
    out.reserve(records.size() * 48 + kHeader.size() + 1);
    out.append(kHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < records.size(); ++i) {
        const TrajectoryRecord& r = records[i];
        if (i > 0 && !record_order_less(records[i - 1], r)) {
            throw std::logic_error("write_trajectory: records not sorted by (time, agent_id)");
        }
        out.append(format_double(r.time));
        out.push_back(',');
        char idbuf[24];
        auto [ptr, ec] = std::to_chars(idbuf, idbuf + sizeof(idbuf), r.agent_id);
        if (ec != std::errc{}) throw std::logic_error("write_trajectory: id conversion failed");
        out.append(idbuf, ptr);
        out.push_back(',');
        out.append(format_double(r.position.x));
        out.push_back(',');
        out.append(format_double(r.position.y));
        out.push_back(',');
        out.append(format_double(r.velocity.x));
        out.push_back(',');
        out.append(format_double(r.velocity.y));
        out.push_back('\n');
    }
    return out;
}

std::vector<TrajectoryRecord> parse_trajectory(const std::string& text) {
    std::vector<TrajectoryRecord> records;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        ++line_no;
        const std::string locus = "trajectory line " + std::to_string(line_no);
        if (!saw_header) {
            if (line != kHeader) {
                throw ScenarioError(locus, "expected header '" + std::string(kHeader) + "'");
            }
            saw_header = true;
        } else if (!line.empty()) {
            std::string_view fields[6];
            std::size_t field_count = 0;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= line.size(); ++i) {
                if (i == line.size() || line[i] == ',') {
                    if (field_count >= 6) {
                        throw ScenarioError(locus, "expected 6 comma-separated fields");
                    }
                    fields[field_count++] = line.substr(start, i - start);
                    start = i + 1;
                }
            }
            if (field_count != 6) {
                throw ScenarioError(locus, "expected 6 comma-separated fields, got " +
                                               std::to_string(field_count));
            }
            TrajectoryRecord rec;
            rec.time = parse_field_double(fields[0], locus);
            rec.agent_id = parse_field_id(fields[1], locus);
            rec.position.x = parse_field_double(fields[2], locus);
            rec.position.y = parse_field_double(fields[3], locus);
            rec.velocity.x = parse_field_double(fields[4], locus);
            rec.velocity.y = parse_field_double(fields[5], locus);
            if (!std::isfinite(rec.time)) {
                throw ScenarioError(locus, "time must be finite");
            }
            if (!records.empty() && !record_order_less(records.back(), rec)) {
                throw ScenarioError(locus, "rows must be strictly increasing by (time, agent_id)");
            }
            records.push_back(rec);
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (!saw_header) {
        throw ScenarioError("trajectory line 1", "empty input, expected header");
    }
    return records;
}

}  // namespace pedsim
