#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sifs/interval.hpp"

namespace sifs {

struct Box {
    Interval x, y;
};

inline bool boxes_overlap(const Box& a, const Box& b) { return overlaps(a.x, b.x) && overlaps(a.y, b.y); }

/// Uniform grid over conservative bounding boxes. Buckets only narrow the
/// candidate set; every reported pair still goes through exact predicates.
class SpatialHash {
public:
    SpatialHash(std::vector<Box> boxes, double pitch) : boxes_(std::move(boxes)), pitch_(pitch) {
        for (std::uint32_t i = 0; i < boxes_.size(); ++i) {
            auto [x0, x1, y0, y1] = range(boxes_[i]);
            for (std::int64_t cx = x0; cx <= x1; ++cx)
                for (std::int64_t cy = y0; cy <= y1; ++cy) cells_[key(cx, cy)].push_back(i);
        }
    }

    const std::vector<Box>& boxes() const { return boxes_; }

    /// Index pairs (i < j) whose boxes overlap, each reported once, sorted.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> candidate_pairs() const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (const auto& [k, members] : cells_) {
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    std::uint32_t i = members[a], j = members[b];
                    if (!boxes_overlap(boxes_[i], boxes_[j])) continue;
                    // Report from the first cell both boxes share.
                    auto ri = range(boxes_[i]);
                    auto rj = range(boxes_[j]);
                    if (key(std::max(ri[0], rj[0]), std::max(ri[2], rj[2])) != k) continue;
                    out.emplace_back(std::min(i, j), std::max(i, j));
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Stored indices whose boxes overlap `query`, sorted and unique.
    std::vector<std::uint32_t> query(const Box& q) const {
        std::vector<std::uint32_t> out;
        auto [x0, x1, y0, y1] = range(q);
        for (std::int64_t cx = x0; cx <= x1; ++cx) {
            for (std::int64_t cy = y0; cy <= y1; ++cy) {
                auto it = cells_.find(key(cx, cy));
                if (it == cells_.end()) continue;
                for (auto i : it->second)
                    if (boxes_overlap(boxes_[i], q)) out.push_back(i);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    std::array<std::int64_t, 4> range(const Box& b) const {
        auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / pitch_)); };
        return {cell(b.x.lo), cell(b.x.hi), cell(b.y.lo), cell(b.y.hi)};
    }
    static std::int64_t key(std::int64_t cx, std::int64_t cy) {
        return (cx + (std::int64_t{1} << 30)) * (std::int64_t{1} << 31) + (cy + (std::int64_t{1} << 30));
    }

    std::vector<Box> boxes_;
    double pitch_;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace sifs
