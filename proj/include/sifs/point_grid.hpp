#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace sifs {

/// Uniform bucket grid over a fixed point set answering nearest-distance queries.
class PointGrid {
public:
    explicit PointGrid(std::span<const std::complex<double>> points) : points_(points.begin(), points.end()) {
        double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
        double max_x = -min_x, max_y = -min_x;
        for (auto p : points_) {
            min_x = std::min(min_x, p.real());
            max_x = std::max(max_x, p.real());
            min_y = std::min(min_y, p.imag());
            max_y = std::max(max_y, p.imag());
        }
        origin_ = {min_x, min_y};
        double extent = std::max({max_x - min_x, max_y - min_y, 1e-12});
        auto side = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(points_.size()))));
        side = std::clamp<std::int64_t>(side, 1, 4096);
        cell_ = extent / static_cast<double>(side);
        nx_ = static_cast<std::int64_t>((max_x - min_x) / cell_) + 1;
        ny_ = static_cast<std::int64_t>((max_y - min_y) / cell_) + 1;
        start_.assign(static_cast<std::size_t>(nx_ * ny_ + 1), 0);
        std::vector<std::size_t> cell_of(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) {
            cell_of[i] = index(cell_x(points_[i].real()), cell_y(points_[i].imag()));
            ++start_[cell_of[i] + 1];
        }
        for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
        order_.resize(points_.size());
        std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < points_.size(); ++i) order_[fill[cell_of[i]]++] = i;
    }

    /// Distance from q to the closest stored point.
    double nearest_distance(std::complex<double> q) const {
        // Queries outside the grid start from the nearest boundary cell.
        std::int64_t cx = std::clamp<std::int64_t>(cell_x(q.real()), 0, nx_ - 1);
        std::int64_t cy = std::clamp<std::int64_t>(cell_y(q.imag()), 0, ny_ - 1);
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t ring = 0;; ++ring) {
            // Any point outside the rings searched so far is at least this far away.
            double reach = distance_outside(q, cx, cy, ring);
            if (best <= reach) return best;
            bool any_cell = false;
            for (std::int64_t y = cy - ring; y <= cy + ring; ++y) {
                for (std::int64_t x = cx - ring; x <= cx + ring; ++x) {
                    if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring) continue;
                    if (x < 0 || y < 0 || x >= nx_ || y >= ny_) continue;
                    any_cell = true;
                    std::size_t c = index(x, y);
                    for (std::size_t k = start_[c]; k < start_[c + 1]; ++k)
                        best = std::min(best, std::abs(points_[order_[k]] - q));
                }
            }
            if (!any_cell) return best;
        }
    }

private:
    std::int64_t cell_x(double x) const { return static_cast<std::int64_t>(std::floor((x - origin_.real()) / cell_)); }
    std::int64_t cell_y(double y) const { return static_cast<std::int64_t>(std::floor((y - origin_.imag()) / cell_)); }
    std::size_t index(std::int64_t x, std::int64_t y) const {
        x = std::clamp<std::int64_t>(x, 0, nx_ - 1);
        y = std::clamp<std::int64_t>(y, 0, ny_ - 1);
        return static_cast<std::size_t>(y * nx_ + x);
    }
    // Lower bound on the distance from q to any cell outside the (2 ring + 1)^2 block.
    double distance_outside(std::complex<double> q, std::int64_t cx, std::int64_t cy, std::int64_t ring) const {
        if (ring == 0) return 0.0;
        double left = q.real() - (origin_.real() + static_cast<double>(cx - ring + 1) * cell_);
        double right = origin_.real() + static_cast<double>(cx + ring) * cell_ - q.real();
        double below = q.imag() - (origin_.imag() + static_cast<double>(cy - ring + 1) * cell_);
        double above = origin_.imag() + static_cast<double>(cy + ring) * cell_ - q.imag();
        return std::max(0.0, std::min({left, right, below, above}));
    }

    std::vector<std::complex<double>> points_;
    std::complex<double> origin_;
    double cell_ = 1.0;
    std::int64_t nx_ = 1, ny_ = 1;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> order_;
};

}  // namespace sifs
