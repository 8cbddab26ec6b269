#pragma once

#include "vcpot/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace vcpot {

// Uniform symmetric grid on the ball B(0, radius). Cell centers sit at
// (k + 1/2) h for k in [-K, K-1], so the center set is symmetric under
// negation and covers the ball with at least one cell of margin.
struct GridSpec {
    int n = 3;
    double radius = 1.0;
    double h = 1.0 / 64.0;

    GridSpec() = default;
    GridSpec(int n_, double radius_, double h_) : n(n_), radius(radius_), h(h_) { validate(); }

    void validate() const {
        if (n != 2 && n != 3) throw config_error("GridSpec: n must be 2 or 3");
        if (!(radius > 0)) throw config_error("GridSpec: radius must be positive");
        if (!(h > 0) || !(h < radius)) throw config_error("GridSpec: need 0 < h < radius");
    }

    // Half cell count per axis.
    int half_cells() const { return static_cast<int>(std::ceil(radius / h + 0.5)) + 1; }
    int cells_per_axis() const { return 2 * half_cells(); }
    int points_per_axis() const { return cells_per_axis() + 1; }

    std::int64_t cell_count() const {
        std::int64_t c = 1;
        for (int i = 0; i < n; ++i) c *= cells_per_axis();
        return c;
    }
    std::int64_t point_count() const {
        std::int64_t c = 1;
        for (int i = 0; i < n; ++i) c *= points_per_axis();
        return c;
    }

    double cell_coord(int k) const { return (k - half_cells() + 0.5) * h; }
    double point_coord(int k) const { return (k - half_cells()) * h; }

    // Mixed-radix decode of a flat cell index into center coordinates.
    void cell_center(std::int64_t idx, double* x) const {
        const int m = cells_per_axis();
        for (int i = n - 1; i >= 0; --i) {
            x[i] = cell_coord(static_cast<int>(idx % m));
            idx /= m;
        }
    }

    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < n; ++i) v *= h;
        return v;
    }
};

} // namespace vcpot
