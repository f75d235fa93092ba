#pragma once

// Regular test fixtures shared between the unit and acceptance suites.

#include <string>

#include "mobgraph/construct.hpp"

namespace testgrids {

// rows x cols partition of unit squares; region (i, j) covers
// [j, j+1] x [i, i+1] and is labelled "r<i>c<j>". Rings counter-clockwise.
inline mobgraph::Partition grid_partition(int rows, int cols) {
    mobgraph::Partition p;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            auto x = static_cast<double>(j);
            auto y = static_cast<double>(i);
            mobgraph::Region r;
            r.id = "r" + std::to_string(i) + "c" + std::to_string(j);
            r.polygons = {{{{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}, {x, y}}}};
            p.regions.push_back(std::move(r));
        }
    return p;
}

} // namespace testgrids
