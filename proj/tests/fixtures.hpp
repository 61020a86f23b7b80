#pragma once

// Hand-built orientations shared across the test binaries.

#include <numeric>
#include <vector>

#include "usolab/grid.hpp"
#include "usolab/rng.hpp"

namespace usolab::fixtures {

// Uniform random rank-matrix candidate: every row and column is an
// independent uniform permutation. Usually not a USO; the distribution is
// exactly the one rejection sampling filters.
inline GridOrientation random_candidate(GridShape shape, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> rows(static_cast<std::size_t>(shape.a) * shape.b);
    std::vector<int> cols(static_cast<std::size_t>(shape.a) * shape.b);
    std::vector<int> line;
    for (int y = 0; y < shape.b; ++y) {
        line.resize(shape.a);
        std::iota(line.begin(), line.end(), 0);
        rng.shuffle(line);
        for (int x = 0; x < shape.a; ++x) rows[static_cast<std::size_t>(y) * shape.a + x] = line[x];
    }
    for (int x = 0; x < shape.a; ++x) {
        line.resize(shape.b);
        std::iota(line.begin(), line.end(), 0);
        rng.shuffle(line);
        for (int y = 0; y < shape.b; ++y) cols[static_cast<std::size_t>(x) * shape.b + y] = line[y];
    }
    return GridOrientation(shape, std::move(rows), std::move(cols));
}

// 2x2 orientation of the potential f(x,y) = alpha[x] + beta[y] with
// alpha = (0,1), beta = (0,2): sums 0,1,2,3, sink (0,0), source (1,1),
// refined out-degrees {(0,0),(1,0),(0,1),(1,1)}.
inline GridOrientation linear2x2() {
    return GridOrientation(GridShape(2, 2), {0, 1, 0, 1}, {0, 1, 0, 1});
}

// 2x2 candidate whose full face has the two sinks (0,0) and (1,1): row 0
// points left, row 1 points right, column 0 points down, column 1 points up.
// Rows and columns are transitive (trivially, length 2) but the unique-sink
// property fails on the full face.
inline GridOrientation doubleSink2x2() {
    return GridOrientation(GridShape(2, 2), {0, 1, 1, 0}, {0, 1, 1, 0});
}

// 3x3 candidate with the directed 6-cycle
//   (0,0) -> (1,0) -> (1,1) -> (2,1) -> (2,2) -> (0,2) -> (0,0)
// alternating row and column edges. Every row and column is transitive, so
// the rank encoding accepts it, but the orientation is cyclic (hence not a
// unique sink orientation).
inline GridOrientation rotor3x3() {
    return GridOrientation(GridShape(3, 3),
                           {1, 0, 2,   // row y=0: x2 -> x0 -> x1
                            0, 2, 1,   // row y=1: x1 -> x2 -> x0
                            1, 0, 2},  // row y=2: x2 -> x0 -> x1
                           {1, 0, 2,   // col x=0: y2 -> y0 -> y1
                            1, 0, 2,   // col x=1: y2 -> y0 -> y1
                            2, 1, 0}); // col x=2: y0 -> y1 -> y2
}

// The canonical linear orientation: every edge points toward the smaller
// coordinate, rank = coordinate. Sink (0,0), source (a-1,b-1), refined
// out-degree of (x,y) is exactly (x,y).
inline GridOrientation canonical(int a, int b) {
    std::vector<int> rows, cols;
    for (int y = 0; y < b; ++y)
        for (int x = 0; x < a; ++x) rows.push_back(x);
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) cols.push_back(y);
    return GridOrientation(GridShape(a, b), std::move(rows), std::move(cols));
}

// All 16 rank-matrix candidates on the 2x2 grid: each row points left or
// right, each column up or down.
inline std::vector<GridOrientation> all2x2Candidates() {
    std::vector<GridOrientation> out;
    const std::vector<int> fwd = {0, 1}, rev = {1, 0};
    for (int m = 0; m < 16; ++m) {
        std::vector<int> rows, cols;
        for (int y = 0; y < 2; ++y) {
            const auto& line = (m >> y) & 1 ? rev : fwd;
            rows.insert(rows.end(), line.begin(), line.end());
        }
        for (int x = 0; x < 2; ++x) {
            const auto& line = (m >> (2 + x)) & 1 ? rev : fwd;
            cols.insert(cols.end(), line.begin(), line.end());
        }
        out.emplace_back(GridShape(2, 2), std::move(rows), std::move(cols));
    }
    return out;
}

} // namespace usolab::fixtures
