#pragma once

#include <optional>
#include <string>
#include <vector>

#include "usolab/grid.hpp"

namespace usolab {

// Why a candidate orientation failed, as a checkable witness.
struct UsoWitness {
    enum class Kind {
        DoubleSink,       // face with two sinks
        NoSink,           // face with no sink (brute force only)
        CountingMismatch, // sink-count balance violated (polynomial method)
    };

    Kind kind = Kind::DoubleSink;
    Face face;                 // offending face (DoubleSink / NoSink)
    std::vector<Vertex> sinks; // its sinks (two for DoubleSink, empty for NoSink)
    std::string detail;        // human-readable one-liner

    bool operator==(const UsoWitness&) const = default;
};

struct UsoReport {
    enum class Method { Polynomial, BruteForce };

    bool is_uso = false;
    Method method = Method::Polynomial;
    std::optional<UsoWitness> witness;
    std::int64_t faces_checked = 0; // faces enumerated (brute force) or 2x2 faces examined

    bool operator==(const UsoReport&) const = default;
};

struct CycleReport {
    bool acyclic = false;
    std::vector<Vertex> cycle; // closed directed walk: cycle.front() == cycle.back()

    bool operator==(const CycleReport&) const = default;
};

// Builds a GridOrientation from raw matrices, reporting the first offending
// row/column by name. row_rank[y] has a entries; col_rank[x] has b entries.
GridOrientation validate_rank_matrices(int a, int b,
                                       const std::vector<std::vector<int>>& row_rank,
                                       const std::vector<std::vector<int>>& col_rank);

// Polynomial USO test, O(a^2 b^2), never enumerates faces. is_uso iff
//   (1) no 2x2 face has two sinks, and
//   (2) sum over v of 2^(a-1-i_v) * 2^(b-1-j_v) = (2^a-1)(2^b-1)
// in exact big-integer arithmetic, (i_v, j_v) the refined out-degree.
// Two sinks of a common face never share a row or column (row/column faces
// are transitive), so a double-sink face always yields a double-sink 2x2
// face; and each vertex is the sink of exactly 2^(a-1-i_v) * 2^(b-1-j_v)
// faces, so if no face has two sinks, the balance holds iff every face has
// exactly one. Witness is the lexicographically first violation in
// (x, x', y, y') scan order.
UsoReport validate_uso(const GridOrientation& o);

// Direct definition check: enumerates all (2^a-1)(2^b-1) faces and counts
// sinks per face. Guarded by max(a,b) <= guard (size error beyond).
UsoReport validate_uso_bruteforce(const GridOrientation& o, int guard = 12);

// Cycle detection on the full digraph; returns one directed closed walk as
// witness when cyclic.
CycleReport check_acyclic(const GridOrientation& o);

} // namespace usolab
