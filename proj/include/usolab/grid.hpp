#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "usolab/bits.hpp"
#include "usolab/error.hpp"

namespace usolab {

// The grid is the product of two complete graphs K_a x K_b: the graph of a
// simple d-polytope with n = d+2 facets. Facets split into a row set X
// (indices 0..a-1) and a column set Y (indices 0..b-1); vertex (x,y) is the
// pair {x,y}. In serialized form Y-facets are numbered a..n-1.
struct GridShape {
    int a = 0; // |X|
    int b = 0; // |Y|

    GridShape(int a_, int b_) : a(a_), b(b_) {
        if (a < 2 || b < 2)
            throw Error(ErrorKind::InvalidInput,
                        "grid shape requires a >= 2 and b >= 2, got " + std::to_string(a) +
                            "x" + std::to_string(b));
    }

    int n() const { return a + b; }
    int d() const { return n() - 2; }
    int vertex_count() const { return a * b; }

    bool operator==(const GridShape&) const = default;
};

struct Vertex {
    int x = 0;
    int y = 0;

    auto operator<=>(const Vertex&) const = default;
};

inline std::string to_string(Vertex v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

enum class Side : std::uint8_t { X, Y };

inline char side_char(Side s) { return s == Side::X ? 'X' : 'Y'; }

// A facet named by its side and its index within that side.
struct FacetIndex {
    Side side = Side::X;
    int index = 0;

    auto operator<=>(const FacetIndex&) const = default;
};

// The outmap of a vertex, split by side: phi_x holds the X-facets and phi_y
// the Y-facets reachable along an outgoing edge. Both lists are ascending.
struct Outmap {
    std::vector<int> phi_x;
    std::vector<int> phi_y;

    bool operator==(const Outmap&) const = default;
};

// A nonempty sub-grid xs x ys; every face of the polytope has this form.
struct Face {
    std::vector<int> xs; // ascending, nonempty
    std::vector<int> ys; // ascending, nonempty

    bool contains(Vertex v) const;
    bool operator==(const Face&) const = default;
};

std::string to_string(const Face& f);

// An orientation of the grid edges in which every row and every column is a
// transitive tournament, encoded by rank matrices:
//   row_rank(y, x) = number of outgoing row-edges of (x,y),
//   col_rank(x, y) = number of outgoing column-edges of (x,y).
// Rank 0 marks the local sink of its line; every edge points from higher to
// lower rank. Row y of row_rank and column x of col_rank are permutations of
// their index ranges; the constructor rejects anything else. Instances are
// immutable.
class GridOrientation {
public:
    // row_rank indexed [y*a + x], col_rank indexed [x*b + y].
    GridOrientation(GridShape shape, std::vector<int> row_rank, std::vector<int> col_rank);

    const GridShape& shape() const { return shape_; }

    int row_rank(int y, int x) const { return row_rank_[static_cast<std::size_t>(y) * shape_.a + x]; }
    int col_rank(int x, int y) const { return col_rank_[static_cast<std::size_t>(x) * shape_.b + y]; }

    const std::vector<int>& row_rank_data() const { return row_rank_; }
    const std::vector<int>& col_rank_data() const { return col_rank_; }

    int vertex_index(Vertex v) const { return v.y * shape_.a + v.x; }
    Vertex vertex_at(int id) const { return Vertex{id % shape_.a, id / shape_.a}; }

    bool in_range(Vertex v) const {
        return v.x >= 0 && v.x < shape_.a && v.y >= 0 && v.y < shape_.b;
    }

    void require_in_range(Vertex v) const;

    bool operator==(const GridOrientation&) const = default;

private:
    GridShape shape_;
    std::vector<int> row_rank_;
    std::vector<int> col_rank_;
};

// A set of vertices of one grid, stored as a bitset over vertex ids
// (id = y*a + x).
class VertexSet {
public:
    explicit VertexSet(GridShape shape) : shape_(shape), bits_(shape.vertex_count()) {}

    const GridShape& shape() const { return shape_; }

    bool contains(Vertex v) const { return bits_.test(v.y * shape_.a + v.x); }
    void insert(Vertex v) { bits_.set(v.y * shape_.a + v.x); }
    void erase(Vertex v) { bits_.reset(v.y * shape_.a + v.x); }

    bool contains_id(int id) const { return bits_.test(id); }
    void insert_id(int id) { bits_.set(id); }

    int size() const { return bits_.count(); }
    bool empty() const { return !bits_.any(); }

    // Ascending by vertex id.
    std::vector<Vertex> to_vertices() const;

    const Bits& bits() const { return bits_; }

    bool operator==(const VertexSet&) const = default;

private:
    GridShape shape_;
    Bits bits_;
};

struct OutNeighbor {
    FacetIndex pivot;
    Vertex target;

    bool operator==(const OutNeighbor&) const = default;
};

// Outgoing edges of v, one per element of Phi(v); X-pivots first, ascending,
// then Y-pivots ascending.
std::vector<OutNeighbor> out_neighbors(const GridOrientation& o, Vertex v);

Outmap outmap(const GridOrientation& o, Vertex v);

// (|Phi_X(v)|, |Phi_Y(v)|), read directly off the rank matrices.
std::pair<int, int> refined_out_degree(const GridOrientation& o, Vertex v);

// True iff v has no outgoing edge to another vertex of f. Requires v in f.
bool is_sink_of_face(const GridOrientation& o, Vertex v, const Face& f);

} // namespace usolab
