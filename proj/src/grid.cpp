#include "usolab/grid.hpp"

#include <algorithm>

namespace usolab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Size: return "size";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Sampling: return "sampling";
        case ErrorKind::Cyclic: return "cyclic";
        case ErrorKind::Reachability: return "reachability";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Pivot: return "pivot";
        case ErrorKind::Terminal: return "terminal";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

bool Face::contains(Vertex v) const {
    return std::binary_search(xs.begin(), xs.end(), v.x) &&
           std::binary_search(ys.begin(), ys.end(), v.y);
}

std::string to_string(const Face& f) {
    auto list = [](const std::vector<int>& values) {
        std::string out = "{";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(values[i]);
        }
        return out + "}";
    };
    return list(f.xs) + "x" + list(f.ys);
}

namespace {

// Rank values 0..size-1 each appearing exactly once.
bool is_permutation_of_range(const int* values, int size) {
    std::vector<char> seen(size, 0);
    for (int k = 0; k < size; ++k) {
        int r = values[k];
        if (r < 0 || r >= size || seen[r]) return false;
        seen[r] = 1;
    }
    return true;
}

} // namespace

GridOrientation::GridOrientation(GridShape shape, std::vector<int> row_rank,
                                 std::vector<int> col_rank)
    : shape_(shape), row_rank_(std::move(row_rank)), col_rank_(std::move(col_rank)) {
    const std::size_t want_rows = static_cast<std::size_t>(shape_.a) * shape_.b;
    if (row_rank_.size() != want_rows || col_rank_.size() != want_rows)
        throw Error(ErrorKind::InvalidInput, "rank matrices do not match shape " +
                                                 std::to_string(shape_.a) + "x" +
                                                 std::to_string(shape_.b));
    for (int y = 0; y < shape_.b; ++y)
        if (!is_permutation_of_range(&row_rank_[static_cast<std::size_t>(y) * shape_.a], shape_.a))
            throw Error(ErrorKind::InvalidInput,
                        "row " + std::to_string(y) + " of row_rank is not a permutation of 0.." +
                            std::to_string(shape_.a - 1));
    for (int x = 0; x < shape_.a; ++x)
        if (!is_permutation_of_range(&col_rank_[static_cast<std::size_t>(x) * shape_.b], shape_.b))
            throw Error(ErrorKind::InvalidInput,
                        "column " + std::to_string(x) +
                            " of col_rank is not a permutation of 0.." +
                            std::to_string(shape_.b - 1));
}

void GridOrientation::require_in_range(Vertex v) const {
    if (!in_range(v))
        throw Error(ErrorKind::InvalidInput, "vertex " + usolab::to_string(v) +
                                                 " out of range for shape " +
                                                 std::to_string(shape_.a) + "x" +
                                                 std::to_string(shape_.b));
}

std::vector<Vertex> VertexSet::to_vertices() const {
    std::vector<Vertex> out;
    for (int id = 0; id < shape_.vertex_count(); ++id)
        if (bits_.test(id)) out.push_back(Vertex{id % shape_.a, id / shape_.a});
    return out;
}

Outmap outmap(const GridOrientation& o, Vertex v) {
    o.require_in_range(v);
    Outmap phi;
    const int rx = o.row_rank(v.y, v.x);
    const int ry = o.col_rank(v.x, v.y);
    phi.phi_x.reserve(rx);
    phi.phi_y.reserve(ry);
    for (int x = 0; x < o.shape().a; ++x)
        if (o.row_rank(v.y, x) < rx) phi.phi_x.push_back(x);
    for (int y = 0; y < o.shape().b; ++y)
        if (o.col_rank(v.x, y) < ry) phi.phi_y.push_back(y);
    return phi;
}

std::pair<int, int> refined_out_degree(const GridOrientation& o, Vertex v) {
    o.require_in_range(v);
    return {o.row_rank(v.y, v.x), o.col_rank(v.x, v.y)};
}

std::vector<OutNeighbor> out_neighbors(const GridOrientation& o, Vertex v) {
    o.require_in_range(v);
    std::vector<OutNeighbor> out;
    const int rx = o.row_rank(v.y, v.x);
    const int ry = o.col_rank(v.x, v.y);
    out.reserve(static_cast<std::size_t>(rx) + ry);
    for (int x = 0; x < o.shape().a; ++x)
        if (o.row_rank(v.y, x) < rx)
            out.push_back(OutNeighbor{FacetIndex{Side::X, x}, Vertex{x, v.y}});
    for (int y = 0; y < o.shape().b; ++y)
        if (o.col_rank(v.x, y) < ry)
            out.push_back(OutNeighbor{FacetIndex{Side::Y, y}, Vertex{v.x, y}});
    return out;
}

bool is_sink_of_face(const GridOrientation& o, Vertex v, const Face& f) {
    o.require_in_range(v);
    if (!f.contains(v))
        throw Error(ErrorKind::InvalidInput,
                    "vertex " + to_string(v) + " is not in face " + to_string(f));
    const int rx = o.row_rank(v.y, v.x);
    for (int x : f.xs)
        if (x != v.x && o.row_rank(v.y, x) < rx) return false;
    const int ry = o.col_rank(v.x, v.y);
    for (int y : f.ys)
        if (y != v.y && o.col_rank(v.x, y) < ry) return false;
    return true;
}

} // namespace usolab
