#include "usolab/validate.hpp"

#include <atomic>
#include <gmpxx.h>

#include "usolab/parallel.hpp"

namespace usolab {

GridOrientation validate_rank_matrices(int a, int b,
                                       const std::vector<std::vector<int>>& row_rank,
                                       const std::vector<std::vector<int>>& col_rank) {
    GridShape shape(a, b);
    if (row_rank.size() != static_cast<std::size_t>(b))
        throw Error(ErrorKind::InvalidInput,
                    "row_rank has " + std::to_string(row_rank.size()) + " rows, expected " +
                        std::to_string(b));
    if (col_rank.size() != static_cast<std::size_t>(a))
        throw Error(ErrorKind::InvalidInput,
                    "col_rank has " + std::to_string(col_rank.size()) + " columns, expected " +
                        std::to_string(a));
    for (int y = 0; y < b; ++y)
        if (row_rank[y].size() != static_cast<std::size_t>(a))
            throw Error(ErrorKind::InvalidInput,
                        "row " + std::to_string(y) + " of row_rank has " +
                            std::to_string(row_rank[y].size()) + " entries, expected " +
                            std::to_string(a));
    for (int x = 0; x < a; ++x)
        if (col_rank[x].size() != static_cast<std::size_t>(b))
            throw Error(ErrorKind::InvalidInput,
                        "column " + std::to_string(x) + " of col_rank has " +
                            std::to_string(col_rank[x].size()) + " entries, expected " +
                            std::to_string(b));

    std::vector<int> rows(static_cast<std::size_t>(a) * b);
    std::vector<int> cols(static_cast<std::size_t>(a) * b);
    for (int y = 0; y < b; ++y)
        for (int x = 0; x < a; ++x) rows[static_cast<std::size_t>(y) * a + x] = row_rank[y][x];
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) cols[static_cast<std::size_t>(x) * b + y] = col_rank[x][y];
    return GridOrientation(shape, std::move(rows), std::move(cols));
}

namespace {

Face face2x2(int x1, int x2, int y1, int y2) { return Face{{x1, x2}, {y1, y2}}; }

// The two sinks of a double-sink face never share a row or column, so they
// sit on a diagonal of some 2x2 face; scanning both diagonals of every 2x2
// face in (x1, x2, y1, y2) order finds the lexicographically first one.
std::optional<UsoWitness> find_double_sink_pair(const GridOrientation& o) {
    const int a = o.shape().a;
    const int b = o.shape().b;

    std::vector<std::optional<UsoWitness>> per_x1(a);
    std::atomic<int> best_x1{a};
    parallel_for(a - 1, [&](std::int64_t x1i) {
        const int x1 = static_cast<int>(x1i);
        if (x1 > best_x1.load(std::memory_order_relaxed)) return;
        for (int x2 = x1 + 1; x2 < a; ++x2) {
            for (int y1 = 0; y1 + 1 < b; ++y1) {
                const int r1 = o.row_rank(y1, x1);
                const int r2 = o.row_rank(y1, x2);
                for (int y2 = y1 + 1; y2 < b; ++y2) {
                    // main diagonal: (x1,y1) and (x2,y2)
                    if (r1 < r2 && o.row_rank(y2, x2) < o.row_rank(y2, x1) &&
                        o.col_rank(x1, y1) < o.col_rank(x1, y2) &&
                        o.col_rank(x2, y2) < o.col_rank(x2, y1)) {
                        per_x1[x1] = UsoWitness{UsoWitness::Kind::DoubleSink,
                                                face2x2(x1, x2, y1, y2),
                                                {Vertex{x1, y1}, Vertex{x2, y2}},
                                                "two sinks " + to_string(Vertex{x1, y1}) +
                                                    " and " + to_string(Vertex{x2, y2})};
                        int cur = best_x1.load(std::memory_order_relaxed);
                        while (x1 < cur &&
                               !best_x1.compare_exchange_weak(cur, x1,
                                                              std::memory_order_relaxed)) {
                        }
                        return;
                    }
                    // anti diagonal: (x2,y1) and (x1,y2)
                    if (r2 < r1 && o.row_rank(y2, x1) < o.row_rank(y2, x2) &&
                        o.col_rank(x2, y1) < o.col_rank(x2, y2) &&
                        o.col_rank(x1, y2) < o.col_rank(x1, y1)) {
                        per_x1[x1] = UsoWitness{UsoWitness::Kind::DoubleSink,
                                                face2x2(x1, x2, y1, y2),
                                                {Vertex{x2, y1}, Vertex{x1, y2}},
                                                "two sinks " + to_string(Vertex{x2, y1}) +
                                                    " and " + to_string(Vertex{x1, y2})};
                        int cur = best_x1.load(std::memory_order_relaxed);
                        while (x1 < cur &&
                               !best_x1.compare_exchange_weak(cur, x1,
                                                              std::memory_order_relaxed)) {
                        }
                        return;
                    }
                }
            }
        }
    });

    for (int x1 = 0; x1 < a; ++x1)
        if (per_x1[x1]) return per_x1[x1];
    return std::nullopt;
}

} // namespace

UsoReport validate_uso(const GridOrientation& o) {
    const int a = o.shape().a;
    const int b = o.shape().b;

    UsoReport report;
    report.method = UsoReport::Method::Polynomial;
    report.faces_checked =
        (static_cast<std::int64_t>(a) * (a - 1) / 2) * (static_cast<std::int64_t>(b) * (b - 1) / 2);

    if (auto witness = find_double_sink_pair(o)) {
        report.is_uso = false;
        report.witness = std::move(witness);
        return report;
    }

    // Each vertex is the sink of exactly 2^(a-1-i) * 2^(b-1-j) faces, so with
    // no double-sink face the totals balance iff every face has its sink.
    std::vector<std::int64_t> exponent_count(static_cast<std::size_t>(a + b - 1), 0);
    for (int y = 0; y < b; ++y)
        for (int x = 0; x < a; ++x) {
            const int e = (a - 1 - o.row_rank(y, x)) + (b - 1 - o.col_rank(x, y));
            ++exponent_count[e];
        }
    mpz_class total = 0;
    for (int e = 0; e < a + b - 1; ++e)
        if (exponent_count[e]) {
            mpz_class term = exponent_count[e];
            total += term << e;
        }
    mpz_class expected = ((mpz_class(1) << a) - 1) * ((mpz_class(1) << b) - 1);

    if (total != expected) {
        report.is_uso = false;
        report.witness =
            UsoWitness{UsoWitness::Kind::CountingMismatch,
                       Face{},
                       {},
                       "sink-count balance " + total.get_str() + " != " + expected.get_str()};
        return report;
    }
    report.is_uso = true;
    return report;
}

UsoReport validate_uso_bruteforce(const GridOrientation& o, int guard) {
    const int a = o.shape().a;
    const int b = o.shape().b;
    if (a > guard || b > guard)
        throw Error(ErrorKind::Size, "shape " + std::to_string(a) + "x" + std::to_string(b) +
                                         " exceeds the enumeration guard " +
                                         std::to_string(guard));

    UsoReport report;
    report.method = UsoReport::Method::BruteForce;

    std::vector<int> xs, ys;
    for (std::uint32_t mx = 1; mx < (1u << a); ++mx) {
        xs.clear();
        for (int x = 0; x < a; ++x)
            if (mx & (1u << x)) xs.push_back(x);
        for (std::uint32_t my = 1; my < (1u << b); ++my) {
            ys.clear();
            for (int y = 0; y < b; ++y)
                if (my & (1u << y)) ys.push_back(y);
            ++report.faces_checked;

            std::vector<Vertex> sinks;
            for (int y : ys) {
                // the row-minimum is the only sink candidate of its row
                int best_x = xs[0];
                for (int x : xs)
                    if (o.row_rank(y, x) < o.row_rank(y, best_x)) best_x = x;
                int rank = o.col_rank(best_x, y);
                bool col_min = true;
                for (int y2 : ys)
                    if (o.col_rank(best_x, y2) < rank) {
                        col_min = false;
                        break;
                    }
                if (col_min) sinks.push_back(Vertex{best_x, y});
            }
            if (sinks.size() != 1) {
                report.is_uso = false;
                report.witness = UsoWitness{
                    sinks.empty() ? UsoWitness::Kind::NoSink : UsoWitness::Kind::DoubleSink,
                    Face{xs, ys}, sinks,
                    sinks.empty() ? "face with no sink"
                                  : "face with " + std::to_string(sinks.size()) + " sinks"};
                return report;
            }
        }
    }
    report.is_uso = true;
    return report;
}

CycleReport check_acyclic(const GridOrientation& o) {
    const int count = o.shape().vertex_count();
    // 0 = unvisited, 1 = on the current DFS path, 2 = done
    std::vector<unsigned char> color(count, 0);
    std::vector<int> parent(count, -1);

    // iterative DFS; frame = (vertex id, next out-neighbor offset)
    std::vector<std::pair<int, std::size_t>> stack;
    std::vector<std::vector<OutNeighbor>> outs_cache(count);

    for (int root = 0; root < count; ++root) {
        if (color[root]) continue;
        stack.clear();
        stack.emplace_back(root, 0);
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (outs_cache[v].empty() && next == 0) outs_cache[v] = out_neighbors(o, o.vertex_at(v));
            const auto& outs = outs_cache[v];
            if (next == outs.size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            int t = o.vertex_index(outs[next].target);
            ++next;
            if (color[t] == 0) {
                color[t] = 1;
                parent[t] = v;
                stack.emplace_back(t, 0);
            } else if (color[t] == 1) {
                // back edge v -> t closes a cycle t -> ... -> v -> t
                std::vector<Vertex> cycle;
                cycle.push_back(o.vertex_at(t));
                std::vector<Vertex> path;
                for (int u = v; u != t; u = parent[u]) path.push_back(o.vertex_at(u));
                for (auto it = path.rbegin(); it != path.rend(); ++it) cycle.push_back(*it);
                cycle.push_back(o.vertex_at(t));
                return CycleReport{false, std::move(cycle)};
            }
        }
    }
    return CycleReport{true, {}};
}

} // namespace usolab
