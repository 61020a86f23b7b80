#include "usolab/walk.hpp"

#include <algorithm>
#include <cmath>

#include "usolab/parallel.hpp"

namespace usolab {

std::string to_string(Pivot p) {
    if (p.is_terminal()) return "D";
    return std::string(1, side_char(p.facet->side)) + std::to_string(p.facet->index);
}

double WalkStats::stderr_mean() const {
    return trials > 0 ? std::sqrt(variance / static_cast<double>(trials)) : 0.0;
}

bool in_outmap(const GridOrientation& o, Vertex v, FacetIndex h) {
    o.require_in_range(v);
    if (h.side == Side::X)
        return h.index >= 0 && h.index < o.shape().a && h.index != v.x &&
               o.row_rank(v.y, h.index) < o.row_rank(v.y, v.x);
    return h.index >= 0 && h.index < o.shape().b && h.index != v.y &&
           o.col_rank(v.x, h.index) < o.col_rank(v.x, v.y);
}

Pivot pick_pivot(const GridOrientation& o, Vertex v, Rng& rng) {
    const auto outs = out_neighbors(o, v);
    if (outs.empty()) return Pivot::terminal();
    return Pivot::of(outs[rng.below(outs.size())].pivot);
}

Vertex step(const GridOrientation& o, Vertex v, Pivot h) {
    if (h.is_terminal())
        throw Error(ErrorKind::Terminal, "the terminal pivot is not a move");
    if (!in_outmap(o, v, *h.facet))
        throw Error(ErrorKind::Pivot, "pivot " + to_string(h) + " is not in the outmap of " +
                                          to_string(v));
    if (h.facet->side == Side::X) return Vertex{h.facet->index, v.y};
    return Vertex{v.x, h.facet->index};
}

WalkTrace run_walk(const GridOrientation& o, Vertex v0, std::uint64_t seed) {
    o.require_in_range(v0);
    WalkTrace trace;
    trace.start = v0;
    trace.seed = seed;
    trace.positions.push_back(v0);
    Rng rng(seed);
    Vertex v = v0;
    const std::int64_t cap = o.shape().vertex_count();
    for (;;) {
        const Pivot h = pick_pivot(o, v, rng);
        if (h.is_terminal()) {
            trace.terminated = true;
            return trace;
        }
        if (trace.length() >= cap)
            throw Error(ErrorKind::Cyclic,
                        "walk exceeded " + std::to_string(cap) +
                            " steps; the orientation is not a unique sink orientation");
        v = step(o, v, h);
        trace.pivots.push_back(h);
        trace.positions.push_back(v);
    }
}

WalkStats monte_carlo(const GridOrientation& o, Vertex v0, std::int64_t trials,
                      std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    std::vector<std::int64_t> lengths(trials);
    parallel_for(trials, [&](std::int64_t t) {
        lengths[t] = run_walk(o, v0, derive_seed(seed, static_cast<std::uint64_t>(t))).length();
    });

    WalkStats stats;
    stats.trials = trials;
    stats.min = lengths[0];
    stats.max = lengths[0];
    long double sum = 0.0L;
    for (std::int64_t len : lengths) {
        sum += len;
        stats.min = std::min(stats.min, len);
        stats.max = std::max(stats.max, len);
    }
    stats.mean = static_cast<double>(sum / trials);
    long double squares = 0.0L;
    for (std::int64_t len : lengths) {
        const long double d = len - stats.mean;
        squares += d * d;
    }
    stats.variance = trials > 1 ? static_cast<double>(squares / (trials - 1)) : 0.0;
    stats.histogram.assign(stats.max + 1, 0);
    for (std::int64_t len : lengths) ++stats.histogram[len];
    return stats;
}

StoppingTimes instrument_trace(const GridOrientation& o, const WalkTrace& trace,
                               const MilestoneChain& chain, int i) {
    if (i < 0 || i >= chain.L)
        throw Error(ErrorKind::Domain, "milestone index " + std::to_string(i) +
                                           " outside 0.." + std::to_string(chain.L - 1));
    if (!trace.terminated)
        throw Error(ErrorKind::Precondition, "trace must be a terminated walk");
    if (!chain.W[i + 1].contains(trace.start))
        throw Error(ErrorKind::Precondition,
                    "start " + to_string(trace.start) + " is not in W^" + std::to_string(i + 1));

    const Outmap phi_up = outmap(o, chain.w[i + 1]);
    const Outmap phi_lo = outmap(o, chain.w[i]);
    std::vector<char> up_x(o.shape().a, 0), up_y(o.shape().b, 0);
    std::vector<char> lo_x(o.shape().a, 0), lo_y(o.shape().b, 0);
    for (int x : phi_up.phi_x) up_x[x] = 1;
    for (int y : phi_up.phi_y) up_y[y] = 1;
    for (int x : phi_lo.phi_x) lo_x[x] = 1;
    for (int y : phi_lo.phi_y) lo_y[y] = 1;
    auto in_up = [&](FacetIndex h) {
        return h.side == Side::X ? up_x[h.index] != 0 : up_y[h.index] != 0;
    };
    auto in_lo = [&](FacetIndex h) {
        return h.side == Side::X ? lo_x[h.index] != 0 : lo_y[h.index] != 0;
    };

    StoppingTimes st;
    st.milestone_index = i;

    const std::int64_t t_end = trace.length();
    // scan the trace extended by one virtual terminal draw at the sink;
    // sigma and tau_N both land within k <= T+1
    std::int64_t sigma = 0;
    bool saw_x = false, saw_y = false, one_sided = true;
    std::vector<std::int64_t> taus;
    std::vector<Pivot> tau_pivots;
    std::int64_t n_hits = 0;

    for (std::int64_t k = 1; k <= t_end + 1; ++k) {
        const bool terminal = k > t_end;
        const Pivot h = terminal ? Pivot::terminal() : trace.pivots[k - 1];
        const bool q_sigma = terminal || in_up(*h.facet);
        const bool q_tau = q_sigma || in_lo(*h.facet);
        if (sigma == 0) {
            if (q_sigma) {
                sigma = k;
                one_sided = !(saw_x && saw_y);
            } else if (!terminal) {
                (h.facet->side == Side::X ? saw_x : saw_y) = true;
            }
        }
        if (q_tau && n_hits == 0) {
            taus.push_back(k);
            tau_pivots.push_back(h);
            const Vertex pos = terminal ? trace.positions[t_end] : trace.positions[k];
            if (chain.W[i].contains(pos)) n_hits = static_cast<std::int64_t>(taus.size());
        }
        if (sigma != 0 && n_hits != 0) break;
    }
    // the walk ends at the global sink, which lies in every W^i, so both
    // stopping times are found by k = T+1
    if (sigma == 0 || n_hits == 0)
        throw Error(ErrorKind::Internal, "stopping-time scan fell off the trace");

    st.sigma = sigma;
    st.n_hits = n_hits;
    st.taus = std::move(taus);
    st.pre_sigma_one_sided = one_sided;

    const Pivot h1 = tau_pivots[0];
    st.e1 = n_hits == 1 || (!h1.is_terminal() && in_lo(*h1.facet));
    if (!h1.is_terminal())
        st.xi = h1.facet->side == Side::X ? Side::Y : Side::X;
    else
        st.xi = Side::X; // immaterial: the position at tau_1 was already in W^i
    if (n_hits <= 2) {
        st.e2 = true;
    } else {
        const Pivot h2 = tau_pivots[1];
        st.e2 = !h2.is_terminal() && h2.facet->side == st.xi && in_lo(*h2.facet);
    }
    st.e3 = n_hits <= 3;
    return st;
}

std::string format_trace(const WalkTrace& trace) {
    std::string out;
    for (std::int64_t k = 1; k <= trace.length(); ++k) {
        const Vertex v = trace.positions[k - 1];
        const Pivot h = trace.pivots[k - 1];
        out += std::to_string(k) + " " + std::to_string(v.x) + " " + std::to_string(v.y) + " " +
               side_char(h.facet->side) + std::string(" ") + std::to_string(h.facet->index) +
               "\n";
    }
    if (trace.terminated) {
        const Vertex v = trace.positions.back();
        out += std::to_string(trace.length() + 1) + " " + std::to_string(v.x) + " " +
               std::to_string(v.y) + " D -\n";
    }
    return out;
}

} // namespace usolab
