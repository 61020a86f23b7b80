#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usolab/analyze.hpp"
#include "usolab/grid.hpp"
#include "usolab/rng.hpp"

namespace usolab {

// A pivot is either a facet or the terminal marker (drawn at the global
// sink, where the outmap is empty).
struct Pivot {
    std::optional<FacetIndex> facet; // nullopt = terminal marker

    static Pivot terminal() { return Pivot{std::nullopt}; }
    static Pivot of(FacetIndex f) { return Pivot{f}; }
    static Pivot x(int index) { return Pivot{FacetIndex{Side::X, index}}; }
    static Pivot y(int index) { return Pivot{FacetIndex{Side::Y, index}}; }

    bool is_terminal() const { return !facet.has_value(); }

    bool operator==(const Pivot&) const = default;
};

std::string to_string(Pivot p);

// One Random-Edge run: positions v_0..v_T and pivots h_1..h_T, where h_k is
// the pivot drawn at v_{k-1} and v_k its target. The terminal pivot is not
// stored; instrumentation extends the trace virtually past the sink.
struct WalkTrace {
    Vertex start;
    std::vector<Vertex> positions; // v_0..v_T
    std::vector<Pivot> pivots;     // h_1..h_T, all non-terminal
    std::uint64_t seed = 0;
    bool terminated = false;

    std::int64_t length() const { return static_cast<std::int64_t>(pivots.size()); }
};

// The section-3 stopping times of one trace against milestone index i:
//   sigma: first k with h_k in Phi(w^{i+1}) or h_k terminal;
//   tau_1 < tau_2 < ...: the k with h_k in Phi(w^{i+1}) u Phi(w^i) or terminal;
//   N: first j with v_{tau_j} in W^i.
// Events: E1: v_{tau_1} in W^i or h_{tau_1} in Phi(w^i);
//         E2: v_{tau_2} in W^i or h_{tau_2} in Phi_xi(w^i), xi the side not
//             containing h_{tau_1};
//         E3: v_{tau_3} in W^i (equivalent to N <= 3).
struct StoppingTimes {
    int milestone_index = 0;
    std::int64_t sigma = 0;
    std::vector<std::int64_t> taus; // tau_1..tau_N
    std::int64_t n_hits = 0;        // N
    bool e1 = false, e2 = false, e3 = false;
    Side xi = Side::X; // side not containing h_{tau_1}; X when h_{tau_1} terminal
    bool pre_sigma_one_sided = false; // h_1..h_{sigma-1} all on one side
};

struct WalkStats {
    std::int64_t trials = 0;
    double mean = 0.0;
    double variance = 0.0; // sample variance (n-1 denominator; 0 for one trial)
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::vector<std::int64_t> histogram; // histogram[len] = walks of that length

    double stderr_mean() const;
};

// Membership h in Phi(v), read off the rank matrices.
bool in_outmap(const GridOrientation& o, Vertex v, FacetIndex h);

// Terminal at the global sink; otherwise uniform over Phi(v).
Pivot pick_pivot(const GridOrientation& o, Vertex v, Rng& rng);

// Coordinate replacement along the pivot facet. Pivot error when h is not
// in Phi(v); terminal error when h is the terminal marker.
Vertex step(const GridOrientation& o, Vertex v, Pivot h);

// Runs Random-Edge from v0 until the global sink. A step budget of a*b
// trips a cyclicity error (impossible on a USO, whose walks finish within
// a*b - 1 steps).
WalkTrace run_walk(const GridOrientation& o, Vertex v0, std::uint64_t seed);

// `trials` independent walks with seeds derived per trial index; lengths
// aggregated in trial order (bit-stable under any scheduling).
WalkStats monte_carlo(const GridOrientation& o, Vertex v0, std::int64_t trials,
                      std::uint64_t seed);

// Stopping times of a finished trace for milestone index i. The start must
// lie in W^{i+1} (precondition error) and 0 <= i <= L-1 (domain error).
StoppingTimes instrument_trace(const GridOrientation& o, const WalkTrace& trace,
                               const MilestoneChain& chain, int i);

// One line per step: "k v.x v.y side index" with the position before the
// pivot; a final line records the terminal draw at the sink as "D -".
std::string format_trace(const WalkTrace& trace);

} // namespace usolab
