#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "usolab/analyze.hpp"
#include "usolab/generate.hpp"
#include "usolab/validate.hpp"
#include "usolab/walk.hpp"

namespace usolab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyViolation = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

// Pooled empirical frequencies of the section-3 events for one milestone
// transition (or for a whole instance when pooled across indices).
struct ClaimsRecord {
    std::int64_t traces = 0;     // instrumented traces
    std::int64_t e1 = 0;         // E1 occurrences
    std::int64_t e2_given_e1 = 0;
    std::int64_t e3_given_e12 = 0;
    std::int64_t adjacency_violations = 0;
    std::int64_t sum_n = 0; // sum of N over traces (exact, so pooling is order-free)

    double p1() const;        // E1 frequency
    double p2() const;        // E2 frequency among E1 traces
    double p3() const;        // E3 frequency among E1&E2 traces
    double se1() const;       // binomial standard errors
    double se2() const;
    double se3() const;
    double mean_n() const;

    ClaimsRecord& operator+=(const ClaimsRecord& other);
};

// Runs `trials` instrumented walks for every milestone index i and every
// start in W^{i+1} \ W^i (deterministically sampled down to max_starts per
// index when larger). Returns one pooled record per milestone index,
// descending i, plus the total in `pooled`.
struct ClaimsReport {
    std::vector<std::pair<int, ClaimsRecord>> per_index; // (i, record), i descending
    ClaimsRecord pooled;
};

ClaimsReport run_claims(const GridOrientation& o, const MilestoneChain& chain,
                        std::int64_t trials, std::uint64_t seed, int max_starts = 4096);

// Scaling experiment over square shapes a = b = n/2.
struct ScalingConfig {
    std::vector<int> sizes; // n values; each must be even and >= 4
    int seeds = 20;         // instances per size
    GenKind kind = GenKind::Linear;
    std::uint64_t seed = 1; // base seed; per-row seeds are derived
};

// One row of the scaling experiment (square shape, linear generator).
struct ScalingRow {
    int n = 0, a = 0, b = 0;
    std::uint64_t seed = 0;
    std::string kind;
    double max_et = 0.0;      // max over starts of E[steps to sink]
    double ref_bound = 0.0;   // 155*(H_n+1)*(L+1)
    int L = 0;
    double max_sigma = 0.0;      // max over i of the per-transition E[sigma] maxima
    double max_transition = 0.0; // max over i of the per-transition hitting maxima
};

// Rows ordered by (n, seed); failures carry one diagnostic per failed row.
struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::vector<std::string> failures;
};

// Generates, validates, and analyzes one instance per (size, seed); rows run
// concurrently and are assembled in (n, seed) order.
ScalingResult run_scaling(const ScalingConfig& config);

// Least-squares fit of max_et ~ c * ln^2(n) through the origin.
double fit_log2_constant(const std::vector<ScalingRow>& rows);

// CSV with the versioned header comment; columns
// n,a,b,seed,kind,maxET,refBound,L,maxSigma,maxTransition.
void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows);
std::vector<ScalingRow> read_scaling_csv(std::istream& in);

// Self-contained polyline chart of max_et (points per row) and the fitted
// c*ln^2(n) curve against n.
void write_scaling_svg(std::ostream& out, const std::vector<ScalingRow>& rows, double c);

// Structured text records shared by the CLI and the tests.
std::string format_uso_report(const UsoReport& report);
std::string format_cycle_report(const CycleReport& report);
std::string format_milestones(const MilestoneChain& chain);
std::string format_lemma_report(const LemmaReport& report);
std::string format_bound_report(const BoundReport& report);
std::string format_walk_stats(const WalkStats& stats);
std::string format_claims_report(const ClaimsReport& report);

// Entry point of the uso-lab binary: subcommands generate, validate, walk,
// exact, claims, scaling. Returns an exit code.
int run_cli(int argc, const char* const* argv);

} // namespace usolab
