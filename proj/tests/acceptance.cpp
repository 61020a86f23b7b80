// Acceptance harness: drives the library end to end against its stated
// guarantees. One PASS/FAIL line per criterion on stdout; exit status 1
// when any criterion fails. Wall-clock budgets are checked where a
// criterion carries one (1: 60s, 10: 600s).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "usolab/analyze.hpp"
#include "usolab/cli.hpp"
#include "usolab/generate.hpp"
#include "usolab/grid.hpp"
#include "usolab/rng.hpp"
#include "usolab/validate.hpp"
#include "usolab/walk.hpp"

#include "fixtures.hpp"

namespace {

using namespace usolab;

struct Outcome {
    bool pass = false;
    std::string detail;
};

template <class... Args>
std::string strf(const char* format, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every refined out-degree pair in [0,a) x [0,b) realized exactly once:
// a*b vertices into a*b distinct slots is a bijection.
bool refined_degrees_bijective(const GridOrientation& o) {
    const GridShape& s = o.shape();
    std::vector<char> seen(static_cast<std::size_t>(s.vertex_count()), 0);
    for (int id = 0; id < s.vertex_count(); ++id) {
        const auto [dx, dy] = refined_out_degree(o, o.vertex_at(id));
        char& slot = seen[static_cast<std::size_t>(dx) * s.b + dy];
        if (slot) return false;
        slot = 1;
    }
    return true;
}

// Criterion 1: the polynomial validator agrees with the brute-force oracle
// on all 16 candidates of the 2x2 grid and on >= 10^4 seeded random rank
// matrices over the shapes 3x3..5x5, within 60 seconds. Candidates that
// both validators accept are collected for criterion 3.
Outcome criterion1(std::vector<GridOrientation>& usos_out) {
    const auto t0 = std::chrono::steady_clock::now();
    long long disagreements = 0, usos_2x2 = 0, random_checked = 0;
    for (const GridOrientation& o : fixtures::all2x2Candidates()) {
        const UsoReport poly = validate_uso(o);
        const UsoReport brute = validate_uso_bruteforce(o);
        if (poly.is_uso != brute.is_uso) ++disagreements;
        if (poly.is_uso && brute.is_uso) {
            ++usos_2x2;
            usos_out.push_back(o);
        }
    }
    for (int a = 3; a <= 5; ++a)
        for (int b = 3; b <= 5; ++b)
            for (int t = 0; t < 1200; ++t) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(a * 16 + b) << 32) | static_cast<std::uint64_t>(t);
                const GridOrientation o =
                    fixtures::random_candidate(GridShape(a, b), derive_seed(0xacc1, key));
                const UsoReport poly = validate_uso(o);
                const UsoReport brute = validate_uso_bruteforce(o);
                if (poly.is_uso != brute.is_uso) ++disagreements;
                if (poly.is_uso && brute.is_uso) usos_out.push_back(o);
                ++random_checked;
            }
    const double secs = seconds_since(t0);
    const bool pass = disagreements == 0 && usos_2x2 == 12 && random_checked >= 10'000 && secs < 60.0;
    return {pass, strf("16 exhaustive 2x2 (%lld USOs) + %lld random candidates on 3x3..5x5, "
                       "%lld disagreements, %.1fs (budget 60s)",
                       usos_2x2, random_checked, disagreements, secs)};
}

// Criterion 2: gen_linear output validates as a USO for every square shape
// a = b in {2..64}, 100 seeds each. The refined-degree bijection for
// criterion 3 is tallied in the same sweep to avoid storing 6300 instances.
Outcome criterion2(long long& bijection_checked, long long& bijection_failures) {
    long long instances = 0, invalid = 0;
    for (int a = 2; a <= 64; ++a) {
        const GridShape shape(a, a);
        for (int s = 0; s < 100; ++s) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(s);
            const GridOrientation o = gen_linear(shape, derive_seed(0xacc2, key)).first;
            if (!validate_uso(o).is_uso) ++invalid;
            ++bijection_checked;
            if (!refined_degrees_bijective(o)) ++bijection_failures;
            ++instances;
        }
    }
    return {invalid == 0 && instances == 6300,
            strf("%lld linear instances over a = b in {2..64}, 100 seeds each, %lld validation failures",
                 instances, invalid)};
}

// Criterion 3: the refined out-degree is a bijection onto [0,a) x [0,b) on
// every USO produced by criteria 1 and 2.
Outcome criterion3(const std::vector<GridOrientation>& c1_usos, long long c2_checked,
                   long long c2_failures) {
    long long checked = c2_checked, failures = c2_failures;
    for (const GridOrientation& o : c1_usos) {
        ++checked;
        if (!refined_degrees_bijective(o)) ++failures;
    }
    return {failures == 0 && checked > 6300,
            strf("refined out-degree bijection on %lld USOs (%zu from criterion 1, %lld linear), "
                 "%lld violations",
                 checked, c1_usos.size(), c2_checked, failures)};
}

struct PoolInstance {
    std::string name;
    GridOrientation o;
    MilestoneChain chain;
};

// Criterion 4: the structural lemma suite (a)-(e) holds on every instance of
// a mixed pool: 50 linear up to 64x64, 52 rejection up to 5x5, 50 flip-chain
// up to 16x16. The union bound (d) is an exact integer comparison. The pool
// is kept for criteria 5 and 6.
Outcome criterion4(std::vector<PoolInstance>& pool) {
    long long failures = 0;
    std::string first_failure;
    const auto add = [&](std::string name, GridOrientation o) {
        MilestoneChain chain = milestones(o);
        if (!check_lemmas(o, chain).all_pass()) {
            ++failures;
            if (first_failure.empty()) first_failure = name;
        }
        pool.push_back({std::move(name), std::move(o), std::move(chain)});
    };

    const std::pair<int, int> linear_shapes[] = {{4, 4},  {8, 8},   {16, 16}, {32, 32}, {64, 64},
                                                 {6, 10}, {12, 20}, {24, 40}, {48, 64}, {64, 32}};
    std::uint64_t k = 0;
    for (const auto& [a, b] : linear_shapes)
        for (int s = 0; s < 5; ++s, ++k)
            add(strf("linear-%dx%d-s%d", a, b, s),
                gen_linear(GridShape(a, b), derive_seed(0xacc4a, k)).first);

    const std::pair<int, int> rejection_shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    k = 0;
    for (const auto& [a, b] : rejection_shapes)
        for (int s = 0; s < 10; ++s, ++k)
            add(strf("rejection-%dx%d-s%d", a, b, s),
                gen_rejection(GridShape(a, b), derive_seed(0xacc4b, k), 1'000'000));
    // The two largest rejection shapes are too sparse for arbitrary seeds
    // (acceptance ~ 4.5e-5 at 4x5, ~2e-7 at 5x5); these seeds are known to
    // land a hit within the given budgets.
    add("rejection-4x5", gen_rejection(GridShape(4, 5), 1, 30'000));
    add("rejection-5x5", gen_rejection(GridShape(5, 5), 45, 100'000));

    const std::pair<int, int> flip_shapes[] = {{16, 16}, {8, 16}, {12, 12}, {8, 8}, {16, 10}};
    k = 0;
    for (const auto& [a, b] : flip_shapes)
        for (int s = 0; s < 10; ++s, ++k) {
            const GridShape shape(a, b);
            const GridOrientation base = gen_linear(shape, derive_seed(0xacc4c, k)).first;
            add(strf("flip-%dx%d-s%d", a, b, s),
                gen_flip_chain(base, 4ll * shape.vertex_count(), derive_seed(0xacc4d, k)));
        }

    std::string detail = strf("lemmas (a)-(e) on %zu instances (50 linear <=64x64, 52 rejection <=5x5, "
                              "50 flip <=16x16), %lld failures",
                              pool.size(), failures);
    if (!first_failure.empty()) detail += " (first: " + first_failure + ")";
    return {failures == 0 && pool.size() == 152, detail};
}

// Criteria 5 and 6, one exact-rational sweep over the criterion-4 pool:
// every transition i has max hitting time of W^i from W^{i+1} at most
// 155(H_n+1) and max E[sigma] at most H_n+1, zero tolerance.
void criteria56(const std::vector<PoolInstance>& pool, Outcome& c5, Outcome& c6) {
    long long transitions = 0, hitting_bad = 0, sigma_bad = 0;
    double worst_hitting = 0.0, worst_sigma = 0.0; // ratio to the bound
    for (const PoolInstance& inst : pool) {
        const BoundReport rep = verify_bounds(inst.o, inst.chain, /*exact=*/true);
        for (const TransitionBound& t : rep.transitions) {
            ++transitions;
            if (!t.hitting_ok) ++hitting_bad;
            if (!t.sigma_ok) ++sigma_bad;
            worst_hitting = std::max(worst_hitting, Rat(t.max_hitting / rep.hit_bound).get_d());
            worst_sigma = std::max(worst_sigma, Rat(t.max_sigma / rep.sigma_bound).get_d());
        }
    }
    c5 = {hitting_bad == 0 && transitions > 0,
          strf("exact hitting-time maxima on %lld transitions over %zu USOs, %lld above 155(H_n+1), "
               "worst ratio %.4f",
               transitions, pool.size(), hitting_bad, worst_hitting)};
    c6 = {sigma_bad == 0 && transitions > 0,
          strf("exact E[sigma] maxima on %lld transitions over %zu USOs, %lld above H_n+1, "
               "worst ratio %.4f",
               transitions, pool.size(), sigma_bad, worst_sigma)};
}

// Criterion 7: the Bernoulli hitting expectation is 155 exactly at p = 1/5,
// k = 3, and a 10^6-run simulation lands within 1% of it.
Outcome criterion7() {
    const Rat exact = bernoulli_hitting_expectation_rational(Rat(1, 5), 3);
    const bool exact_ok = exact == Rat(155);
    Rng rng(0xacc7);
    const long long runs = 1'000'000;
    long long total = 0;
    for (long long r = 0; r < runs; ++r) {
        long long t = 0;
        int streak = 0;
        while (streak < 3) {
            ++t;
            streak = rng.below(5) == 0 ? streak + 1 : 0;
        }
        total += t;
    }
    const double mean = static_cast<double>(total) / static_cast<double>(runs);
    const double rel = std::abs(mean - 155.0) / 155.0;
    return {exact_ok && rel < 0.01,
            strf("exact value %s, simulated mean %.3f over 1e6 runs (%.3f%% off, tolerance 1%%)",
                 exact_ok ? "155" : format_rat(exact, true).c_str(), mean, rel * 100.0)};
}

// Criterion 8: the walk engine's Monte Carlo mean matches the exact DP
// within 4 standard errors on 20 random (instance, start) pairs across 8x8
// and 16x16 linear USOs, 10^4 trials each.
Outcome criterion8() {
    int bad = 0;
    double worst_z = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const GridShape shape = k < 10 ? GridShape(8, 8) : GridShape(16, 16);
        const GridOrientation o = gen_linear(shape, derive_seed(0xacc8, k)).first;
        const std::vector<double> expected = exact_expected_steps(o);
        Rng pick(derive_seed(0xacc80, k));
        const int id = static_cast<int>(pick.below(static_cast<std::uint64_t>(shape.vertex_count())));
        const WalkStats stats = monte_carlo(o, o.vertex_at(id), 10'000, derive_seed(0xacc81, k));
        const double se = stats.stderr_mean();
        const double delta = std::abs(stats.mean - expected[static_cast<std::size_t>(id)]);
        if (se == 0.0 ? delta > 1e-9 : delta > 4.0 * se) ++bad;
        if (se > 0.0) worst_z = std::max(worst_z, delta / se);
    }
    return {bad == 0, strf("Monte Carlo vs exact DP on 20 (instance,start) pairs, 10^4 trials each, "
                           "%d outside 4 SE (worst %.2f SE)",
                           bad, worst_z)};
}

// Criterion 9: on 10 mixed-generator instances up to 16x16, with >= 10^4
// instrumented traces pooled per instance, the empirical frequencies of E1,
// E2|E1, E3|E1E2 all clear 0.2 - 3se and the pre-sigma pivots stay on one
// side in every trace.
Outcome criterion9() {
    std::vector<std::pair<std::string, GridOrientation>> instances;
    const auto flip_inst = [](int a, int b, std::uint64_t seed) {
        const GridShape shape(a, b);
        const GridOrientation base = gen_linear(shape, derive_seed(seed, 0)).first;
        return gen_flip_chain(base, 4ll * shape.vertex_count(), derive_seed(seed, 1));
    };
    instances.emplace_back("flip-16x16", flip_inst(16, 16, 0xacc9a));
    instances.emplace_back("flip-12x12", flip_inst(12, 12, 0xacc9b));
    instances.emplace_back("flip-8x8", flip_inst(8, 8, 0xacc9c));
    instances.emplace_back("flip-16x8", flip_inst(16, 8, 0xacc9d));
    instances.emplace_back("linear-16x16", gen_linear(GridShape(16, 16), 0xacc9e).first);
    instances.emplace_back("linear-10x14", gen_linear(GridShape(10, 14), 0xacc9f).first);
    instances.emplace_back("linear-8x8", gen_linear(GridShape(8, 8), 0xacc90).first);
    instances.emplace_back("rejection-4x4", gen_rejection(GridShape(4, 4), 0xacc91, 1'000'000));
    instances.emplace_back("rejection-3x3", gen_rejection(GridShape(3, 3), 0xacc92, 1'000'000));
    instances.emplace_back("rejection-3x4", gen_rejection(GridShape(3, 4), 0xacc93, 1'000'000));

    int bad = 0;
    std::string first_bad;
    std::int64_t min_traces = -1, adjacency = 0;
    double min_p = 1.0;
    std::uint64_t index = 0;
    for (const auto& [name, o] : instances) {
        const MilestoneChain chain = milestones(o);
        std::int64_t starts = 0;
        for (int i = 0; i < chain.L; ++i)
            for (int id = 0; id < o.shape().vertex_count(); ++id)
                if (chain.W[i + 1].contains_id(id) && !chain.W[i].contains_id(id)) ++starts;
        const std::int64_t trials = (10'000 + starts - 1) / starts;
        const ClaimsReport rep = run_claims(o, chain, trials, derive_seed(0xacc9, index++));
        const ClaimsRecord& p = rep.pooled;
        const double floor1 = 0.2 - 3.0 * p.se1();
        const double floor2 = 0.2 - 3.0 * p.se2();
        const double floor3 = 0.2 - 3.0 * p.se3();
        const bool ok = p.traces >= 10'000 && p.p1() >= floor1 && p.p2() >= floor2 &&
                        p.p3() >= floor3 && p.adjacency_violations == 0;
        if (!ok) {
            ++bad;
            if (first_bad.empty()) first_bad = name;
        }
        min_traces = min_traces < 0 ? p.traces : std::min(min_traces, p.traces);
        min_p = std::min({min_p, p.p1(), p.p2(), p.p3()});
        adjacency += p.adjacency_violations;
    }
    std::string detail = strf("10 instances (4 flip, 3 linear, 3 rejection), >= %lld traces each; "
                              "min event frequency %.3f (floor 0.2 - 3se), %lld adjacency violations",
                              static_cast<long long>(min_traces), min_p,
                              static_cast<long long>(adjacency));
    if (!first_bad.empty()) detail += " (first failure: " + first_bad + ")";
    return {bad == 0, detail};
}

// Criterion 10: the default scaling experiment (n in {8..256}, 20 linear
// seeds per size) finishes within 10 minutes with no failed rows, every
// max E[T] below 155(H_n+1)(L+2), and the fitted c ln^2 n constant stable
// (successive per-size fits within a factor 2 across the top three sizes).
Outcome criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    ScalingConfig config;
    config.sizes = {8, 16, 32, 64, 128, 256};
    config.seeds = 20;
    config.kind = GenKind::Linear;
    config.seed = 1;
    const ScalingResult result = run_scaling(config);

    long long bound_bad = 0;
    double worst_ratio = 0.0;
    for (const ScalingRow& row : result.rows) {
        const double ref = 155.0 * (harmonic(row.n) + 1.0) * (row.L + 2);
        worst_ratio = std::max(worst_ratio, row.max_et / ref);
        if (row.max_et > ref) ++bound_bad;
    }
    const auto fit_for = [&](int n) {
        std::vector<ScalingRow> rows;
        for (const ScalingRow& row : result.rows)
            if (row.n == n) rows.push_back(row);
        return fit_log2_constant(rows);
    };
    const double c64 = fit_for(64), c128 = fit_for(128), c256 = fit_for(256);
    const auto within_factor2 = [](double p, double q) {
        return p > 0.0 && q > 0.0 && p <= 2.0 * q && q <= 2.0 * p;
    };
    const double secs = seconds_since(t0);
    const bool pass = result.failures.empty() && result.rows.size() == 120 && bound_bad == 0 &&
                      within_factor2(c64, c128) && within_factor2(c128, c256) && secs < 600.0;
    return {pass, strf("%zu rows, %zu failures; fits c(64)=%.3f c(128)=%.3f c(256)=%.3f; "
                       "max E[T]/bound %.3f; %.0fs (budget 600s)",
                       result.rows.size(), result.failures.size(), c64, c128, c256, worst_ratio,
                       secs)};
}

template <class Fn>
Outcome guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return {false, strf("unexpected error (%s): %s", to_string(e.kind()), e.what())};
    } catch (const std::exception& e) {
        return {false, strf("unexpected exception: %s", e.what())};
    }
}

} // namespace

int main() {
    int failed = 0;
    const auto report = [&](int id, const char* label, const Outcome& out) {
        std::printf("%s criterion %2d (%s): %s\n", out.pass ? "PASS" : "FAIL", id, label,
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failed;
    };

    std::vector<GridOrientation> c1_usos;
    long long c2_bijection_checked = 0, c2_bijection_failures = 0;
    report(1, "validator oracle equivalence", guarded([&] { return criterion1(c1_usos); }));
    report(2, "linear generator soundness",
           guarded([&] { return criterion2(c2_bijection_checked, c2_bijection_failures); }));
    report(3, "refined out-degree bijection", guarded([&] {
               return criterion3(c1_usos, c2_bijection_checked, c2_bijection_failures);
           }));

    std::vector<PoolInstance> pool;
    report(4, "structural lemma suite", guarded([&] { return criterion4(pool); }));
    Outcome c5{false, "not run"}, c6{false, "not run"};
    {
        const Outcome probe = guarded([&] {
            criteria56(pool, c5, c6);
            return Outcome{true, ""};
        });
        if (!probe.pass) c5 = c6 = probe;
    }
    report(5, "per-transition hitting bound", c5);
    report(6, "expected pivot-time bound", c6);

    report(7, "Bernoulli hitting expectation", guarded(criterion7));
    report(8, "walk engine consistency", guarded(criterion8));
    report(9, "event frequency floors", guarded(criterion9));
    report(10, "scaling experiment", guarded(criterion10));

    std::printf("acceptance: %d/10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
