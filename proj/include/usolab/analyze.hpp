#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "usolab/grid.hpp"

namespace usolab {

// Exact rational arithmetic is the reference mode for every bound check;
// doubles are the fast mode for large sweeps.
using Rat = mpq_class;

// Milestones w^0..w^L and their reach sets. w^0 is the global sink and
// W^0 = {w^0} (the literal definition via nonempty paths would make it
// empty; the operative statement "the walk arrives in the global sink as
// soon as W^0 is hit" fixes the convention). For i >= 1, w^i is the vertex
// with refined out-degree (2^{i-1}, 2^{i-1}) and W^i its reach set. No
// nesting among the W^i is assumed. If the top-index vertex is not unique,
// L is decremented and `demoted` set.
struct MilestoneChain {
    int L = 0;
    bool demoted = false;
    std::vector<Vertex> w;    // w[0..L]
    std::vector<VertexSet> W; // W[0..L]
};

struct LemmaCheck {
    bool pass = true;
    std::string counterexample; // empty when pass
};

// One entry per item of the lemma list:
//   (a) constraint containment: x in Phi_X(w^i) and y in Phi_Y(w^i) => (x,y) in W^i
//   (b) nonempty intersection:  v in W^i => v.x in Phi_X(w^i) or v.y in Phi_Y(w^i)
//   (c) pivot containment:      v not reachable from w => Phi_X(v) >= Phi_X(w)
//                               or Phi_Y(v) >= Phi_Y(w)
//   (d) union bound:            |Phi(w^{i+1}) u Phi(w^i)| <= 5*2^{i-1}
//   (e) acyclicity
// A cyclic input fails (e) and skips (c), whose scan needs a topological
// order; the other checks still run.
struct LemmaReport {
    LemmaCheck a, b, c, d, e;

    bool all_pass() const { return a.pass && b.pass && c.pass && d.pass && e.pass; }
};

struct TransitionBound {
    int i = 0;       // transition from W^{i+1} into W^i
    Rat max_hitting; // max over v0 in W^{i+1} of E[steps to hit W^i]
    Rat max_sigma;   // max over v0 in W^{i+1} of E[sigma]
    bool hitting_ok = false; // max_hitting <= 155*(H_n+1)
    bool sigma_ok = false;   // max_sigma   <= H_n+1
};

struct BoundReport {
    int n = 0;
    int L = 0;
    bool demoted = false;
    bool exact = true; // rational DP vs double DP (values then embed doubles)
    Rat hit_bound;     // 155*(H_n+1)
    Rat sigma_bound;   // H_n+1
    std::vector<TransitionBound> transitions; // i = L-1 down to 0
    Rat max_expected_steps; // max over all starts of E[steps to sink]
    Rat max_hit_top;        // max over all starts of E[steps to hit W^L]
    bool all_ok = false;

    double hit_bound_d() const { return hit_bound.get_d(); }
    double sigma_bound_d() const { return sigma_bound.get_d(); }
};

// Sink-first total order: every edge goes from later to earlier in the
// sequence. Cyclicity error (with witness in the message) when no such
// order exists.
std::vector<Vertex> topo_order(const GridOrientation& o);

// All vertices reachable from w by a nonempty directed path; w itself is
// never a member (the digraph is acyclic for USOs).
VertexSet reach_set(const GridOrientation& o, Vertex w);

// E[steps to the global sink] per vertex id, by DP in topological order:
// E(sink) = 0, E(v) = 1 + mean over out-neighbors of E.
std::vector<double> exact_expected_steps(const GridOrientation& o);
std::vector<Rat> exact_expected_steps_rational(const GridOrientation& o);

// E[steps to hit `absorbing`] per vertex id; E = 0 inside the set. Every
// vertex must have a path into the set (reachability error otherwise; since
// the only vertex without out-edges is the global sink, any valid absorbing
// set contains it).
std::vector<double> exact_hitting_time(const GridOrientation& o, const VertexSet& absorbing);
std::vector<Rat> exact_hitting_time_rational(const GridOrientation& o,
                                             const VertexSet& absorbing);

// E[sigma] per start vertex for milestone index i, 0 <= i <= L-1, where
// sigma is the first time a pivot lands in Phi(w^{i+1}) (drawing the
// terminal pivot at the sink also realizes sigma, so E = 1 there):
//   E(v) = 1 + (1/|Phi(v)|) * sum over pivots h of v outside Phi(w^{i+1})
//          of E(target of h).
std::vector<double> exact_expected_sigma(const GridOrientation& o, const MilestoneChain& chain,
                                         int i);
std::vector<Rat> exact_expected_sigma_rational(const GridOrientation& o,
                                               const MilestoneChain& chain, int i);

// L = 1 + floor(log2(min(a,b)-1)); milestone vertices found by refined
// out-degree. Non-uniqueness at the top index demotes L (flagged);
// non-uniqueness below the guaranteed range is a precondition error (the
// input was not a USO).
MilestoneChain milestones(const GridOrientation& o);

LemmaReport check_lemmas(const GridOrientation& o, const MilestoneChain& chain);

// Per-transition maxima of hitting times and E[sigma] against the proven
// references 155*(H_n+1) and H_n+1, plus the global quantities. `exact`
// selects the rational reference mode.
BoundReport verify_bounds(const GridOrientation& o, const MilestoneChain& chain,
                          bool exact = true);

// H_n = sum_{k=1..n} 1/k; H_0 = 0 by convention.
double harmonic(int n);
Rat harmonic_rational(int n);

// (1 - p^k) / (p^k (1-p)): expected steps for a Bernoulli(p) process to
// produce k successive successes. Satisfies t_k = (1 + t_{k-1})/p, t_0 = 0.
// Domain error unless 0 < p < 1 and k >= 0.
double bernoulli_hitting_expectation(double p, int k);
Rat bernoulli_hitting_expectation_rational(const Rat& p, int k);

// "num/den" (exact mode) or decimal (embedded-double mode).
std::string format_rat(const Rat& value, bool exact);

} // namespace usolab
