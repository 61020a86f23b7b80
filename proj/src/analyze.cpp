#include "usolab/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>

#include "usolab/parallel.hpp"
#include "usolab/validate.hpp"

namespace usolab {

namespace {

std::string cycle_to_string(const std::vector<Vertex>& cycle) {
    std::string out;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (k) out += " -> ";
        out += to_string(cycle[k]);
    }
    return out;
}

template <class Fn>
void for_each_in_neighbor(const GridOrientation& o, Vertex v, Fn&& fn) {
    const int rx = o.row_rank(v.y, v.x);
    const int ry = o.col_rank(v.x, v.y);
    for (int x = 0; x < o.shape().a; ++x)
        if (o.row_rank(v.y, x) > rx) fn(Vertex{x, v.y});
    for (int y = 0; y < o.shape().b; ++y)
        if (o.col_rank(v.x, y) > ry) fn(Vertex{v.x, y});
}

} // namespace

std::vector<Vertex> topo_order(const GridOrientation& o) {
    const int count = o.shape().vertex_count();
    std::vector<int> remaining(count);
    std::vector<int> queue;
    queue.reserve(count);
    for (int id = 0; id < count; ++id) {
        Vertex v = o.vertex_at(id);
        remaining[id] = o.row_rank(v.y, v.x) + o.col_rank(v.x, v.y);
        if (remaining[id] == 0) queue.push_back(id);
    }
    std::vector<Vertex> order;
    order.reserve(count);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int id = queue[head];
        const Vertex v = o.vertex_at(id);
        order.push_back(v);
        for_each_in_neighbor(o, v, [&](Vertex u) {
            const int uid = o.vertex_index(u);
            if (--remaining[uid] == 0) queue.push_back(uid);
        });
    }
    if (order.size() != static_cast<std::size_t>(count)) {
        CycleReport cr = check_acyclic(o);
        throw Error(ErrorKind::Cyclic,
                    "orientation has a directed cycle: " + cycle_to_string(cr.cycle));
    }
    return order;
}

VertexSet reach_set(const GridOrientation& o, Vertex w) {
    o.require_in_range(w);
    VertexSet reached(o.shape());
    std::vector<int> queue;
    queue.push_back(o.vertex_index(w));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = o.vertex_at(queue[head]);
        for (const OutNeighbor& out : out_neighbors(o, u)) {
            if (!reached.contains(out.target)) {
                reached.insert(out.target);
                queue.push_back(o.vertex_index(out.target));
            }
        }
    }
    return reached;
}

namespace {

template <class Num>
std::vector<Num> expected_steps_impl(const GridOrientation& o) {
    const std::vector<Vertex> order = topo_order(o);
    std::vector<Num> e(o.shape().vertex_count(), Num(0));
    for (Vertex v : order) {
        const auto outs = out_neighbors(o, v);
        if (outs.empty()) continue; // the global sink
        Num acc(0);
        for (const OutNeighbor& out : outs) acc += e[o.vertex_index(out.target)];
        e[o.vertex_index(v)] = Num(1) + acc / Num(static_cast<int>(outs.size()));
    }
    return e;
}

template <class Num>
std::vector<Num> hitting_impl(const GridOrientation& o, const VertexSet& absorbing) {
    if (absorbing.shape() != o.shape())
        throw Error(ErrorKind::InvalidInput, "absorbing set shape does not match orientation");
    const int count = o.shape().vertex_count();

    // every vertex must have a path into the absorbing set
    std::vector<char> can_reach(count, 0);
    std::vector<int> queue;
    for (int id = 0; id < count; ++id)
        if (absorbing.contains_id(id)) {
            can_reach[id] = 1;
            queue.push_back(id);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for_each_in_neighbor(o, o.vertex_at(queue[head]), [&](Vertex u) {
            const int uid = o.vertex_index(u);
            if (!can_reach[uid]) {
                can_reach[uid] = 1;
                queue.push_back(uid);
            }
        });
    }
    for (int id = 0; id < count; ++id)
        if (!can_reach[id])
            throw Error(ErrorKind::Reachability, "vertex " + to_string(o.vertex_at(id)) +
                                                     " has no path into the absorbing set");

    const std::vector<Vertex> order = topo_order(o);
    std::vector<Num> e(count, Num(0));
    for (Vertex v : order) {
        if (absorbing.contains(v)) continue;
        const auto outs = out_neighbors(o, v);
        Num acc(0);
        for (const OutNeighbor& out : outs) acc += e[o.vertex_index(out.target)];
        e[o.vertex_index(v)] = Num(1) + acc / Num(static_cast<int>(outs.size()));
    }
    return e;
}

template <class Num>
std::vector<Num> sigma_impl(const GridOrientation& o, const MilestoneChain& chain, int i) {
    if (i < 0 || i >= chain.L)
        throw Error(ErrorKind::Domain, "milestone index " + std::to_string(i) +
                                           " outside 0.." + std::to_string(chain.L - 1));
    const Outmap phi_up = outmap(o, chain.w[i + 1]);
    std::vector<char> in_x(o.shape().a, 0), in_y(o.shape().b, 0);
    for (int x : phi_up.phi_x) in_x[x] = 1;
    for (int y : phi_up.phi_y) in_y[y] = 1;

    const std::vector<Vertex> order = topo_order(o);
    std::vector<Num> e(o.shape().vertex_count(), Num(0));
    for (Vertex v : order) {
        const auto outs = out_neighbors(o, v);
        if (outs.empty()) {
            e[o.vertex_index(v)] = Num(1); // the terminal draw realizes sigma
            continue;
        }
        Num acc(0);
        for (const OutNeighbor& out : outs) {
            const bool absorbed = out.pivot.side == Side::X ? in_x[out.pivot.index] != 0
                                                            : in_y[out.pivot.index] != 0;
            if (!absorbed) acc += e[o.vertex_index(out.target)];
        }
        e[o.vertex_index(v)] = Num(1) + acc / Num(static_cast<int>(outs.size()));
    }
    return e;
}

} // namespace

std::vector<double> exact_expected_steps(const GridOrientation& o) {
    return expected_steps_impl<double>(o);
}
std::vector<Rat> exact_expected_steps_rational(const GridOrientation& o) {
    return expected_steps_impl<Rat>(o);
}
std::vector<double> exact_hitting_time(const GridOrientation& o, const VertexSet& absorbing) {
    return hitting_impl<double>(o, absorbing);
}
std::vector<Rat> exact_hitting_time_rational(const GridOrientation& o,
                                             const VertexSet& absorbing) {
    return hitting_impl<Rat>(o, absorbing);
}
std::vector<double> exact_expected_sigma(const GridOrientation& o, const MilestoneChain& chain,
                                         int i) {
    return sigma_impl<double>(o, chain, i);
}
std::vector<Rat> exact_expected_sigma_rational(const GridOrientation& o,
                                               const MilestoneChain& chain, int i) {
    return sigma_impl<Rat>(o, chain, i);
}

MilestoneChain milestones(const GridOrientation& o) {
    const int a = o.shape().a;
    const int b = o.shape().b;

    // refined out-degrees; on a USO these are a bijection onto [0,a)x[0,b)
    std::vector<int> count(static_cast<std::size_t>(a) * b, 0);
    std::vector<int> who(static_cast<std::size_t>(a) * b, -1);
    for (int id = 0; id < a * b; ++id) {
        const Vertex v = o.vertex_at(id);
        const auto [i_deg, j_deg] = refined_out_degree(o, v);
        const std::size_t slot = static_cast<std::size_t>(i_deg) * b + j_deg;
        ++count[slot];
        who[slot] = id;
    }
    auto unique_vertex = [&](int i_deg, int j_deg) -> std::optional<Vertex> {
        if (i_deg >= a || j_deg >= b) return std::nullopt;
        const std::size_t slot = static_cast<std::size_t>(i_deg) * b + j_deg;
        if (count[slot] != 1) return std::nullopt;
        return o.vertex_at(who[slot]);
    };

    if (count[0] != 1)
        throw Error(ErrorKind::Precondition,
                    "no unique global sink; the orientation is not a USO");

    MilestoneChain chain;
    chain.L = std::bit_width(static_cast<unsigned>(std::min(a, b) - 1));

    // top-index vertex may fall outside the guaranteed uniqueness range;
    // demote until unique
    while (chain.L >= 1) {
        const int d = 1 << (chain.L - 1);
        if (unique_vertex(d, d)) break;
        chain.demoted = true;
        --chain.L;
    }
    if (chain.L < 1)
        throw Error(ErrorKind::Precondition,
                    "no unique milestone vertex at any index; the orientation is not a USO");
    for (int i = 1; i < chain.L; ++i) {
        const int d = 1 << (i - 1);
        if (!unique_vertex(d, d))
            throw Error(ErrorKind::Precondition,
                        "refined out-degree (" + std::to_string(d) + "," + std::to_string(d) +
                            ") is not unique inside the guaranteed range; the orientation is "
                            "not a USO");
    }

    chain.w.resize(chain.L + 1);
    chain.w[0] = o.vertex_at(who[0]);
    for (int i = 1; i <= chain.L; ++i) {
        const int d = 1 << (i - 1);
        chain.w[i] = *unique_vertex(d, d);
    }
    chain.W.reserve(chain.L + 1);
    VertexSet w0(o.shape());
    w0.insert(chain.w[0]);
    chain.W.push_back(std::move(w0)); // W^0 = {w^0} by convention
    for (int i = 1; i <= chain.L; ++i) chain.W.push_back(reach_set(o, chain.w[i]));
    return chain;
}

namespace {

struct OutmapBits {
    Bits x, y;
};

std::vector<OutmapBits> all_outmap_bits(const GridOrientation& o) {
    const int count = o.shape().vertex_count();
    std::vector<OutmapBits> bits(count, OutmapBits{Bits(o.shape().a), Bits(o.shape().b)});
    for (int id = 0; id < count; ++id) {
        const Vertex v = o.vertex_at(id);
        const int rx = o.row_rank(v.y, v.x);
        const int ry = o.col_rank(v.x, v.y);
        for (int x = 0; x < o.shape().a; ++x)
            if (o.row_rank(v.y, x) < rx) bits[id].x.set(x);
        for (int y = 0; y < o.shape().b; ++y)
            if (o.col_rank(v.x, y) < ry) bits[id].y.set(y);
    }
    return bits;
}

// closure[v] = vertices reachable from v by nonempty paths, as id bitsets
std::vector<Bits> reach_closure(const GridOrientation& o) {
    const int count = o.shape().vertex_count();
    std::vector<Bits> closure(count, Bits(count));
    for (Vertex v : topo_order(o)) {
        const int id = o.vertex_index(v);
        for (const OutNeighbor& out : out_neighbors(o, v)) {
            const int t = o.vertex_index(out.target);
            closure[id] |= closure[t];
            closure[id].set(t);
        }
    }
    return closure;
}

} // namespace

LemmaReport check_lemmas(const GridOrientation& o, const MilestoneChain& chain) {
    LemmaReport report;
    const int count = o.shape().vertex_count();
    const std::vector<OutmapBits> phi = all_outmap_bits(o);

    // (e) acyclicity, checked first: the reachability scan of (c) needs a
    // topological order, so a cyclic input reports (e) and skips (c).
    const CycleReport cr = check_acyclic(o);
    if (!cr.acyclic) report.e = {false, cycle_to_string(cr.cycle)};

    // (a) v.x in Phi_X(w^i) and v.y in Phi_Y(w^i) imply v in W^i
    for (int i = 1; i <= chain.L && report.a.pass; ++i) {
        const OutmapBits& pw = phi[o.vertex_index(chain.w[i])];
        for (int id = 0; id < count; ++id) {
            const Vertex v = o.vertex_at(id);
            if (pw.x.test(v.x) && pw.y.test(v.y) && !chain.W[i].contains(v)) {
                report.a = {false, "i=" + std::to_string(i) + " v=" + to_string(v)};
                break;
            }
        }
    }

    // (b) v in W^i implies v.x in Phi_X(w^i) or v.y in Phi_Y(w^i)
    for (int i = 1; i <= chain.L && report.b.pass; ++i) {
        const OutmapBits& pw = phi[o.vertex_index(chain.w[i])];
        for (int id = 0; id < count; ++id) {
            if (!chain.W[i].contains_id(id)) continue;
            const Vertex v = o.vertex_at(id);
            if (!pw.x.test(v.x) && !pw.y.test(v.y)) {
                report.b = {false, "i=" + std::to_string(i) + " v=" + to_string(v)};
                break;
            }
        }
    }

    // (c) w not ->+ v implies Phi_X(v) >= Phi_X(w) or Phi_Y(v) >= Phi_Y(w)
    if (report.e.pass) {
        const std::vector<Bits> closure = reach_closure(o);
        std::vector<int> first_bad(count, -1);
        std::atomic<int> best_w{count};
        parallel_for(count, [&](std::int64_t wi) {
            const int wid = static_cast<int>(wi);
            if (wid > best_w.load(std::memory_order_relaxed)) return;
            for (int vid = 0; vid < count; ++vid) {
                if (closure[wid].test(vid)) continue;
                if (phi[wid].x.subset_of(phi[vid].x)) continue;
                if (phi[wid].y.subset_of(phi[vid].y)) continue;
                first_bad[wid] = vid;
                int cur = best_w.load(std::memory_order_relaxed);
                while (wid < cur &&
                       !best_w.compare_exchange_weak(cur, wid, std::memory_order_relaxed)) {
                }
                return;
            }
        });
        for (int wid = 0; wid < count && report.c.pass; ++wid)
            if (first_bad[wid] >= 0)
                report.c = {false, "w=" + to_string(o.vertex_at(wid)) +
                                       " v=" + to_string(o.vertex_at(first_bad[wid]))};
    }

    // (d) |Phi(w^{i+1}) u Phi(w^i)| <= 5*2^{i-1}, compared as 2*size <= 5*2^i
    for (int i = 0; i < chain.L && report.d.pass; ++i) {
        OutmapBits u = phi[o.vertex_index(chain.w[i + 1])];
        const OutmapBits& lo = phi[o.vertex_index(chain.w[i])];
        u.x |= lo.x;
        u.y |= lo.y;
        const int size = u.x.count() + u.y.count();
        if (2 * size > 5 * (1 << i))
            report.d = {false, "i=" + std::to_string(i) + " union size " + std::to_string(size) +
                                   " > 5*2^" + std::to_string(i) + "/2"};
    }

    return report;
}

namespace {

template <class Num>
Num max_over(const std::vector<Num>& values, const VertexSet& members) {
    Num best(0);
    bool any = false;
    for (int id = 0; id < members.shape().vertex_count(); ++id) {
        if (!members.contains_id(id)) continue;
        if (!any || values[id] > best) {
            best = values[id];
            any = true;
        }
    }
    return best;
}

template <class Num>
Num max_all(const std::vector<Num>& values) {
    Num best(0);
    for (const Num& v : values)
        if (v > best) best = v;
    return best;
}

} // namespace

BoundReport verify_bounds(const GridOrientation& o, const MilestoneChain& chain, bool exact) {
    BoundReport report;
    report.n = o.shape().n();
    report.L = chain.L;
    report.demoted = chain.demoted;
    report.exact = exact;

    if (exact) {
        const Rat h = harmonic_rational(report.n);
        report.sigma_bound = h + 1;
        report.hit_bound = Rat(155) * report.sigma_bound;
        for (int i = chain.L - 1; i >= 0; --i) {
            const auto hit = exact_hitting_time_rational(o, chain.W[i]);
            const auto sig = exact_expected_sigma_rational(o, chain, i);
            TransitionBound t;
            t.i = i;
            t.max_hitting = max_over(hit, chain.W[i + 1]);
            t.max_sigma = max_over(sig, chain.W[i + 1]);
            t.hitting_ok = t.max_hitting <= report.hit_bound;
            t.sigma_ok = t.max_sigma <= report.sigma_bound;
            report.transitions.push_back(std::move(t));
        }
        report.max_expected_steps = max_all(exact_expected_steps_rational(o));
        report.max_hit_top = max_all(exact_hitting_time_rational(o, chain.W[chain.L]));
    } else {
        const double h = harmonic(report.n);
        report.sigma_bound = Rat(h + 1);
        report.hit_bound = Rat(155 * (h + 1));
        for (int i = chain.L - 1; i >= 0; --i) {
            const auto hit = exact_hitting_time(o, chain.W[i]);
            const auto sig = exact_expected_sigma(o, chain, i);
            TransitionBound t;
            t.i = i;
            const double mh = max_over(hit, chain.W[i + 1]);
            const double ms = max_over(sig, chain.W[i + 1]);
            t.max_hitting = Rat(mh);
            t.max_sigma = Rat(ms);
            t.hitting_ok = mh <= 155 * (h + 1);
            t.sigma_ok = ms <= h + 1;
            report.transitions.push_back(std::move(t));
        }
        report.max_expected_steps = Rat(max_all(exact_expected_steps(o)));
        report.max_hit_top = Rat(max_all(exact_hitting_time(o, chain.W[chain.L])));
    }
    report.all_ok = true;
    for (const TransitionBound& t : report.transitions)
        report.all_ok = report.all_ok && t.hitting_ok && t.sigma_ok;
    return report;
}

double harmonic(int n) {
    if (n < 0) throw Error(ErrorKind::Domain, "harmonic number undefined for n < 0");
    double acc = 0.0;
    for (int k = n; k >= 1; --k) acc += 1.0 / k;
    return acc;
}

Rat harmonic_rational(int n) {
    if (n < 0) throw Error(ErrorKind::Domain, "harmonic number undefined for n < 0");
    Rat acc(0);
    for (int k = 1; k <= n; ++k) acc += Rat(1, k);
    return acc;
}

double bernoulli_hitting_expectation(double p, int k) {
    if (!(p > 0.0 && p < 1.0))
        throw Error(ErrorKind::Domain, "p must lie strictly between 0 and 1");
    if (k < 0) throw Error(ErrorKind::Domain, "k must be nonnegative");
    const double pk = std::pow(p, k);
    return (1.0 - pk) / (pk * (1.0 - p));
}

Rat bernoulli_hitting_expectation_rational(const Rat& p, int k) {
    if (!(p > 0 && p < 1))
        throw Error(ErrorKind::Domain, "p must lie strictly between 0 and 1");
    if (k < 0) throw Error(ErrorKind::Domain, "k must be nonnegative");
    Rat pk(1);
    for (int t = 0; t < k; ++t) pk *= p;
    return (Rat(1) - pk) / (pk * (Rat(1) - p));
}

std::string format_rat(const Rat& value, bool exact) {
    if (exact) return value.get_num().get_str() + "/" + value.get_den().get_str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value.get_d());
    return buf;
}

} // namespace usolab
