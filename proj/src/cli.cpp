#include "usolab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "usolab/parallel.hpp"
#include "usolab/rng.hpp"

namespace usolab {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double ratio(std::int64_t num, std::int64_t den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

double binom_se(std::int64_t num, std::int64_t den) {
    if (den <= 0) return 0.0;
    const double p = ratio(num, den);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(den));
}

} // namespace

double ClaimsRecord::p1() const { return ratio(e1, traces); }
double ClaimsRecord::p2() const { return ratio(e2_given_e1, e1); }
double ClaimsRecord::p3() const { return ratio(e3_given_e12, e2_given_e1); }
double ClaimsRecord::se1() const { return binom_se(e1, traces); }
double ClaimsRecord::se2() const { return binom_se(e2_given_e1, e1); }
double ClaimsRecord::se3() const { return binom_se(e3_given_e12, e2_given_e1); }
double ClaimsRecord::mean_n() const {
    return traces > 0 ? static_cast<double>(sum_n) / static_cast<double>(traces) : 0.0;
}

ClaimsRecord& ClaimsRecord::operator+=(const ClaimsRecord& other) {
    traces += other.traces;
    e1 += other.e1;
    e2_given_e1 += other.e2_given_e1;
    e3_given_e12 += other.e3_given_e12;
    adjacency_violations += other.adjacency_violations;
    sum_n += other.sum_n;
    return *this;
}

ClaimsReport run_claims(const GridOrientation& o, const MilestoneChain& chain,
                        std::int64_t trials, std::uint64_t seed, int max_starts) {
    if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be at least 1");
    if (max_starts < 1) throw Error(ErrorKind::InvalidInput, "max_starts must be at least 1");

    ClaimsReport report;
    for (int i = chain.L - 1; i >= 0; --i) {
        std::vector<int> starts;
        for (int id = 0; id < o.shape().vertex_count(); ++id)
            if (chain.W[i + 1].contains_id(id) && !chain.W[i].contains_id(id))
                starts.push_back(id);
        if (starts.size() > static_cast<std::size_t>(max_starts)) {
            Rng sampler(derive_seed(seed, 0x5747u ^ static_cast<std::uint64_t>(i)));
            sampler.shuffle(starts);
            starts.resize(max_starts);
            std::sort(starts.begin(), starts.end());
        }
        if (starts.empty()) {
            report.per_index.emplace_back(i, ClaimsRecord{});
            continue;
        }

        std::vector<ClaimsRecord> per_start(starts.size());
        parallel_for(static_cast<std::int64_t>(starts.size()), [&](std::int64_t js) {
            const Vertex v0 = o.vertex_at(starts[js]);
            ClaimsRecord& rec = per_start[js];
            for (std::int64_t t = 0; t < trials; ++t) {
                const std::uint64_t key = (static_cast<std::uint64_t>(i) << 60) |
                                          (static_cast<std::uint64_t>(js) << 40) |
                                          static_cast<std::uint64_t>(t);
                const WalkTrace trace = run_walk(o, v0, derive_seed(seed, key));
                const StoppingTimes st = instrument_trace(o, trace, chain, i);
                ++rec.traces;
                rec.sum_n += st.n_hits;
                if (!st.pre_sigma_one_sided) ++rec.adjacency_violations;
                if (st.e1) {
                    ++rec.e1;
                    if (st.e2) {
                        ++rec.e2_given_e1;
                        if (st.e3) ++rec.e3_given_e12;
                    }
                }
            }
        });

        ClaimsRecord pooled_i;
        for (const ClaimsRecord& rec : per_start) pooled_i += rec;
        report.per_index.emplace_back(i, pooled_i);
        report.pooled += pooled_i;
    }
    return report;
}

ScalingResult run_scaling(const ScalingConfig& config) {
    if (config.sizes.empty()) throw Error(ErrorKind::InvalidInput, "no sizes given");
    if (config.seeds < 1) throw Error(ErrorKind::InvalidInput, "seeds must be at least 1");
    std::vector<int> sizes = config.sizes;
    std::sort(sizes.begin(), sizes.end());
    for (int n : sizes)
        if (n < 4 || n % 2 != 0)
            throw Error(ErrorKind::InvalidInput,
                        "size n=" + std::to_string(n) +
                            " is not an even number >= 4 (square shapes use a = b = n/2)");

    const std::int64_t total = static_cast<std::int64_t>(sizes.size()) * config.seeds;
    std::vector<std::optional<ScalingRow>> slots(total);
    std::vector<std::string> errors(total);

    parallel_for(total, [&](std::int64_t r) {
        const int n = sizes[r / config.seeds];
        const int s = static_cast<int>(r % config.seeds);
        const std::uint64_t row_seed =
            derive_seed(config.seed, (static_cast<std::uint64_t>(n) << 32) |
                                         static_cast<std::uint64_t>(s));
        try {
            const GridShape shape(n / 2, n / 2);
            GridOrientation o = [&] {
                switch (config.kind) {
                    case GenKind::Linear: return gen_linear(shape, row_seed).first;
                    case GenKind::Rejection: return gen_rejection(shape, row_seed, 1'000'000);
                    case GenKind::Flip: {
                        GridOrientation base = gen_linear(shape, derive_seed(row_seed, 0)).first;
                        return gen_flip_chain(base, 8ll * shape.vertex_count(),
                                              derive_seed(row_seed, 1));
                    }
                }
                throw Error(ErrorKind::Internal, "unknown generator kind");
            }();
            const UsoReport uso = validate_uso(o);
            if (!uso.is_uso)
                throw Error(ErrorKind::Internal,
                            "generated orientation failed validation: " +
                                (uso.witness ? uso.witness->detail : std::string("?")));
            const MilestoneChain chain = milestones(o);
            const BoundReport bounds = verify_bounds(o, chain, /*exact=*/false);

            ScalingRow row;
            row.n = n;
            row.a = shape.a;
            row.b = shape.b;
            row.seed = row_seed;
            row.kind = config.kind == GenKind::Linear      ? "linear"
                       : config.kind == GenKind::Rejection ? "rejection"
                                                           : "flip";
            row.max_et = bounds.max_expected_steps.get_d();
            row.L = chain.L;
            row.ref_bound = 155.0 * (harmonic(n) + 1.0) * (chain.L + 1);
            for (const TransitionBound& t : bounds.transitions) {
                row.max_sigma = std::max(row.max_sigma, t.max_sigma.get_d());
                row.max_transition = std::max(row.max_transition, t.max_hitting.get_d());
            }
            slots[r] = std::move(row);
        } catch (const Error& e) {
            errors[r] = "n=" + std::to_string(n) + " seed#" + std::to_string(s) + ": " +
                        std::string(to_string(e.kind())) + ": " + e.what();
        }
    });

    ScalingResult result;
    for (std::int64_t r = 0; r < total; ++r) {
        if (slots[r]) result.rows.push_back(*slots[r]);
        if (!errors[r].empty()) result.failures.push_back(errors[r]);
    }
    return result;
}

double fit_log2_constant(const std::vector<ScalingRow>& rows) {
    double num = 0.0, den = 0.0;
    for (const ScalingRow& row : rows) {
        const double x = std::log(static_cast<double>(row.n));
        num += row.max_et * x * x;
        den += x * x * x * x;
    }
    return den > 0.0 ? num / den : 0.0;
}

namespace {
constexpr const char* kCsvVersion = "# uso-lab scaling v1";
constexpr const char* kCsvColumns = "n,a,b,seed,kind,maxET,refBound,L,maxSigma,maxTransition";
} // namespace

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
    out << kCsvVersion << '\n' << kCsvColumns << '\n';
    for (const ScalingRow& row : rows)
        out << row.n << ',' << row.a << ',' << row.b << ',' << row.seed << ',' << row.kind << ','
            << fmt_double(row.max_et) << ',' << fmt_double(row.ref_bound) << ',' << row.L << ','
            << fmt_double(row.max_sigma) << ',' << fmt_double(row.max_transition) << '\n';
}

std::vector<ScalingRow> read_scaling_csv(std::istream& in) {
    std::vector<ScalingRow> rows;
    std::string line;
    bool saw_columns = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_columns) {
            if (line != kCsvColumns)
                throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                                  ": unexpected column header '" + line + "'");
            saw_columns = true;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(pos));
                break;
            }
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 10)
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 10 fields, got " +
                                              std::to_string(fields.size()));
        try {
            ScalingRow row;
            row.n = std::stoi(fields[0]);
            row.a = std::stoi(fields[1]);
            row.b = std::stoi(fields[2]);
            row.seed = std::stoull(fields[3]);
            row.kind = fields[4];
            row.max_et = std::stod(fields[5]);
            row.ref_bound = std::stod(fields[6]);
            row.L = std::stoi(fields[7]);
            row.max_sigma = std::stod(fields[8]);
            row.max_transition = std::stod(fields[9]);
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            throw Error(ErrorKind::Parse,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!saw_columns) throw Error(ErrorKind::Parse, "missing column header");
    return rows;
}

void write_scaling_svg(std::ostream& out, const std::vector<ScalingRow>& rows, double c) {
    const int width = 640, height = 400;
    const int ml = 60, mr = 20, mt = 30, mb = 45;
    const double plot_w = width - ml - mr, plot_h = height - mt - mb;

    double n_lo = 1e300, n_hi = 0, y_hi = 0;
    for (const ScalingRow& row : rows) {
        n_lo = std::min(n_lo, static_cast<double>(row.n));
        n_hi = std::max(n_hi, static_cast<double>(row.n));
        y_hi = std::max(y_hi, row.max_et);
    }
    if (rows.empty()) {
        n_lo = 4;
        n_hi = 8;
        y_hi = 1;
    }
    const double lx_lo = std::log(n_lo), lx_hi = std::log(n_hi * 1.0001);
    y_hi = std::max(y_hi, c * lx_hi * lx_hi) * 1.08 + 1e-9;

    auto px = [&](double n) { return ml + (std::log(n) - lx_lo) / (lx_hi - lx_lo) * plot_w; };
    auto py = [&](double y) { return mt + (1.0 - y / y_hi) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
        << "Random-Edge: max expected steps vs n (fit " << fmt_double(c)
        << " ln^2 n)</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << (mt + plot_h) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << (mt + plot_h) << "\" x2=\"" << (ml + plot_w)
        << "\" y2=\"" << (mt + plot_h) << "\" stroke=\"black\"/>\n";

    // x ticks at the distinct sizes
    std::vector<int> sizes;
    for (const ScalingRow& row : rows)
        if (sizes.empty() || sizes.back() != row.n) sizes.push_back(row.n);
    for (int n : sizes) {
        const double x = px(n);
        out << "<line x1=\"" << x << "\" y1=\"" << (mt + plot_h) << "\" x2=\"" << x << "\" y2=\""
            << (mt + plot_h + 4) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << (mt + plot_h + 18)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << n
            << "</text>\n";
    }
    out << "<text x=\"" << (ml + plot_w / 2) << "\" y=\"" << (height - 8)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">n = a + b"
        << "</text>\n";

    // y ticks
    for (int k = 0; k <= 4; ++k) {
        const double y = y_hi * k / 4.0;
        out << "<line x1=\"" << (ml - 4) << "\" y1=\"" << py(y) << "\" x2=\"" << ml << "\" y2=\""
            << py(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << (ml - 8) << "\" y=\"" << (py(y) + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << fmt_double(std::round(y * 100) / 100) << "</text>\n";
    }

    // fitted curve
    out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (int k = 0; k <= 100; ++k) {
        const double ln = lx_lo + (lx_hi - lx_lo) * k / 100.0;
        out << px(std::exp(ln)) << ',' << py(c * ln * ln) << ' ';
    }
    out << "\"/>\n";

    // measured points
    for (const ScalingRow& row : rows)
        out << "<circle cx=\"" << px(row.n) << "\" cy=\"" << py(row.max_et)
            << "\" r=\"2.5\" fill=\"#2c3e50\" fill-opacity=\"0.6\"/>\n";

    out << "<text x=\"" << (ml + plot_w - 4) << "\" y=\"" << (mt + 14)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"#c0392b\">"
        << "c ln^2 n</text>\n";
    out << "</svg>\n";
}

std::string format_uso_report(const UsoReport& report) {
    std::string out;
    out += "method: ";
    out += report.method == UsoReport::Method::Polynomial ? "polynomial" : "brute-force";
    out += "\nis_uso: ";
    out += report.is_uso ? "true" : "false";
    out += "\nfaces_checked: " + std::to_string(report.faces_checked) + "\n";
    if (report.witness) {
        const UsoWitness& w = *report.witness;
        out += "witness: ";
        switch (w.kind) {
            case UsoWitness::Kind::DoubleSink: out += "double-sink"; break;
            case UsoWitness::Kind::NoSink: out += "no-sink"; break;
            case UsoWitness::Kind::CountingMismatch: out += "counting-mismatch"; break;
        }
        if (!w.face.xs.empty()) out += " face " + to_string(w.face);
        out += " — " + w.detail + "\n";
    }
    return out;
}

std::string format_cycle_report(const CycleReport& report) {
    std::string out = "acyclic: ";
    out += report.acyclic ? "true" : "false";
    out += "\n";
    if (!report.acyclic) {
        out += "cycle:";
        for (Vertex v : report.cycle) out += " " + to_string(v);
        out += "\n";
    }
    return out;
}

std::string format_milestones(const MilestoneChain& chain) {
    std::string out = "L: " + std::to_string(chain.L) + "\n";
    out += "demoted: ";
    out += chain.demoted ? "true" : "false";
    out += "\n";
    for (int i = 0; i <= chain.L; ++i)
        out += "w[" + std::to_string(i) + "]: " + to_string(chain.w[i]) + " |W[" +
               std::to_string(i) + "]|: " + std::to_string(chain.W[i].size()) + "\n";
    return out;
}

namespace {
std::string lemma_line(const char* name, const LemmaCheck& check) {
    std::string out = std::string("lemma_") + name + ": ";
    out += check.pass ? "pass" : ("FAIL " + check.counterexample);
    return out + "\n";
}
} // namespace

std::string format_lemma_report(const LemmaReport& report) {
    std::string out;
    out += lemma_line("a", report.a);
    out += lemma_line("b", report.b);
    out += lemma_line("c", report.c);
    out += lemma_line("d", report.d);
    out += lemma_line("e", report.e);
    out += std::string("lemmas_all_pass: ") + (report.all_pass() ? "true" : "false") + "\n";
    return out;
}

std::string format_bound_report(const BoundReport& report) {
    const bool ex = report.exact;
    std::string out;
    out += "n: " + std::to_string(report.n) + "\n";
    out += "L: " + std::to_string(report.L) + "\n";
    out += std::string("mode: ") + (ex ? "exact" : "float") + "\n";
    out += "sigma_bound: " + format_rat(report.sigma_bound, ex) + "\n";
    out += "hit_bound: " + format_rat(report.hit_bound, ex) + "\n";
    for (const TransitionBound& t : report.transitions) {
        out += "transition i=" + std::to_string(t.i) + ": max_hitting=" +
               format_rat(t.max_hitting, ex) + " hitting_ok=" + (t.hitting_ok ? "true" : "false") +
               " max_sigma=" + format_rat(t.max_sigma, ex) +
               " sigma_ok=" + (t.sigma_ok ? "true" : "false") + "\n";
    }
    out += "max_expected_steps: " + format_rat(report.max_expected_steps, ex) + "\n";
    out += "max_hit_top: " + format_rat(report.max_hit_top, ex) + "\n";
    out += std::string("bounds_all_ok: ") + (report.all_ok ? "true" : "false") + "\n";
    return out;
}

std::string format_walk_stats(const WalkStats& stats) {
    std::string out;
    out += "trials: " + std::to_string(stats.trials) + "\n";
    out += "mean: " + fmt_double(stats.mean) + "\n";
    out += "variance: " + fmt_double(stats.variance) + "\n";
    out += "stderr: " + fmt_double(stats.stderr_mean()) + "\n";
    out += "min: " + std::to_string(stats.min) + "\n";
    out += "max: " + std::to_string(stats.max) + "\n";
    out += "histogram:";
    for (std::size_t len = 0; len < stats.histogram.size(); ++len)
        if (stats.histogram[len])
            out += " " + std::to_string(len) + ":" + std::to_string(stats.histogram[len]);
    out += "\n";
    return out;
}

namespace {
std::string claims_line(const ClaimsRecord& rec) {
    std::string out;
    out += "traces=" + std::to_string(rec.traces);
    out += " p1=" + fmt_double(rec.p1()) + " se1=" + fmt_double(rec.se1());
    out += " p2=" + fmt_double(rec.p2()) + " se2=" + fmt_double(rec.se2());
    out += " p3=" + fmt_double(rec.p3()) + " se3=" + fmt_double(rec.se3());
    out += " mean_N=" + fmt_double(rec.mean_n());
    out += " adjacency_violations=" + std::to_string(rec.adjacency_violations);
    return out;
}
} // namespace

std::string format_claims_report(const ClaimsReport& report) {
    std::string out;
    for (const auto& [i, rec] : report.per_index)
        out += "index i=" + std::to_string(i) + ": " + claims_line(rec) + "\n";
    out += "pooled: " + claims_line(report.pooled) + "\n";
    out += "reference_mean_N: 155\n";
    return out;
}

namespace {

GridShape parse_shape(const std::string& text) {
    const std::size_t x = text.find('x');
    if (x == std::string::npos)
        throw Error(ErrorKind::InvalidInput, "shape must look like AxB, got '" + text + "'");
    try {
        return GridShape(std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1)));
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::InvalidInput, "shape must look like AxB, got '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::InvalidInput, "shape out of range: '" + text + "'");
    }
}

Vertex parse_vertex(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorKind::InvalidInput, "vertex must look like x,y, got '" + text + "'");
    try {
        return Vertex{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "vertex must look like x,y, got '" + text + "'");
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            out.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidInput, "bad integer '" + field + "' in list");
        }
    }
    if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty integer list");
    return out;
}

GenKind parse_kind(const std::string& text) {
    if (text == "linear") return GenKind::Linear;
    if (text == "rejection") return GenKind::Rejection;
    if (text == "flip") return GenKind::Flip;
    throw Error(ErrorKind::InvalidInput,
                "kind must be linear, rejection, or flip, got '" + text + "'");
}

int exit_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::Parse:
        case ErrorKind::Size:
        case ErrorKind::Precondition:
        case ErrorKind::Domain:
        case ErrorKind::Pivot:
        case ErrorKind::Terminal:
            return kExitInputError;
        case ErrorKind::Sampling:
        case ErrorKind::Cyclic:
        case ErrorKind::Reachability:
        case ErrorKind::Internal:
            return kExitInternalError;
    }
    return kExitInternalError;
}

// loads and validates; returns nullopt after printing the failure (exit 1 path)
std::optional<GridOrientation> load_usovalidated(const std::string& path) {
    GridOrientation o = load(std::filesystem::path(path));
    const UsoReport report = validate_uso(o);
    if (!report.is_uso) {
        std::cout << format_uso_report(report);
        return std::nullopt;
    }
    return o;
}

int do_generate(const std::string& shape_str, const std::string& kind_str, std::uint64_t seed,
                const std::string& out_path, std::int64_t max_tries, std::int64_t steps) {
    const GridShape shape = parse_shape(shape_str);
    const GenKind kind = parse_kind(kind_str);
    GridOrientation o = [&] {
        switch (kind) {
            case GenKind::Linear: return gen_linear(shape, seed).first;
            case GenKind::Rejection: return gen_rejection(shape, seed, max_tries);
            case GenKind::Flip: {
                GridOrientation base = gen_linear(shape, derive_seed(seed, 0)).first;
                return gen_flip_chain(base, steps, derive_seed(seed, 1));
            }
        }
        throw Error(ErrorKind::Internal, "unknown generator kind");
    }();
    save(o, std::filesystem::path(out_path));
    std::cout << "shape: " << shape.a << "x" << shape.b << "\nkind: " << kind_str
              << "\nseed: " << seed << "\nout: " << out_path << "\n";
    return kExitOk;
}

int do_validate(const std::string& path, bool brute, int guard) {
    const GridOrientation o = load(std::filesystem::path(path));
    const UsoReport report = brute ? validate_uso_bruteforce(o, guard) : validate_uso(o);
    std::cout << format_uso_report(report);
    return report.is_uso ? kExitOk : kExitPropertyViolation;
}

int do_walk(const std::string& path, const std::string& start_str, std::int64_t trials,
            std::uint64_t seed, bool dump) {
    const auto o = load_usovalidated(path);
    if (!o) return kExitPropertyViolation;

    Vertex start{-1, -1};
    if (!start_str.empty()) {
        start = parse_vertex(start_str);
        o->require_in_range(start);
    } else {
        // default: the unique global source, refined out-degree (a-1, b-1)
        for (int id = 0; id < o->shape().vertex_count(); ++id) {
            const Vertex v = o->vertex_at(id);
            if (o->row_rank(v.y, v.x) == o->shape().a - 1 &&
                o->col_rank(v.x, v.y) == o->shape().b - 1) {
                start = v;
                break;
            }
        }
        if (start.x < 0)
            throw Error(ErrorKind::Internal, "validated USO has no global source");
    }

    if (dump) std::cout << format_trace(run_walk(*o, start, seed));
    const WalkStats stats = monte_carlo(*o, start, trials, seed);
    std::cout << "start: " << to_string(start) << "\n" << format_walk_stats(stats);
    return kExitOk;
}

int do_exact(const std::string& path, bool show_milestones, bool show_lemmas, bool show_bounds,
             bool float_mode) {
    const auto o = load_usovalidated(path);
    if (!o) return kExitPropertyViolation;
    if (!show_milestones && !show_lemmas && !show_bounds)
        show_milestones = show_lemmas = show_bounds = true;

    const MilestoneChain chain = milestones(*o);
    int code = kExitOk;
    if (show_milestones) std::cout << format_milestones(chain);
    if (show_lemmas) {
        const LemmaReport lemmas = check_lemmas(*o, chain);
        std::cout << format_lemma_report(lemmas);
        if (!lemmas.all_pass()) code = kExitPropertyViolation;
    }
    if (show_bounds) {
        const BoundReport bounds = verify_bounds(*o, chain, !float_mode);
        std::cout << format_bound_report(bounds);
        if (!bounds.all_ok) code = kExitPropertyViolation;
    }
    return code;
}

int do_claims(const std::string& path, std::int64_t trials, std::uint64_t seed, int max_starts) {
    const auto o = load_usovalidated(path);
    if (!o) return kExitPropertyViolation;
    const MilestoneChain chain = milestones(*o);
    const ClaimsReport report = run_claims(*o, chain, trials, seed, max_starts);
    std::cout << format_claims_report(report);

    const ClaimsRecord& p = report.pooled;
    const bool ok = p.adjacency_violations == 0 && p.mean_n() <= 155.0 &&
                    p.p1() >= 0.2 - 3 * p.se1() && p.p2() >= 0.2 - 3 * p.se2() &&
                    p.p3() >= 0.2 - 3 * p.se3();
    std::cout << "claims_ok: " << (ok ? "true" : "false") << "\n";
    return ok ? kExitOk : kExitPropertyViolation;
}

int do_scaling(const std::string& sizes_str, int seeds, std::uint64_t seed,
               const std::string& kind_str, const std::string& csv_path,
               const std::string& svg_path) {
    ScalingConfig config;
    config.sizes = parse_int_list(sizes_str);
    config.seeds = seeds;
    config.seed = seed;
    config.kind = parse_kind(kind_str);

    const ScalingResult result = run_scaling(config);
    {
        std::ofstream csv(csv_path);
        if (!csv)
            throw Error(ErrorKind::InvalidInput, "cannot open " + csv_path + " for writing");
        write_scaling_csv(csv, result.rows);
    }
    const double c = fit_log2_constant(result.rows);
    if (!svg_path.empty()) {
        std::ofstream svg(svg_path);
        if (!svg)
            throw Error(ErrorKind::InvalidInput, "cannot open " + svg_path + " for writing");
        write_scaling_svg(svg, result.rows, c);
    }

    std::cout << "rows: " << result.rows.size() << "\nfailures: " << result.failures.size()
              << "\nfit_c: " << fmt_double(c) << "\ncsv: " << csv_path << "\n";
    if (!svg_path.empty()) std::cout << "svg: " << svg_path << "\n";
    for (const std::string& failure : result.failures) std::cerr << "row failed: " << failure << "\n";
    return result.failures.empty() ? kExitOk : kExitPropertyViolation;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"unique sink orientations of grids: generate, validate, walk, analyze"};
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // generate
    std::string g_shape, g_kind = "linear", g_out;
    std::uint64_t g_seed = 1;
    std::int64_t g_max_tries = 1'000'000, g_steps = 1000;
    auto* gen = app.add_subcommand("generate", "generate an orientation and write it to a file");
    gen->add_option("--shape", g_shape, "grid shape AxB (a,b >= 2)")->required();
    gen->add_option("--kind", g_kind, "linear | rejection | flip");
    gen->add_option("--seed", g_seed, "random seed");
    gen->add_option("--out", g_out, "output file")->required();
    gen->add_option("--max-tries", g_max_tries, "rejection sampling budget");
    gen->add_option("--steps", g_steps, "flip chain proposals");
    gen->callback(
        [&] { exit_code = do_generate(g_shape, g_kind, g_seed, g_out, g_max_tries, g_steps); });

    // validate
    std::string v_path;
    bool v_brute = false;
    int v_guard = 12;
    auto* val = app.add_subcommand("validate", "check the unique-sink property");
    val->add_option("path", v_path, "orientation file")->required();
    val->add_flag("--brute-force", v_brute, "enumerate all faces instead");
    val->add_option("--guard", v_guard, "brute-force size guard");
    val->callback([&] { exit_code = do_validate(v_path, v_brute, v_guard); });

    // walk
    std::string w_path, w_start;
    std::int64_t w_trials = 1000;
    std::uint64_t w_seed = 1;
    bool w_dump = false;
    auto* wlk = app.add_subcommand("walk", "run Random-Edge walks and report length stats");
    wlk->add_option("path", w_path, "orientation file")->required();
    wlk->add_option("--start", w_start, "start vertex x,y (default: the global source)");
    wlk->add_option("--trials", w_trials, "number of walks");
    wlk->add_option("--seed", w_seed, "random seed");
    wlk->add_flag("--dump", w_dump, "print one full trace first");
    wlk->callback([&] { exit_code = do_walk(w_path, w_start, w_trials, w_seed, w_dump); });

    // exact
    std::string e_path;
    bool e_milestones = false, e_lemmas = false, e_bounds = false, e_float = false;
    auto* exc = app.add_subcommand("exact", "milestones, lemma checks, and exact bounds");
    exc->add_option("path", e_path, "orientation file")->required();
    exc->add_flag("--milestones", e_milestones, "print the milestone chain");
    exc->add_flag("--lemmas", e_lemmas, "check the lemma list");
    exc->add_flag("--bounds", e_bounds, "check per-transition bounds");
    exc->add_flag("--float", e_float, "fast floating-point mode (reference mode is exact)");
    exc->callback(
        [&] { exit_code = do_exact(e_path, e_milestones, e_lemmas, e_bounds, e_float); });

    // claims
    std::string c_path;
    std::int64_t c_trials = 100;
    std::uint64_t c_seed = 1;
    int c_max_starts = 4096;
    auto* clm = app.add_subcommand("claims", "empirical E1/E2/E3 frequencies per milestone");
    clm->add_option("path", c_path, "orientation file")->required();
    clm->add_option("--trials", c_trials, "walks per (index, start) pair");
    clm->add_option("--seed", c_seed, "random seed");
    clm->add_option("--max-starts", c_max_starts, "start sample cap per index");
    clm->callback([&] { exit_code = do_claims(c_path, c_trials, c_seed, c_max_starts); });

    // scaling
    std::string s_sizes = "8,16,32,64,128,256", s_kind = "linear", s_csv = "scaling.csv",
                s_svg = "scaling.svg";
    int s_seeds = 20;
    std::uint64_t s_seed = 1;
    auto* scl = app.add_subcommand("scaling", "scaling experiment: CSV table and SVG chart");
    scl->add_option("--sizes", s_sizes, "comma-separated n values (square shapes a=b=n/2)");
    scl->add_option("--seeds", s_seeds, "instances per size");
    scl->add_option("--seed", s_seed, "base seed");
    scl->add_option("--kind", s_kind, "linear | rejection | flip");
    scl->add_option("--out", s_csv, "CSV output path");
    scl->add_option("--svg", s_svg, "SVG output path (empty to skip)");
    scl->callback(
        [&] { exit_code = do_scaling(s_sizes, s_seeds, s_seed, s_kind, s_csv, s_svg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return exit_code;
}

} // namespace usolab
