#include "usolab/generate.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "usolab/rng.hpp"
#include "usolab/validate.hpp"

namespace usolab {

namespace {

// rank[i] = how many entries of `values` are smaller than values[i]
std::vector<int> ranks_of(const std::vector<double>& values) {
    std::vector<int> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return values[i] < values[j]; });
    std::vector<int> rank(values.size());
    for (std::size_t r = 0; r < idx.size(); ++r) rank[idx[r]] = static_cast<int>(r);
    return rank;
}

bool sums_distinct(const std::vector<double>& alpha, const std::vector<double>& beta) {
    std::vector<double> sums;
    sums.reserve(alpha.size() * beta.size());
    for (double av : alpha)
        for (double bv : beta) sums.push_back(av + bv);
    std::sort(sums.begin(), sums.end());
    return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

} // namespace

std::pair<GridOrientation, LinearPotential> gen_linear(GridShape shape, std::uint64_t seed) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        LinearPotential pot;
        pot.alpha.resize(shape.a);
        pot.beta.resize(shape.b);
        for (double& v : pot.alpha) v = rng.uniform();
        for (double& v : pot.beta) v = rng.uniform();
        if (!sums_distinct(pot.alpha, pot.beta)) continue;

        // f(x,y) = alpha[x] + beta[y]; every edge points toward the smaller
        // sum, so ranks within a line are the ranks of alpha resp. beta.
        std::vector<int> ra = ranks_of(pot.alpha);
        std::vector<int> rb = ranks_of(pot.beta);
        std::vector<int> rows(static_cast<std::size_t>(shape.a) * shape.b);
        std::vector<int> cols(static_cast<std::size_t>(shape.a) * shape.b);
        for (int y = 0; y < shape.b; ++y)
            for (int x = 0; x < shape.a; ++x) rows[static_cast<std::size_t>(y) * shape.a + x] = ra[x];
        for (int x = 0; x < shape.a; ++x)
            for (int y = 0; y < shape.b; ++y) cols[static_cast<std::size_t>(x) * shape.b + y] = rb[y];
        return {GridOrientation(shape, std::move(rows), std::move(cols)), std::move(pot)};
    }
    throw Error(ErrorKind::Internal,
                "64 potential draws in a row had tied sums; generator is broken");
}

GridOrientation gen_rejection(GridShape shape, std::uint64_t seed, std::int64_t max_tries,
                              int guard) {
    if (shape.a > guard || shape.b > guard)
        throw Error(ErrorKind::Size, "shape " + std::to_string(shape.a) + "x" +
                                         std::to_string(shape.b) +
                                         " exceeds the rejection guard " + std::to_string(guard));
    if (max_tries <= 0)
        throw Error(ErrorKind::InvalidInput, "max_tries must be positive");

    std::vector<int> row_line(shape.a), col_line(shape.b);
    for (std::int64_t t = 0; t < max_tries; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<int> rows(static_cast<std::size_t>(shape.a) * shape.b);
        std::vector<int> cols(static_cast<std::size_t>(shape.a) * shape.b);
        for (int y = 0; y < shape.b; ++y) {
            std::iota(row_line.begin(), row_line.end(), 0);
            rng.shuffle(row_line);
            for (int x = 0; x < shape.a; ++x) rows[static_cast<std::size_t>(y) * shape.a + x] = row_line[x];
        }
        for (int x = 0; x < shape.a; ++x) {
            std::iota(col_line.begin(), col_line.end(), 0);
            rng.shuffle(col_line);
            for (int y = 0; y < shape.b; ++y) cols[static_cast<std::size_t>(x) * shape.b + y] = col_line[y];
        }
        GridOrientation candidate(shape, std::move(rows), std::move(cols));
        if (validate_uso(candidate).is_uso) return candidate;
    }
    throw Error(ErrorKind::Sampling, "rejection sampling exhausted " + std::to_string(max_tries) +
                                         " tries on shape " + std::to_string(shape.a) + "x" +
                                         std::to_string(shape.b));
}

GridOrientation gen_flip_chain(const GridOrientation& start, std::int64_t steps,
                               std::uint64_t seed) {
    if (steps < 0) throw Error(ErrorKind::InvalidInput, "steps must be nonnegative");
    if (!validate_uso(start).is_uso)
        throw Error(ErrorKind::InvalidInput, "flip chain start is not a unique sink orientation");

    const GridShape shape = start.shape();
    std::vector<int> rows = start.row_rank_data();
    std::vector<int> cols = start.col_rank_data();
    Rng rng(seed);

    for (std::int64_t s = 0; s < steps; ++s) {
        // pick a line (row y or column x) and an adjacent rank pair in it
        const std::uint64_t line = rng.below(static_cast<std::uint64_t>(shape.a + shape.b));
        int* data;
        std::size_t base, len;
        if (line < static_cast<std::uint64_t>(shape.b)) {
            data = rows.data();
            base = static_cast<std::size_t>(line) * shape.a;
            len = shape.a;
        } else {
            data = cols.data();
            base = (static_cast<std::size_t>(line) - shape.b) * shape.b;
            len = shape.b;
        }
        const int r = static_cast<int>(rng.below(len - 1));
        std::size_t i = base, j = base; // cells holding ranks r and r+1
        for (std::size_t k = base; k < base + len; ++k) {
            if (data[k] == r) i = k;
            if (data[k] == r + 1) j = k;
        }
        std::swap(data[i], data[j]); // reverses exactly the edge between them

        GridOrientation candidate(shape, rows, cols);
        if (!validate_uso(candidate).is_uso) std::swap(data[i], data[j]); // revert
    }
    return GridOrientation(shape, std::move(rows), std::move(cols));
}

void save(const GridOrientation& o, std::ostream& out) {
    const GridShape shape = o.shape();
    out << shape.a << ' ' << shape.b << '\n';
    for (int y = 0; y < shape.b; ++y) {
        for (int x = 0; x < shape.a; ++x) out << (x ? " " : "") << o.row_rank(y, x);
        out << '\n';
    }
    for (int x = 0; x < shape.a; ++x) {
        for (int y = 0; y < shape.b; ++y) out << (y ? " " : "") << o.col_rank(x, y);
        out << '\n';
    }
}

void save(const GridOrientation& o, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidInput, "cannot open " + path.string() + " for writing");
    save(o, out);
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidInput, "failed writing " + path.string());
}

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) tokens.push_back(Token{tok, line_no});
    }
    return tokens;
}

class TokenReader {
public:
    TokenReader(std::vector<Token> tokens, std::string name)
        : tokens_(std::move(tokens)), name_(std::move(name)) {}

    int next_int(const std::string& what) {
        if (pos_ == tokens_.size())
            throw Error(ErrorKind::Parse,
                        name_ + ": unexpected end of file, expected " + what);
        const Token& t = tokens_[pos_++];
        try {
            std::size_t used = 0;
            int value = std::stoi(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument(t.text);
            return value;
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, name_ + " line " + std::to_string(t.line) +
                                              ": expected integer for " + what + ", got '" +
                                              t.text + "'");
        }
    }

    void expect_end() {
        if (pos_ != tokens_.size())
            throw Error(ErrorKind::Parse, name_ + " line " + std::to_string(tokens_[pos_].line) +
                                              ": trailing data '" + tokens_[pos_].text + "'");
    }

private:
    std::vector<Token> tokens_;
    std::string name_;
    std::size_t pos_ = 0;
};

} // namespace

GridOrientation load(std::istream& in, const std::string& name) {
    TokenReader reader(tokenize(in), name);
    const int a = reader.next_int("grid width a");
    const int b = reader.next_int("grid height b");
    if (a < 2 || b < 2)
        throw Error(ErrorKind::Parse, name + ": grid shape requires a >= 2 and b >= 2, got " +
                                          std::to_string(a) + "x" + std::to_string(b));
    std::vector<std::vector<int>> rows(b), cols(a);
    for (int y = 0; y < b; ++y) {
        rows[y].resize(a);
        for (int x = 0; x < a; ++x)
            rows[y][x] = reader.next_int("row_rank row " + std::to_string(y));
    }
    for (int x = 0; x < a; ++x) {
        cols[x].resize(b);
        for (int y = 0; y < b; ++y)
            cols[x][y] = reader.next_int("col_rank column " + std::to_string(x));
    }
    reader.expect_end();
    return validate_rank_matrices(a, b, rows, cols);
}

GridOrientation load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
    return load(in, path.string());
}

} // namespace usolab
