#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "usolab/grid.hpp"

namespace usolab {

// Separable potential f(x,y) = alpha[x] + beta[y] on the grid. Generic: all
// a*b sums pairwise distinct.
struct LinearPotential {
    std::vector<double> alpha; // one per X-facet
    std::vector<double> beta;  // one per Y-facet
};

enum class GenKind : std::uint8_t { Linear, Rejection, Flip };

struct GenConfig {
    GenKind kind = GenKind::Linear;
    std::uint64_t seed = 0;
    std::int64_t max_tries = 1'000'000; // rejection sampling budget
    std::int64_t steps = 1000;          // flip-chain proposals
};

// Orients every edge toward the endpoint of smaller alpha[x] + beta[y]; the
// potential is resampled (up to 64 times, then internal error) until all
// sums are distinct. Always a USO: linear orientations of the grid are
// unique sink orientations.
std::pair<GridOrientation, LinearPotential> gen_linear(GridShape shape, std::uint64_t seed);

// Draws uniform random permutations for every row/column rank line until
// validate_uso accepts; uniform over the USOs of the shape. Guarded by
// max(a,b) <= guard (acceptance decays fast). Sampling error carries the
// attempt count when max_tries is exhausted.
GridOrientation gen_rejection(GridShape shape, std::uint64_t seed, std::int64_t max_tries,
                              int guard = 5);

// Runs `steps` proposals from `start` (which must be a USO): pick a row or
// column uniformly, pick an adjacent rank transposition in it, revalidate,
// revert on failure. Every accepted state is a USO; not a uniform sampler.
GridOrientation gen_flip_chain(const GridOrientation& start, std::int64_t steps,
                               std::uint64_t seed);

// Orientation file: line 1 "a b"; then b lines of a integers (row_rank by y
// ascending); then a lines of b integers (col_rank by x ascending). '#'
// starts a comment line; tokens are whitespace-separated; trailing data is
// an error. load() re-runs validate_rank_matrices.
void save(const GridOrientation& o, const std::filesystem::path& path);
void save(const GridOrientation& o, std::ostream& out);
GridOrientation load(const std::filesystem::path& path);
GridOrientation load(std::istream& in, const std::string& name = "<stream>");

} // namespace usolab
