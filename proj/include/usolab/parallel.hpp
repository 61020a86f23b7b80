#pragma once

#include <cstdint>
#include <functional>

namespace usolab {

// Worker count: USO_LAB_THREADS if set and > 0, otherwise the hardware
// concurrency (USO_LAB_THREADS=0 also means auto).
int thread_budget();

// Runs body(i) for i in [0, count). Iterations must be independent; callers
// get deterministic results by writing into per-index slots and reducing in
// index order afterwards.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

} // namespace usolab
