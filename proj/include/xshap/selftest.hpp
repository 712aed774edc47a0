#pragma once

#include <cstdint>
#include <ostream>

namespace xshap {

// Differential run of the engine against the brute-force oracle on random
// problems: exact scores for every applicable characteristic function and
// the full explanation families must agree exactly. Returns true when every
// differential passes.
bool run_selftest(int num_models, std::uint64_t seed, std::ostream& out);

} // namespace xshap
