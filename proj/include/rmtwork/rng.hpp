#pragma once

#include <cstdint>
#include <random>

namespace rmtwork {

// SplitMix64 finalizer. Used to turn (master_seed, stream) into an
// independent engine seed.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed for stream `stream` of a run keyed by `master_seed`. Pure function of
// its arguments, so draws can be generated in any order or in parallel.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) noexcept;

using Engine = std::mt19937_64;

Engine make_engine(std::uint64_t seed);

}  // namespace rmtwork
