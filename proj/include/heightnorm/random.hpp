#pragma once

#include <cstdint>

namespace heightnorm {

/// Counter-based random stream: every draw is a pure function of
/// (seed, index, lane), so parallel workers get order-independent results.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t index, std::uint64_t lane) const;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t index, std::uint64_t lane) const;

    /// Standard normal (Box-Muller over lanes 2*lane and 2*lane+1).
    double normal(std::uint64_t index, std::uint64_t lane) const;

private:
    std::uint64_t seed_;
};

}  // namespace heightnorm
