#include "heightnorm/random.hpp"

#include <cmath>
#include <numbers>

namespace heightnorm {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace

std::uint64_t CounterStream::bits(std::uint64_t index, std::uint64_t lane) const {
    std::uint64_t x = splitmix64(seed_);
    x = splitmix64(x ^ index);
    return splitmix64(x ^ (lane * 0xD1B54A32D192ED03ULL));
}

double CounterStream::uniform(std::uint64_t index, std::uint64_t lane) const {
    return static_cast<double>(bits(index, lane) >> 11) * 0x1.0p-53;
}

double CounterStream::normal(std::uint64_t index, std::uint64_t lane) const {
    const double u1 = uniform(index, 2 * lane);
    const double u2 = uniform(index, 2 * lane + 1);
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace heightnorm
