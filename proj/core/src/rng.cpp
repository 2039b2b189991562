#include "entroclust/rng.hpp"

#include <cmath>

namespace entroclust {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer: a strong 64-bit mixing function.
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : key_(derive(master_seed, stream_id)) {}

std::uint64_t RngStream::derive(std::uint64_t master_seed, std::uint64_t stream_id) {
    return mix(mix(master_seed + kGolden) ^ (stream_id * kGolden + 1));
}

std::uint64_t RngStream::next_u64() { return mix(key_ + (++counter_) * kGolden); }

double RngStream::next_double() {
    // 53 random bits into (0, 1); never returns 0 so log() below is safe.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586477 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

int RngStream::next_sign() { return (next_u64() & 1ull) ? 1 : -1; }

}  // namespace entroclust
