#pragma once

#include <cstdint>

namespace entroclust {

// Counter-based keyed stream: output_i = mix(key(master_seed, stream_id) + i).
// Streams are independent of scheduling, so parallel replicates reproduce
// exactly regardless of thread interleaving.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double next_double();  // uniform in (0, 1)
    double next_normal();  // standard normal, Box-Muller (pairs cached)
    int next_sign();       // -1 or +1 with equal probability

    // Key-derivation helper for nested seeding (e.g. per-task dataset seeds).
    static std::uint64_t derive(std::uint64_t master_seed, std::uint64_t stream_id);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace entroclust
