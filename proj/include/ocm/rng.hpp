#pragma once

#include <cstdint>
#include <string_view>

namespace ocm {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Counter-based pseudo-random stream. Each draw depends only on the key and
// the draw counter, so streams keyed by (seed, agent, job, purpose) are
// independent of how draws interleave across agents and runs.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() {
        return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline RngStream make_stream(std::uint64_t seed, std::string_view agentId,
                             std::uint64_t jobId, std::string_view purpose) {
    std::uint64_t key = mix64(seed);
    key = mix64(key ^ fnv1a(agentId));
    key = mix64(key ^ jobId);
    key = mix64(key ^ fnv1a(purpose));
    return RngStream(key);
}

// Result hashes live in three disjoint spaces, distinguished by the top two
// bits: the job's unique normal result, the anomalous outputs of a
// non-deterministic job, and fabricated results. Classification by tag is
// exact, so no accidental collisions can blur the model's cases.
enum class HashSpace : std::uint64_t { True = 0, Anomalous = 1, Forged = 2 };

inline std::uint64_t make_result_hash(HashSpace space, std::uint64_t jobId,
                                      std::uint64_t drawIndex = 0) {
    std::uint64_t body = mix64(mix64(jobId ^ 0xA5A5A5A5DEADBEEFULL) ^ drawIndex);
    return (static_cast<std::uint64_t>(space) << 62) | (body >> 2);
}

inline HashSpace hash_space(std::uint64_t resultHash) {
    return static_cast<HashSpace>(resultHash >> 62);
}

} // namespace ocm
