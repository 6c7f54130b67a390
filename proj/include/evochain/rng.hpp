#ifndef EVOCHAIN_RNG_HPP
#define EVOCHAIN_RNG_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace evochain {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// The key is derived from (seed, stream), the counter advances per block.
// Streams are statistically independent, so run i of a Monte Carlo batch
// can use RngStream(master_seed, i) and the batch stays reproducible under
// any scheduling.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream = 0) {
        // SplitMix64 finalizer spreads (seed, stream) over the 64-bit key.
        uint64_t k0 = mix64(seed ^ 0x9E3779B97F4A7C15ULL);
        uint64_t k1 = mix64(k0 + stream * 0xBF58476D1CE4E5B9ULL + 0x94D049BB133111EBULL);
        key_ = {static_cast<uint32_t>(k1), static_cast<uint32_t>(k1 >> 32)};
        counter_ = {0, 0, static_cast<uint32_t>(k0), static_cast<uint32_t>(k0 >> 32)};
        buf_pos_ = 4;
    }

    uint32_t next_u32() {
        if (buf_pos_ == 4) refill();
        return buf_[buf_pos_++];
    }

    uint64_t next_u64() {
        uint64_t lo = next_u32();
        uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection keeps it exactly uniform.
    uint64_t uniform_int(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Index sampled from unnormalized nonnegative weights.
    size_t discrete(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double x = uniform01() * total;
        double acc = 0.0;
        for (size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (x < acc) return i;
        }
        return weights.size() - 1;
    }

  private:
    static uint64_t mix64(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    void refill() {
        std::array<uint32_t, 4> x = counter_;
        std::array<uint32_t, 2> k = key_;
        for (int round = 0; round < 10; ++round) {
            uint64_t p0 = 0xD2511F53ULL * x[0];
            uint64_t p1 = 0xCD9E8D57ULL * x[2];
            std::array<uint32_t, 4> y;
            y[0] = static_cast<uint32_t>(p1 >> 32) ^ x[1] ^ k[0];
            y[1] = static_cast<uint32_t>(p1);
            y[2] = static_cast<uint32_t>(p0 >> 32) ^ x[3] ^ k[1];
            y[3] = static_cast<uint32_t>(p0);
            x = y;
            k[0] += 0x9E3779B9U;
            k[1] += 0xBB67AE85U;
        }
        buf_ = x;
        buf_pos_ = 0;
        if (++counter_[0] == 0 && ++counter_[1] == 0) ++counter_[2];
    }

    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 4> counter_;
    std::array<uint32_t, 4> buf_;
    int buf_pos_;
};

}  // namespace evochain

#endif
