#pragma once

#include <array>
#include <cstdint>

namespace arfima {

/// Philox4x32-10 counter-based generator. The 64-bit key holds the user
/// seed; the high half of the 128-bit counter holds a stream id, so any
/// (seed, stream) pair yields an independent, reproducible sequence no
/// matter which thread consumes it.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    double next_uniform();  // in (0, 1)

private:
    void fill_block();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::uint64_t stream_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
};

/// Standard normal draws from a Philox stream via Box-Muller; one stream
/// per (seed, replication) makes parallel Monte-Carlo runs bit-stable.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

    double next();

private:
    Philox gen_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace arfima
