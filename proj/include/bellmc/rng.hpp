// rng.hpp
// Counter-based random streams: one independent, reproducible stream per
// Monte Carlo trial, identical on every platform and for every thread count.

#pragma once

#include <array>
#include <cstdint>

namespace bellmc {

// Philox 4x32-10 block function.  Pure 32/64-bit integer arithmetic, so the
// stream is bit-identical everywhere, and random access by counter makes
// per-trial streams trivially parallel.
namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Ten rounds; the key is bumped by the Weyl constants before every round
// after the first.
inline Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
               static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

}  // namespace philox

// One random stream keyed by (master_seed, stream_index).  Streams with
// distinct indices never collide: the index lives in the upper counter words
// while the block number advances through the lower ones.
//
// Draw order is part of the reproducibility contract.  Every sampler
// documents how many values it consumes and in which order, and changing
// that order is a breaking change.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_{static_cast<std::uint32_t>(stream_index),
                  static_cast<std::uint32_t>(stream_index >> 32)} {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; used where a zero draw would be singular.
    double uniform_open01() { return 1.0 - uniform01(); }

    std::uint64_t next_u64() {
        if (pos_ > 2) refill();
        const std::uint64_t lo = buf_[pos_];
        const std::uint64_t hi = buf_[pos_ + 1];
        pos_ += 2;
        return (hi << 32) | lo;
    }

private:
    void refill() {
        buf_ = philox::block({static_cast<std::uint32_t>(block_),
                              static_cast<std::uint32_t>(block_ >> 32),
                              stream_[0], stream_[1]},
                             key_);
        ++block_;
        pos_ = 0;
    }

    philox::Key key_;
    std::array<std::uint32_t, 2> stream_;
    std::uint64_t block_ = 0;
    philox::Counter buf_{};
    int pos_ = 4;  // empty buffer; first draw triggers a refill
};

}  // namespace bellmc
